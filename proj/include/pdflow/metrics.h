// Copyright 2026 The pdflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PDFLOW_METRICS_H_
#define PDFLOW_METRICS_H_

#include <cstddef>
#include <map>
#include <string>

#include "pdflow/diagnostic.h"
#include "pdflow/sema.h"

namespace pdflow {

// Exact fraction; the denominator is at least 1.
struct Ratio {
  std::size_t numerator = 0;
  std::size_t denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Prevalence of personal data in the declared code base. External classes
// from configuration are not counted.
struct MetricsReport {
  std::size_t total_classes = 0;
  std::size_t personal_classes = 0;  // A1 directly or through a superclass
  Ratio personal_ratio;              // personal / max(total, 1)
  // A2 classes, plus A2 methods whose class is not itself A2.
  std::size_t handler_contexts = 0;
  // Methods with A3 on themselves or their class.
  std::size_t endpoint_functions = 0;
  std::map<std::string, std::size_t> per_module_personal;
  std::map<std::string, std::size_t> violation_counts;  // "R2", "R3"

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Personal class count per module; every module declaring a class appears,
// classes without a module declaration fall under "(default)".
std::map<std::string, std::size_t> PersonalDistribution(const SymbolTable& table);

MetricsReport ComputeMetrics(const SymbolTable& table,
                             const AnalysisResult& result);

}  // namespace pdflow

#endif  // PDFLOW_METRICS_H_

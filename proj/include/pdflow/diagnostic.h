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

#ifndef PDFLOW_DIAGNOSTIC_H_
#define PDFLOW_DIAGNOSTIC_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdflow/source.h"

namespace pdflow {

enum class Rule { kR2, kR3, kSema };

std::string_view RuleId(Rule rule);  // "R2", "R3", "SEMA"

// "Class.method", or just one half when the other is unknown.
struct MethodRef {
  std::string class_name;
  std::optional<std::string> method;

  std::string ToString() const;
  friend bool operator==(const MethodRef&, const MethodRef&) = default;
  friend auto operator<=>(const MethodRef&, const MethodRef&) = default;
};

struct Diagnostic {
  Rule rule = Rule::kSema;
  Position position;
  std::string message;
  std::string subject_type;  // personal class involved; empty for SEMA
  MethodRef context_owner;
  std::optional<MethodRef> callee;  // present iff rule == kR3

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct AnalysisResult {
  std::vector<Diagnostic> diagnostics;
  std::size_t files_analyzed = 0;
  std::size_t classes_seen = 0;

  std::size_t Count(Rule rule) const;
  friend bool operator==(const AnalysisResult&, const AnalysisResult&) = default;
};

// Sorts by (file, line, column, rule, ...) and drops exact repeats.
void SortAndDedupe(std::vector<Diagnostic>& diagnostics);

}  // namespace pdflow

#endif  // PDFLOW_DIAGNOSTIC_H_

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

#ifndef PDFLOW_INCREMENTAL_H_
#define PDFLOW_INCREMENTAL_H_

#include <set>
#include <string>
#include <vector>

#include "pdflow/cache.h"
#include "pdflow/config.h"
#include "pdflow/diagnostic.h"
#include "pdflow/summary.h"

namespace pdflow {

struct IncrementalStats {
  bool cold = false;                   // no usable previous run
  std::vector<std::string> parsed;     // files whose text was parsed
  std::vector<std::string> rechecked;  // files whose rules were re-run
  std::vector<std::string> reused;     // files served from check records
  std::set<std::string> changed_classes;
};

struct IncrementalResult {
  AnalysisResult result;
  std::vector<FileSummary> summaries;  // one per input path, sorted by path
  IncrementalStats stats;
};

// Analyzes `all_paths`, reusing `cache` where sound. Files whose content
// hash differs from the previous run count as changed even when absent from
// `changed`. A file is re-checked when it changed, or when it consulted a
// class whose declarations changed. The result always equals a cold
// Analyze() over the same texts. `cache` may be null (cold run, no writes).
// Throws IoError when an input cannot be read.
IncrementalResult AnalyzeIncremental(const std::set<std::string>& changed,
                                     const std::vector<std::string>& all_paths,
                                     const SummaryCache* cache,
                                     const AnalyzerConfig& config);

}  // namespace pdflow

#endif  // PDFLOW_INCREMENTAL_H_

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

#ifndef PDFLOW_DRIVER_H_
#define PDFLOW_DRIVER_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "pdflow/config.h"

namespace pdflow {

inline constexpr int kExitClean = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitError = 2;

// Recursively collects analyzable files under `roots`. Directory entries
// must match an include glob and no exclude glob; explicitly named files
// only need to escape the exclude globs. Sorted, without duplicates.
// Throws ConfigError for a missing root.
std::vector<std::string> DiscoverFiles(const std::vector<std::string>& roots,
                                       const AnalyzerConfig& config);

// Order-independent digest of input paths, their contents and the config.
std::string InputFingerprint(const std::vector<std::string>& paths,
                             const AnalyzerConfig& config);

// `args` excludes the program name, e.g. {"analyze", "src/", "--format",
// "json"}. Results go to `out`, operational errors to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pdflow

#endif  // PDFLOW_DRIVER_H_

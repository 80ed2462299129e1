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

#ifndef PDFLOW_RENDER_H_
#define PDFLOW_RENDER_H_

#include <string>

#include "pdflow/config.h"
#include "pdflow/diagnostic.h"
#include "pdflow/metrics.h"
#include "pdflow/policy.h"

namespace pdflow {

inline constexpr int kDiagnosticsJsonVersion = 1;

// Text: one `<path>:<line>:<col>: warning[<rule>]: <message>` line per
// diagnostic. JSON: {"version", "diagnostics": [{"rule", "file", "line",
// "column", "message", "subjectType", "contextOwner", "callee"?}]}.
std::string RenderDiagnostics(const AnalysisResult& result, OutputFormat format);

std::string RenderMetrics(const MetricsReport& report, OutputFormat format);

std::string RenderPolicy(const PolicyDocument& doc, OutputFormat format);

}  // namespace pdflow

#endif  // PDFLOW_RENDER_H_

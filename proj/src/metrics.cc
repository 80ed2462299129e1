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

#include "pdflow/metrics.h"

#include <algorithm>

namespace pdflow {

std::map<std::string, std::size_t> PersonalDistribution(const SymbolTable& table) {
  const TypeResolver resolver(table);
  std::map<std::string, std::size_t> out;
  for (const auto& [name, info] : table.classes()) {
    if (info.origin == ClassOrigin::kExternal) continue;
    std::size_t& count = out[info.module];
    if (resolver.ClassIsPersonal(name)) ++count;
  }
  return out;
}

MetricsReport ComputeMetrics(const SymbolTable& table,
                             const AnalysisResult& result) {
  const AnalyzerConfig& config = table.config();
  MetricsReport report;
  report.per_module_personal = PersonalDistribution(table);
  for (const auto& [module, count] : report.per_module_personal) {
    report.personal_classes += count;
  }
  for (const auto& [name, info] : table.classes()) {
    if (info.origin == ClassOrigin::kExternal) continue;
    ++report.total_classes;
    const bool class_handler = info.Has(AnnotationKind::kHandler);
    if (class_handler) ++report.handler_contexts;
    for (const MethodSignature& method : info.decl.methods) {
      const bool method_handler = std::any_of(
          method.annotations.begin(), method.annotations.end(),
          [&](const std::string& n) {
            return config.Classify(n) == AnnotationKind::kHandler;
          });
      if (method_handler && !class_handler) ++report.handler_contexts;
      if (ComputeEffectiveContext(info, &method, config).has_endpoint) {
        ++report.endpoint_functions;
      }
    }
  }
  report.personal_ratio = {report.personal_classes,
                           std::max<std::size_t>(report.total_classes, 1)};
  report.violation_counts["R2"] = result.Count(Rule::kR2);
  report.violation_counts["R3"] = result.Count(Rule::kR3);
  return report;
}

}  // namespace pdflow

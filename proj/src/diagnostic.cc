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

#include "pdflow/diagnostic.h"

#include <algorithm>
#include <tuple>

namespace pdflow {

std::string_view RuleId(Rule rule) {
  switch (rule) {
    case Rule::kR2: return "R2";
    case Rule::kR3: return "R3";
    case Rule::kSema: return "SEMA";
  }
  return "?";
}

std::string MethodRef::ToString() const {
  if (!method) return class_name;
  if (class_name.empty()) return *method;
  return class_name + "." + *method;
}

std::size_t AnalysisResult::Count(Rule rule) const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [rule](const Diagnostic& d) { return d.rule == rule; }));
}

void SortAndDedupe(std::vector<Diagnostic>& diagnostics) {
  auto key = [](const Diagnostic& d) {
    return std::tie(d.position.file, d.position.line, d.position.column,
                    d.rule, d.subject_type, d.message, d.context_owner,
                    d.callee);
  };
  std::sort(diagnostics.begin(), diagnostics.end(),
            [&](const Diagnostic& a, const Diagnostic& b) {
              return key(a) < key(b);
            });
  // Distinct calls can share a start position (a call and its receiver
  // call), so only exact repeats are dropped.
  auto same = [&](const Diagnostic& a, const Diagnostic& b) {
    return key(a) == key(b);
  };
  diagnostics.erase(std::unique(diagnostics.begin(), diagnostics.end(), same),
                    diagnostics.end());
}

}  // namespace pdflow

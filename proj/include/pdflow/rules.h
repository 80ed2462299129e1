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

#ifndef PDFLOW_RULES_H_
#define PDFLOW_RULES_H_

#include <set>
#include <string>
#include <vector>

#include "pdflow/ast.h"
#include "pdflow/config.h"
#include "pdflow/diagnostic.h"
#include "pdflow/parser.h"
#include "pdflow/sema.h"
#include "pdflow/summary.h"

namespace pdflow {

// R2: a personal-typed use site inside a context without A2. Sites are
// local declarations, parameters, return types, fields of non-A2 classes,
// and New/Call/FieldAccess/VarRef/Cast expressions. A personal expression
// nested directly under another personal site is covered by that site and
// not reported again.
std::vector<Diagnostic> CheckR2(const AstUnit& unit, const SymbolTable& table);

// R3: inside an A2 context, a call whose callee is unresolved or has
// neither A2 nor A3, with at least one personal argument. Receivers are not
// arguments.
std::vector<Diagnostic> CheckR3(const AstUnit& unit, const SymbolTable& table);

// Everything reported against one file: syntax errors (and nothing else
// when there are any), table issues of its classes, local semantic errors,
// R2 and R3. Every class name consulted is added to `dependencies`.
std::vector<Diagnostic> CheckFile(const ParseResult& parsed,
                                  const SymbolTable& table,
                                  std::set<std::string>* dependencies = nullptr);

// Batch entry point. Only `units` are checked; `summaries` contribute
// declarations. Files with syntax errors contribute no declarations.
AnalysisResult Analyze(const std::vector<ParseResult>& units,
                       const std::vector<FileSummary>& summaries,
                       const AnalyzerConfig& config);

}  // namespace pdflow

#endif  // PDFLOW_RULES_H_

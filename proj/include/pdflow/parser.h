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

#ifndef PDFLOW_PARSER_H_
#define PDFLOW_PARSER_H_

#include <string>
#include <vector>

#include "pdflow/ast.h"
#include "pdflow/source.h"

namespace pdflow {

struct ParseError {
  Position pos;
  std::string message;
};

// A unit is always produced. When `errors` is non-empty it holds only the
// classes that parsed cleanly; a class containing a syntax error is dropped
// and parsing resumes at the next top-level class declaration.
struct ParseResult {
  AstUnit unit;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

ParseResult Parse(const SourceFile& source);

}  // namespace pdflow

#endif  // PDFLOW_PARSER_H_

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

#ifndef PDFLOW_SUMMARY_H_
#define PDFLOW_SUMMARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdflow/ast.h"

namespace pdflow {

inline constexpr int kSummaryFormatVersion = 1;

// Declaration-level digest of a source file. Holds no method bodies and no
// source positions, so editing a body leaves the summary unchanged.

struct FieldSignature {
  std::string name;
  TypeRef type;
  friend bool operator==(const FieldSignature&, const FieldSignature&) = default;
};

struct MethodSignature {
  std::string name;
  std::vector<TypeRef> params;
  std::optional<TypeRef> return_type;  // nullopt means void
  std::vector<std::string> annotations;

  std::size_t arity() const { return params.size(); }
  friend bool operator==(const MethodSignature&, const MethodSignature&) = default;
};

struct ClassSummary {
  std::string name;
  std::vector<std::string> annotations;
  std::vector<std::string> type_params;
  std::optional<TypeRef> superclass;
  std::vector<FieldSignature> fields;
  std::vector<MethodSignature> methods;
  friend bool operator==(const ClassSummary&, const ClassSummary&) = default;
};

struct FileSummary {
  int format_version = kSummaryFormatVersion;
  std::string path;
  std::uint64_t content_hash = 0;
  std::optional<std::string> module;
  std::vector<ClassSummary> classes;
  friend bool operator==(const FileSummary&, const FileSummary&) = default;
};

FileSummary Summarize(const AstUnit& unit);

// Summary of a file that failed to parse: it declares nothing.
FileSummary EmptySummary(std::string path, std::uint64_t content_hash);

// Copy of `type` with every position cleared.
TypeRef StripPositions(const TypeRef& type);

std::string SummaryToJson(const FileSummary& summary);

// nullopt on malformed input or a format_version mismatch.
std::optional<FileSummary> SummaryFromJson(std::string_view text);

}  // namespace pdflow

#endif  // PDFLOW_SUMMARY_H_

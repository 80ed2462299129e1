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

#ifndef PDFLOW_CONFIG_H_
#define PDFLOW_CONFIG_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdflow {

// Canonical meaning of an annotation name.
//   kPersonalData  A1, marks classes holding personal data
//   kHandler       A2, marks contexts allowed to process personal data
//   kEndpoint      A3, marks functions personal data may be passed into
//   kEntity        persistence entity marker
//   kEntryPoint    request-mapped service entry point
enum class AnnotationKind {
  kPersonalData,
  kHandler,
  kEndpoint,
  kEntity,
  kEntryPoint,
  kOther,
};

std::string_view AnnotationKindName(AnnotationKind kind);  // "A1", "ENTITY"...
std::optional<AnnotationKind> ParseAnnotationKind(std::string_view name);

enum class OutputFormat { kText, kJson };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyzerConfig {
  std::map<AnnotationKind, std::vector<std::string>> annotation_map;
  std::vector<std::string> external_personal_types;
  std::vector<std::string> include_globs;
  std::vector<std::string> exclude_globs;
  std::optional<std::string> cache_dir;
  OutputFormat output_format = OutputFormat::kText;

  // Defaults: A1=PersonalData, A2=PersonalDataHandler,
  // A3=PersonalDataEndpoint, ENTITY=Entity, ENDPOINT=Endpoint|RequestMethod.
  static AnalyzerConfig Defaults();

  // Parses a JSON config document on top of the defaults. Throws ConfigError.
  static AnalyzerConfig FromJson(std::string_view text);

  // Throws ConfigError if one name maps to more than one kind.
  void Validate() const;

  AnnotationKind Classify(std::string_view annotation_name) const;

  // Stable digest of everything that can influence diagnostics.
  std::string Fingerprint() const;
};

}  // namespace pdflow

#endif  // PDFLOW_CONFIG_H_

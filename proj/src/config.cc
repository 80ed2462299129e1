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

#include "pdflow/config.h"

#include <set>

#include "json.hpp"
#include "pdflow/source.h"

namespace pdflow {

namespace {
constexpr std::pair<AnnotationKind, std::string_view> kKindNames[] = {
    {AnnotationKind::kPersonalData, "A1"}, {AnnotationKind::kHandler, "A2"},
    {AnnotationKind::kEndpoint, "A3"},     {AnnotationKind::kEntity, "ENTITY"},
    {AnnotationKind::kEntryPoint, "ENDPOINT"}, {AnnotationKind::kOther, "OTHER"},
};

std::vector<std::string> StringList(const nlohmann::json& value,
                                    std::string_view key) {
  if (!value.is_array()) {
    throw ConfigError("config: '" + std::string(key) +
                      "' must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw ConfigError("config: '" + std::string(key) +
                        "' must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}
}  // namespace

std::string_view AnnotationKindName(AnnotationKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "OTHER";
}

std::optional<AnnotationKind> ParseAnnotationKind(std::string_view name) {
  for (const auto& [k, spelled] : kKindNames) {
    if (spelled == name) return k;
  }
  return std::nullopt;
}

AnalyzerConfig AnalyzerConfig::Defaults() {
  AnalyzerConfig config;
  config.annotation_map = {
      {AnnotationKind::kPersonalData, {"PersonalData"}},
      {AnnotationKind::kHandler, {"PersonalDataHandler"}},
      {AnnotationKind::kEndpoint, {"PersonalDataEndpoint"}},
      {AnnotationKind::kEntity, {"Entity"}},
      {AnnotationKind::kEntryPoint, {"Endpoint", "RequestMethod"}},
  };
  config.include_globs = {"*.al"};
  return config;
}

AnalyzerConfig AnalyzerConfig::FromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  AnalyzerConfig config = Defaults();
  for (const auto& [key, value] : doc.items()) {
    if (key == "annotations") {
      if (!value.is_object()) {
        throw ConfigError("config: 'annotations' must be an object");
      }
      for (const auto& [kind_name, names] : value.items()) {
        std::optional<AnnotationKind> kind = ParseAnnotationKind(kind_name);
        if (!kind || *kind == AnnotationKind::kOther) {
          throw ConfigError("config: unknown annotation kind '" + kind_name +
                            "'");
        }
        config.annotation_map[*kind] = StringList(names, kind_name);
      }
    } else if (key == "externalPersonalTypes") {
      config.external_personal_types = StringList(value, key);
    } else if (key == "include") {
      config.include_globs = StringList(value, key);
    } else if (key == "exclude") {
      config.exclude_globs = StringList(value, key);
    } else if (key == "cacheDir") {
      if (!value.is_string()) throw ConfigError("config: 'cacheDir' must be a string");
      config.cache_dir = value.get<std::string>();
    } else if (key == "format") {
      if (value == "text") {
        config.output_format = OutputFormat::kText;
      } else if (value == "json") {
        config.output_format = OutputFormat::kJson;
      } else {
        throw ConfigError("config: 'format' must be \"text\" or \"json\"");
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  config.Validate();
  return config;
}

void AnalyzerConfig::Validate() const {
  std::map<std::string, AnnotationKind> seen;
  for (const auto& [kind, names] : annotation_map) {
    for (const std::string& name : names) {
      auto [it, inserted] = seen.emplace(name, kind);
      if (!inserted && it->second != kind) {
        throw ConfigError("config: annotation '" + name + "' mapped to both " +
                          std::string(AnnotationKindName(it->second)) +
                          " and " + std::string(AnnotationKindName(kind)));
      }
    }
  }
}

AnnotationKind AnalyzerConfig::Classify(std::string_view annotation_name) const {
  for (const auto& [kind, names] : annotation_map) {
    for (const std::string& name : names) {
      if (name == annotation_name) return kind;
    }
  }
  return AnnotationKind::kOther;
}

std::string AnalyzerConfig::Fingerprint() const {
  nlohmann::ordered_json doc;
  for (const auto& [kind, names] : annotation_map) {
    std::set<std::string> sorted(names.begin(), names.end());
    doc["annotations"][std::string(AnnotationKindName(kind))] = sorted;
  }
  std::set<std::string> externals(external_personal_types.begin(),
                                  external_personal_types.end());
  doc["externals"] = externals;
  return HashHex(StableHash(doc.dump()));
}

}  // namespace pdflow

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

#include "pdflow/summary.h"

#include "json.hpp"
#include "pdflow/source.h"

namespace pdflow {

using Json = nlohmann::ordered_json;

TypeRef StripPositions(const TypeRef& type) {
  TypeRef out;
  out.name = type.name;
  out.array_dims = type.array_dims;
  out.type_args.reserve(type.type_args.size());
  for (const TypeRef& arg : type.type_args) {
    out.type_args.push_back(StripPositions(arg));
  }
  return out;
}

namespace {

std::vector<std::string> AnnotationNames(
    const std::vector<AnnotationUse>& uses) {
  std::vector<std::string> names;
  names.reserve(uses.size());
  for (const AnnotationUse& use : uses) names.push_back(use.name);
  return names;
}

Json TypeToJson(const TypeRef& type) {
  Json out;
  out["name"] = type.name;
  if (!type.type_args.empty()) {
    Json args = Json::array();
    for (const TypeRef& arg : type.type_args) args.push_back(TypeToJson(arg));
    out["args"] = std::move(args);
  }
  if (type.array_dims > 0) out["dims"] = type.array_dims;
  return out;
}

TypeRef TypeFromJson(const Json& in) {
  TypeRef type;
  type.name = in.at("name").get<std::string>();
  if (in.contains("args")) {
    for (const Json& arg : in.at("args")) {
      type.type_args.push_back(TypeFromJson(arg));
    }
  }
  if (in.contains("dims")) type.array_dims = in.at("dims").get<int>();
  if (type.array_dims < 0) throw std::out_of_range("negative dims");
  return type;
}

}  // namespace

FileSummary Summarize(const AstUnit& unit) {
  FileSummary summary;
  summary.path = unit.path;
  summary.content_hash = unit.content_hash;
  summary.module = unit.module;
  for (const ClassDecl& decl : unit.classes) {
    ClassSummary cls;
    cls.name = decl.name;
    cls.annotations = AnnotationNames(decl.annotations);
    cls.type_params = decl.type_params;
    if (decl.superclass) cls.superclass = StripPositions(*decl.superclass);
    for (const FieldDecl& field : decl.fields) {
      cls.fields.push_back({field.name, StripPositions(field.type)});
    }
    for (const MethodDecl& method : decl.methods) {
      MethodSignature sig;
      sig.name = method.name;
      for (const Param& param : method.params) {
        sig.params.push_back(StripPositions(param.type));
      }
      if (method.return_type) {
        sig.return_type = StripPositions(*method.return_type);
      }
      sig.annotations = AnnotationNames(method.annotations);
      cls.methods.push_back(std::move(sig));
    }
    summary.classes.push_back(std::move(cls));
  }
  return summary;
}

FileSummary EmptySummary(std::string path, std::uint64_t content_hash) {
  FileSummary summary;
  summary.path = std::move(path);
  summary.content_hash = content_hash;
  return summary;
}

std::string SummaryToJson(const FileSummary& summary) {
  Json doc;
  doc["formatVersion"] = summary.format_version;
  doc["path"] = summary.path;
  doc["contentHash"] = HashHex(summary.content_hash);
  doc["module"] = summary.module ? Json(*summary.module) : Json(nullptr);
  Json classes = Json::array();
  for (const ClassSummary& cls : summary.classes) {
    Json c;
    c["name"] = cls.name;
    c["annotations"] = cls.annotations;
    c["typeParams"] = cls.type_params;
    c["superclass"] =
        cls.superclass ? TypeToJson(*cls.superclass) : Json(nullptr);
    Json fields = Json::array();
    for (const FieldSignature& field : cls.fields) {
      fields.push_back({{"name", field.name}, {"type", TypeToJson(field.type)}});
    }
    c["fields"] = std::move(fields);
    Json methods = Json::array();
    for (const MethodSignature& method : cls.methods) {
      Json m;
      m["name"] = method.name;
      m["arity"] = method.arity();
      Json params = Json::array();
      for (const TypeRef& param : method.params) params.push_back(TypeToJson(param));
      m["params"] = std::move(params);
      m["returnType"] =
          method.return_type ? TypeToJson(*method.return_type) : Json(nullptr);
      m["annotations"] = method.annotations;
      methods.push_back(std::move(m));
    }
    c["methods"] = std::move(methods);
    classes.push_back(std::move(c));
  }
  doc["classes"] = std::move(classes);
  return doc.dump();
}

std::optional<FileSummary> SummaryFromJson(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    if (doc.at("formatVersion").get<int>() != kSummaryFormatVersion) {
      return std::nullopt;
    }
    FileSummary summary;
    summary.path = doc.at("path").get<std::string>();
    summary.content_hash =
        std::stoull(doc.at("contentHash").get<std::string>(), nullptr, 16);
    if (!doc.at("module").is_null()) {
      summary.module = doc.at("module").get<std::string>();
    }
    for (const Json& c : doc.at("classes")) {
      ClassSummary cls;
      cls.name = c.at("name").get<std::string>();
      cls.annotations = c.at("annotations").get<std::vector<std::string>>();
      cls.type_params = c.at("typeParams").get<std::vector<std::string>>();
      if (!c.at("superclass").is_null()) {
        cls.superclass = TypeFromJson(c.at("superclass"));
      }
      for (const Json& f : c.at("fields")) {
        cls.fields.push_back(
            {f.at("name").get<std::string>(), TypeFromJson(f.at("type"))});
      }
      for (const Json& m : c.at("methods")) {
        MethodSignature sig;
        sig.name = m.at("name").get<std::string>();
        for (const Json& p : m.at("params")) sig.params.push_back(TypeFromJson(p));
        if (!m.at("returnType").is_null()) {
          sig.return_type = TypeFromJson(m.at("returnType"));
        }
        sig.annotations = m.at("annotations").get<std::vector<std::string>>();
        if (m.at("arity").get<std::size_t>() != sig.params.size()) {
          return std::nullopt;
        }
        cls.methods.push_back(std::move(sig));
      }
      summary.classes.push_back(std::move(cls));
    }
    return summary;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace pdflow

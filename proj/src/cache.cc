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

#include "pdflow/cache.h"

#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "pdflow/source.h"

namespace pdflow {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kRecordVersion = 1;

std::optional<std::string> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

Json MethodRefToJson(const MethodRef& ref) {
  Json out;
  out["class"] = ref.class_name;
  out["method"] = ref.method ? Json(*ref.method) : Json(nullptr);
  return out;
}

MethodRef MethodRefFromJson(const Json& in) {
  MethodRef ref;
  ref.class_name = in.at("class").get<std::string>();
  if (!in.at("method").is_null()) ref.method = in.at("method").get<std::string>();
  return ref;
}

Rule RuleFromId(std::string_view id) {
  if (id == "R2") return Rule::kR2;
  if (id == "R3") return Rule::kR3;
  if (id == "SEMA") return Rule::kSema;
  throw std::invalid_argument("unknown rule id");
}

}  // namespace

std::string ReadFileOrThrow(const fs::path& path) {
  std::optional<std::string> text = ReadFile(path);
  if (!text) throw IoError("cannot read " + path.string());
  return std::move(*text);
}

SummaryCache::SummaryCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path SummaryCache::SummaryPath(std::uint64_t content_hash) const {
  const std::string hex = HashHex(content_hash);
  return dir_ / hex.substr(0, 2) / (hex + ".json");
}

fs::path SummaryCache::CheckPath(std::string_view path,
                                 std::uint64_t content_hash) const {
  std::string key_material(path);
  key_material.push_back('\0');
  key_material += HashHex(content_hash);
  const std::string hex = HashHex(StableHash(key_material));
  return dir_ / "checks" / hex.substr(0, 2) / (hex + ".json");
}

void SummaryCache::WriteAtomically(const fs::path& target,
                                   const std::string& content) const {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw IoError("cannot create " + target.parent_path().string());
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid()) + "." +
          std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw IoError("cannot write " + temp.string());
  }
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot commit " + target.string());
  }
}

std::optional<FileSummary> SummaryCache::LoadSummary(
    std::uint64_t content_hash, std::string_view path) const {
  std::optional<std::string> text = ReadFile(SummaryPath(content_hash));
  if (!text) return std::nullopt;
  std::optional<FileSummary> summary = SummaryFromJson(*text);
  if (!summary || summary->content_hash != content_hash) return std::nullopt;
  summary->path = std::string(path);
  return summary;
}

void SummaryCache::StoreSummary(const FileSummary& summary) const {
  WriteAtomically(SummaryPath(summary.content_hash), SummaryToJson(summary));
}

std::optional<CheckRecord> SummaryCache::LoadCheck(
    std::string_view path, std::uint64_t content_hash,
    std::string_view config_fingerprint) const {
  std::optional<std::string> text = ReadFile(CheckPath(path, content_hash));
  if (!text) return std::nullopt;
  try {
    const Json doc = Json::parse(*text);
    if (doc.at("version").get<int>() != kRecordVersion) return std::nullopt;
    CheckRecord record;
    record.path = doc.at("path").get<std::string>();
    record.content_hash =
        std::stoull(doc.at("contentHash").get<std::string>(), nullptr, 16);
    record.config_fingerprint = doc.at("config").get<std::string>();
    if (record.path != path || record.content_hash != content_hash ||
        record.config_fingerprint != config_fingerprint) {
      return std::nullopt;
    }
    record.dependencies =
        doc.at("dependencies").get<std::vector<std::string>>();
    for (const Json& d : doc.at("diagnostics")) {
      Diagnostic diag;
      diag.rule = RuleFromId(d.at("rule").get<std::string>());
      diag.position.file = d.at("file").get<std::string>();
      diag.position.line = d.at("line").get<int>();
      diag.position.column = d.at("column").get<int>();
      diag.message = d.at("message").get<std::string>();
      diag.subject_type = d.at("subject").get<std::string>();
      diag.context_owner = MethodRefFromJson(d.at("owner"));
      if (!d.at("callee").is_null()) diag.callee = MethodRefFromJson(d.at("callee"));
      record.diagnostics.push_back(std::move(diag));
    }
    return record;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void SummaryCache::StoreCheck(const CheckRecord& record) const {
  Json doc;
  doc["version"] = kRecordVersion;
  doc["path"] = record.path;
  doc["contentHash"] = HashHex(record.content_hash);
  doc["config"] = record.config_fingerprint;
  doc["dependencies"] = record.dependencies;
  Json diags = Json::array();
  for (const Diagnostic& d : record.diagnostics) {
    Json j;
    j["rule"] = RuleId(d.rule);
    j["file"] = d.position.file;
    j["line"] = d.position.line;
    j["column"] = d.position.column;
    j["message"] = d.message;
    j["subject"] = d.subject_type;
    j["owner"] = MethodRefToJson(d.context_owner);
    j["callee"] = d.callee ? MethodRefToJson(*d.callee) : Json(nullptr);
    diags.push_back(std::move(j));
  }
  doc["diagnostics"] = std::move(diags);
  WriteAtomically(CheckPath(record.path, record.content_hash), doc.dump());
}

std::optional<Manifest> SummaryCache::LoadManifest() const {
  std::optional<std::string> text = ReadFile(dir_ / "manifest.json");
  if (!text) return std::nullopt;
  try {
    const Json doc = Json::parse(*text);
    if (doc.at("version").get<int>() != kRecordVersion) return std::nullopt;
    Manifest manifest;
    manifest.config_fingerprint = doc.at("config").get<std::string>();
    for (const auto& [path, hash] : doc.at("files").items()) {
      manifest.files[path] = std::stoull(hash.get<std::string>(), nullptr, 16);
    }
    return manifest;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void SummaryCache::StoreManifest(const Manifest& manifest) const {
  Json doc;
  doc["version"] = kRecordVersion;
  doc["config"] = manifest.config_fingerprint;
  Json files = Json::object();
  for (const auto& [path, hash] : manifest.files) files[path] = HashHex(hash);
  doc["files"] = std::move(files);
  WriteAtomically(dir_ / "manifest.json", doc.dump());
}

}  // namespace pdflow

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

#ifndef PDFLOW_CACHE_H_
#define PDFLOW_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pdflow/diagnostic.h"
#include "pdflow/summary.h"

namespace pdflow {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagnostics of one file from its last check, with every class name the
// check consulted.
struct CheckRecord {
  std::string path;
  std::uint64_t content_hash = 0;
  std::string config_fingerprint;
  std::vector<std::string> dependencies;
  std::vector<Diagnostic> diagnostics;
};

// Path to content hash for every file of the last completed run.
struct Manifest {
  std::string config_fingerprint;
  std::map<std::string, std::uint64_t> files;
};

// Directory-backed store. Layout:
//   <dir>/<first 2 hex>/<hash>.json           FileSummary by content hash
//   <dir>/checks/<first 2 hex>/<key>.json     CheckRecord by (path, hash)
//   <dir>/manifest.json
// Every write goes to a temporary file that is renamed into place, so a
// reader sees either the old entry or the complete new one. Unreadable or
// malformed entries are reported as misses.
class SummaryCache {
 public:
  explicit SummaryCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path SummaryPath(std::uint64_t content_hash) const;

  // The returned summary carries `path`, whichever file stored it.
  std::optional<FileSummary> LoadSummary(std::uint64_t content_hash,
                                         std::string_view path) const;
  void StoreSummary(const FileSummary& summary) const;

  std::optional<CheckRecord> LoadCheck(std::string_view path,
                                       std::uint64_t content_hash,
                                       std::string_view config_fingerprint) const;
  void StoreCheck(const CheckRecord& record) const;

  std::optional<Manifest> LoadManifest() const;
  void StoreManifest(const Manifest& manifest) const;

 private:
  std::filesystem::path CheckPath(std::string_view path,
                                  std::uint64_t content_hash) const;
  void WriteAtomically(const std::filesystem::path& target,
                       const std::string& content) const;

  std::filesystem::path dir_;
};

std::string ReadFileOrThrow(const std::filesystem::path& path);

}  // namespace pdflow

#endif  // PDFLOW_CACHE_H_

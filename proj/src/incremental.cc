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

#include "pdflow/incremental.h"

#include <algorithm>
#include <map>
#include <optional>

#include "pdflow/parser.h"
#include "pdflow/rules.h"
#include "pdflow/sema.h"

namespace pdflow {
namespace {

struct FileState {
  SourceFile source;
  std::optional<ParseResult> parsed;
  FileSummary summary;
};

const ParseResult& EnsureParsed(FileState& file, IncrementalStats& stats) {
  if (!file.parsed) {
    file.parsed = Parse(file.source);
    stats.parsed.push_back(file.source.path);
  }
  return *file.parsed;
}

FileSummary SummaryOf(const ParseResult& parsed) {
  return parsed.ok() ? Summarize(parsed.unit)
                     : EmptySummary(parsed.unit.path, parsed.unit.content_hash);
}

// Names whose set of declarations differs between two versions of a file.
void DiffClasses(const FileSummary& before, const FileSummary& after,
                 std::set<std::string>& out) {
  std::map<std::string, std::vector<const ClassSummary*>> old_decls, new_decls;
  for (const ClassSummary& cls : before.classes) old_decls[cls.name].push_back(&cls);
  for (const ClassSummary& cls : after.classes) new_decls[cls.name].push_back(&cls);
  auto same = [](const std::vector<const ClassSummary*>& a,
                 const std::vector<const ClassSummary*>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const ClassSummary* x, const ClassSummary* y) {
                        return *x == *y;
                      });
  };
  for (const auto& [name, decls] : old_decls) {
    auto it = new_decls.find(name);
    if (it == new_decls.end() || !same(decls, it->second)) out.insert(name);
  }
  for (const auto& [name, decls] : new_decls) {
    if (old_decls.count(name) == 0) out.insert(name);
  }
}

}  // namespace

IncrementalResult AnalyzeIncremental(const std::set<std::string>& changed,
                                     const std::vector<std::string>& all_paths,
                                     const SummaryCache* cache,
                                     const AnalyzerConfig& config) {
  IncrementalResult out;
  IncrementalStats& stats = out.stats;
  const std::string fingerprint = config.Fingerprint();

  std::vector<std::string> paths = all_paths;
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());

  std::map<std::string, FileState> files;
  for (const std::string& path : paths) {
    files.emplace(path, FileState{SourceFile::FromText(path, ReadFileOrThrow(path)),
                                  std::nullopt, {}});
  }

  std::optional<Manifest> previous = cache ? cache->LoadManifest() : std::nullopt;
  stats.cold = !previous || previous->config_fingerprint != fingerprint;

  std::set<std::string> changed_files;
  for (const auto& [path, file] : files) {
    if (stats.cold || changed.count(path) != 0) {
      changed_files.insert(path);
      continue;
    }
    auto it = previous->files.find(path);
    if (it == previous->files.end() || it->second != file.source.content_hash) {
      changed_files.insert(path);
    }
  }

  // Summaries: from the cache for untouched files, otherwise by parsing.
  for (auto& [path, file] : files) {
    std::optional<FileSummary> cached;
    if (cache && changed_files.count(path) == 0) {
      cached = cache->LoadSummary(file.source.content_hash, path);
    }
    if (cached) {
      file.summary = std::move(*cached);
    } else {
      file.summary = SummaryOf(EnsureParsed(file, stats));
      if (cache) cache->StoreSummary(file.summary);
    }
  }

  // Classes whose declarations moved, appeared, changed or vanished.
  if (!stats.cold) {
    std::vector<std::string> touched(changed_files.begin(), changed_files.end());
    for (const auto& [path, hash] : previous->files) {
      if (files.count(path) == 0) touched.push_back(path);
    }
    for (const std::string& path : touched) {
      FileSummary before = EmptySummary(path, 0);
      if (auto it = previous->files.find(path); it != previous->files.end()) {
        std::optional<FileSummary> old = cache->LoadSummary(it->second, path);
        if (!old) {
          stats.cold = true;  // cannot diff; recheck everything
          break;
        }
        before = std::move(*old);
      }
      auto now = files.find(path);
      const FileSummary after =
          now != files.end() ? now->second.summary : EmptySummary(path, 0);
      DiffClasses(before, after, stats.changed_classes);
    }
  }

  std::vector<FileSummary> summaries;
  summaries.reserve(files.size());
  for (const auto& [path, file] : files) summaries.push_back(file.summary);
  const SymbolTable table = BuildSymbolTable({}, summaries, config);

  for (auto& [path, file] : files) {
    std::optional<CheckRecord> record;
    if (!stats.cold && changed_files.count(path) == 0) {
      record = cache->LoadCheck(path, file.source.content_hash, fingerprint);
      if (record && std::any_of(record->dependencies.begin(),
                                record->dependencies.end(),
                                [&](const std::string& name) {
                                  return stats.changed_classes.count(name) != 0;
                                })) {
        record.reset();
      }
    }
    if (record) {
      stats.reused.push_back(path);
    } else {
      std::set<std::string> dependencies;
      record = CheckRecord{path, file.source.content_hash, fingerprint, {},
                           CheckFile(EnsureParsed(file, stats), table,
                                     &dependencies)};
      record->dependencies.assign(dependencies.begin(), dependencies.end());
      if (cache) cache->StoreCheck(*record);
      stats.rechecked.push_back(path);
    }
    out.result.diagnostics.insert(out.result.diagnostics.end(),
                                  record->diagnostics.begin(),
                                  record->diagnostics.end());
  }

  if (cache) {
    Manifest manifest;
    manifest.config_fingerprint = fingerprint;
    for (const auto& [path, file] : files) {
      manifest.files[path] = file.source.content_hash;
    }
    cache->StoreManifest(manifest);
  }

  out.result.files_analyzed = files.size();
  out.result.classes_seen = table.DeclaredCount();
  SortAndDedupe(out.result.diagnostics);
  out.summaries = std::move(summaries);
  return out;
}

}  // namespace pdflow

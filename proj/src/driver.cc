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

#include "pdflow/driver.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <fnmatch.h>

#include "CLI11.hpp"
#include "pdflow/cache.h"
#include "pdflow/incremental.h"
#include "pdflow/metrics.h"
#include "pdflow/parser.h"
#include "pdflow/policy.h"
#include "pdflow/render.h"
#include "pdflow/sema.h"

namespace pdflow {

namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultConfigFile = "pdflow.json";
constexpr const char* kCacheEnvVar = "PDFLOW_CACHE_DIR";

bool MatchesAny(const std::vector<std::string>& globs, const std::string& path) {
  return std::any_of(globs.begin(), globs.end(), [&](const std::string& glob) {
    return ::fnmatch(glob.c_str(), path.c_str(), 0) == 0;
  });
}

struct Options {
  std::string command;
  std::vector<std::string> paths;
  std::string config_path;
  std::string format;
  std::string cache_dir;
  bool no_cache = false;
  std::string out_path;
};

AnalyzerConfig LoadConfig(const Options& options) {
  AnalyzerConfig config = AnalyzerConfig::Defaults();
  std::string path = options.config_path;
  if (path.empty() && fs::exists(kDefaultConfigFile)) path = kDefaultConfigFile;
  if (!path.empty()) {
    std::string text;
    try {
      text = ReadFileOrThrow(path);
    } catch (const IoError&) {
      throw ConfigError("cannot read config file " + path);
    }
    config = AnalyzerConfig::FromJson(text);
  }
  if (options.format == "text") config.output_format = OutputFormat::kText;
  if (options.format == "json") config.output_format = OutputFormat::kJson;
  if (!options.cache_dir.empty()) config.cache_dir = options.cache_dir;
  if (!config.cache_dir) {
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) {
      config.cache_dir = env;
    }
  }
  if (options.no_cache) config.cache_dir.reset();
  return config;
}

void Emit(const Options& options, const std::string& text, std::ostream& out) {
  if (options.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(options.out_path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw IoError("cannot write " + options.out_path);
}

int Execute(const Options& options, std::ostream& out, std::ostream& err) {
  const AnalyzerConfig config = LoadConfig(options);
  const std::vector<std::string> paths = DiscoverFiles(options.paths, config);
  if (paths.empty()) {
    err << "pdflow: no input files\n";
    return kExitError;
  }

  if (options.command == "policy") {
    std::vector<ParseResult> parsed;
    parsed.reserve(paths.size());
    for (const std::string& path : paths) {
      parsed.push_back(Parse(SourceFile::FromText(path, ReadFileOrThrow(path))));
    }
    std::vector<const AstUnit*> units;
    for (const ParseResult& p : parsed) {
      if (p.ok()) units.push_back(&p.unit);
    }
    const SymbolTable table = BuildSymbolTable(units, {}, config);
    const PolicyDocument doc = ExtractPolicy(BuildCallGraph(table, units), table,
                                             InputFingerprint(paths, config));
    for (const PolicyWarning& warning : doc.warnings) {
      err << "pdflow: warning: " << warning.message << "\n";
    }
    Emit(options, RenderPolicy(doc, config.output_format), out);
    return kExitClean;
  }

  std::optional<SummaryCache> cache;
  if (config.cache_dir) cache.emplace(*config.cache_dir);
  const IncrementalResult run =
      AnalyzeIncremental({}, paths, cache ? &*cache : nullptr, config);

  if (options.command == "metrics") {
    const SymbolTable table = BuildSymbolTable({}, run.summaries, config);
    Emit(options, RenderMetrics(ComputeMetrics(table, run.result),
                                config.output_format),
         out);
    return kExitClean;
  }

  Emit(options, RenderDiagnostics(run.result, config.output_format), out);
  const bool violations =
      run.result.Count(Rule::kR2) + run.result.Count(Rule::kR3) > 0;
  return violations ? kExitViolations : kExitClean;
}

}  // namespace

std::vector<std::string> DiscoverFiles(const std::vector<std::string>& roots,
                                       const AnalyzerConfig& config) {
  std::vector<std::string> out;
  for (const std::string& root : roots) {
    std::error_code ec;
    const fs::file_status status = fs::status(root, ec);
    if (ec || !fs::exists(status)) {
      throw ConfigError("no such file or directory: " + root);
    }
    if (fs::is_directory(status)) {
      for (fs::recursive_directory_iterator it(root, ec), end; !ec && it != end;
           it.increment(ec)) {
        if (!it->is_regular_file()) continue;
        const std::string path = it->path().generic_string();
        if (MatchesAny(config.include_globs, path) &&
            !MatchesAny(config.exclude_globs, path)) {
          out.push_back(path);
        }
      }
      if (ec) throw ConfigError("cannot list directory " + root);
    } else {
      const std::string path = fs::path(root).generic_string();
      if (!MatchesAny(config.exclude_globs, path)) out.push_back(path);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string InputFingerprint(const std::vector<std::string>& paths,
                             const AnalyzerConfig& config) {
  std::vector<std::string> sorted = paths;
  std::sort(sorted.begin(), sorted.end());
  std::string material = config.Fingerprint();
  for (const std::string& path : sorted) {
    material += "\n" + path + "\t" +
                HashHex(StableHash(ReadFileOrThrow(path)));
  }
  return HashHex(StableHash(material));
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options options;
  CLI::App app{"Annotation-based personal data analyzer", "pdflow"};
  app.require_subcommand(1);
  for (const char* name : {"analyze", "metrics", "policy"}) {
    const char* description =
        std::string_view(name) == "analyze"   ? "Report rule violations"
        : std::string_view(name) == "metrics" ? "Report personal data prevalence"
                                              : "Emit a policy template";
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("paths", options.paths, "Files or directories to analyze")
        ->required();
    sub->add_option("--config", options.config_path, "JSON config file");
    sub->add_option("--format", options.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--cache-dir", options.cache_dir, "Summary cache directory");
    sub->add_flag("--no-cache", options.no_cache, "Disable the summary cache");
    sub->add_option("--out", options.out_path, "Write output to this file");
    sub->callback([&options, name] { options.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitClean;
  } catch (const CLI::ParseError& e) {
    err << "pdflow: " << e.what() << "\n";
    return kExitError;
  }

  try {
    return Execute(options, out, err);
  } catch (const ConfigError& e) {
    err << "pdflow: " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "pdflow: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "pdflow: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace pdflow

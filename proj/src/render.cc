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

#include "pdflow/render.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pdflow {

using Json = nlohmann::ordered_json;

namespace {

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

// Two-column table, left column padded to its widest cell.
std::string Table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [label, value] : rows) width = std::max(width, label.size());
  std::string out;
  for (const auto& [label, value] : rows) {
    out += label + std::string(width - label.size() + 2, ' ') + value + "\n";
  }
  return out;
}

std::string FormatRatio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

}  // namespace

std::string RenderDiagnostics(const AnalysisResult& result, OutputFormat format) {
  if (format == OutputFormat::kText) {
    std::string out;
    for (const Diagnostic& d : result.diagnostics) {
      out += ToString(d.position) + ": warning[" + std::string(RuleId(d.rule)) +
             "]: " + d.message + "\n";
    }
    return out;
  }
  Json doc;
  doc["version"] = kDiagnosticsJsonVersion;
  Json list = Json::array();
  for (const Diagnostic& d : result.diagnostics) {
    Json j;
    j["rule"] = RuleId(d.rule);
    j["file"] = d.position.file;
    j["line"] = d.position.line;
    j["column"] = d.position.column;
    j["message"] = d.message;
    j["subjectType"] = d.subject_type;
    j["contextOwner"] = d.context_owner.ToString();
    if (d.callee) j["callee"] = d.callee->ToString();
    list.push_back(std::move(j));
  }
  doc["diagnostics"] = std::move(list);
  return Dump(doc);
}

std::string RenderMetrics(const MetricsReport& report, OutputFormat format) {
  const std::string exact = std::to_string(report.personal_ratio.numerator) +
                            "/" +
                            std::to_string(report.personal_ratio.denominator);
  if (format == OutputFormat::kJson) {
    Json doc;
    doc["totalClasses"] = report.total_classes;
    doc["personalClasses"] = report.personal_classes;
    doc["personalRatio"] = report.personal_ratio.value();
    doc["personalRatioExact"] = exact;
    doc["handlerContexts"] = report.handler_contexts;
    doc["endpointFunctions"] = report.endpoint_functions;
    doc["perModulePersonal"] = Json::object();
    for (const auto& [module, count] : report.per_module_personal) {
      doc["perModulePersonal"][module] = count;
    }
    doc["violationCounts"] = Json::object();
    for (const auto& [rule, count] : report.violation_counts) {
      doc["violationCounts"][rule] = count;
    }
    return Dump(doc);
  }
  std::vector<std::pair<std::string, std::string>> rows = {
      {"total classes", std::to_string(report.total_classes)},
      {"personal classes", std::to_string(report.personal_classes)},
      {"personal ratio",
       FormatRatio(report.personal_ratio.value()) + " (" + exact + ")"},
      {"handler contexts", std::to_string(report.handler_contexts)},
      {"endpoint functions", std::to_string(report.endpoint_functions)},
  };
  for (const auto& [rule, count] : report.violation_counts) {
    rows.emplace_back("violations " + rule, std::to_string(count));
  }
  for (const auto& [module, count] : report.per_module_personal) {
    rows.emplace_back("module " + module, std::to_string(count));
  }
  return Table(rows);
}

std::string RenderPolicy(const PolicyDocument& doc, OutputFormat format) {
  if (format == OutputFormat::kText) {
    std::ostringstream out;
    out << "policy template (schema " << doc.schema_version << ", input "
        << doc.generated_from << ")\n";
    for (const Purpose& purpose : doc.purposes) {
      out << "purpose " << purpose.name << "\n";
      for (const DataElement& data : purpose.data) {
        out << "  data " << data.class_name;
        for (std::size_t i = 0; i < data.fields.size(); ++i) {
          out << (i == 0 ? " {" : ", ") << data.fields[i].second << " "
              << data.fields[i].first;
        }
        out << (data.fields.empty() ? "" : "}") << "\n";
      }
      out << "  unresolved calls " << purpose.unresolved_calls << "\n";
    }
    return out.str();
  }
  Json out;
  out["schemaVersion"] = doc.schema_version;
  out["generatedFrom"] = doc.generated_from;
  Json purposes = Json::array();
  for (const Purpose& purpose : doc.purposes) {
    Json p;
    p["name"] = purpose.name;
    p["entry"] = {{"class", purpose.entry.class_name},
                  {"method", purpose.entry.method}};
    Json data = Json::array();
    for (const DataElement& element : purpose.data) {
      Json fields = Json::array();
      for (const auto& [name, type] : element.fields) {
        fields.push_back({{"name", name}, {"type", type}});
      }
      data.push_back({{"class", element.class_name}, {"fields", std::move(fields)}});
    }
    p["data"] = std::move(data);
    p["unresolvedCalls"] = purpose.unresolved_calls;
    purposes.push_back(std::move(p));
  }
  out["purposes"] = std::move(purposes);
  return Dump(out);
}

}  // namespace pdflow

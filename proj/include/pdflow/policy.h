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

#ifndef PDFLOW_POLICY_H_
#define PDFLOW_POLICY_H_

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pdflow/ast.h"
#include "pdflow/config.h"
#include "pdflow/sema.h"

namespace pdflow {

inline constexpr int kPolicySchemaVersion = 1;

struct MethodNode {
  std::string class_name;
  std::string method;
  std::size_t arity = 0;

  std::string ToString() const { return class_name + "." + method; }
  friend bool operator==(const MethodNode&, const MethodNode&) = default;
  friend auto operator<=>(const MethodNode&, const MethodNode&) = default;
};

struct UnresolvedCall {
  MethodNode caller;
  Position pos;
  std::string callee;  // as written: "receiverType.method" or "method"
  friend bool operator==(const UnresolvedCall&, const UnresolvedCall&) = default;
  friend auto operator<=>(const UnresolvedCall&, const UnresolvedCall&) = default;
};

// Static call graph. Calls resolve through the receiver's static type by
// name and arity; overrides in subclasses are not added.
struct CallGraph {
  std::set<MethodNode> nodes;
  std::map<MethodNode, std::set<MethodNode>> edges;
  std::set<UnresolvedCall> unresolved;
  // Declared classes named by each method's parameter, return, local
  // declaration and construction types (including type arguments).
  std::map<MethodNode, std::set<std::string>> mentioned_classes;

  std::size_t OutDegree(const MethodNode& node) const;
};

CallGraph BuildCallGraph(const SymbolTable& table,
                         const std::vector<const AstUnit*>& units);

struct DataElement {
  std::string class_name;
  std::vector<std::pair<std::string, std::string>> fields;  // name, type
  friend bool operator==(const DataElement&, const DataElement&) = default;
};

struct Purpose {
  std::string name;  // "Class.method"
  MethodNode entry;
  std::vector<DataElement> data;  // sorted by class name
  std::size_t unresolved_calls = 0;
  friend bool operator==(const Purpose&, const Purpose&) = default;
};

struct PolicyWarning {
  MethodNode method;
  std::string message;
  friend bool operator==(const PolicyWarning&, const PolicyWarning&) = default;
};

struct PolicyDocument {
  int schema_version = kPolicySchemaVersion;
  std::string generated_from;
  std::vector<Purpose> purposes;  // sorted by name, then arity
  std::vector<PolicyWarning> warnings;
  friend bool operator==(const PolicyDocument&, const PolicyDocument&) = default;
};

// A Purpose is an entry-point method that is also in a handler context. Its
// data elements are the entity classes that are personal and named by any
// method reachable from the entry.
PolicyDocument ExtractPolicy(const CallGraph& graph, const SymbolTable& table,
                             std::string generated_from = {});

}  // namespace pdflow

#endif  // PDFLOW_POLICY_H_

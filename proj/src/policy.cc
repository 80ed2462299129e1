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

#include "pdflow/policy.h"

#include <algorithm>

#include "pdflow/summary.h"

namespace pdflow {

std::size_t CallGraph::OutDegree(const MethodNode& node) const {
  auto it = edges.find(node);
  return it == edges.end() ? 0 : it->second.size();
}

namespace {

void CollectClassNames(const ResolvedType& type, std::set<std::string>& out) {
  if (type.kind == TypeKind::kClass) out.insert(type.name);
  for (const ResolvedType& arg : type.type_args) CollectClassNames(arg, out);
}

class GraphBuilder {
 public:
  GraphBuilder(const SymbolTable& table, CallGraph& graph)
      : resolver_(table), graph_(graph) {}

  void AddSignatures() {
    for (const auto& [name, info] : resolver_.table().classes()) {
      const TypeEnv env = resolver_.DeclarationEnv(info.decl.type_params);
      for (const MethodSignature& sig : info.decl.methods) {
        const MethodNode node{name, sig.name, sig.arity()};
        graph_.nodes.insert(node);
        std::set<std::string>& mentioned = graph_.mentioned_classes[node];
        for (const TypeRef& param : sig.params) {
          CollectClassNames(resolver_.Resolve(param, env), mentioned);
        }
        if (sig.return_type) {
          CollectClassNames(resolver_.Resolve(*sig.return_type, env), mentioned);
        }
      }
    }
  }

  void AddBodies(const AstUnit& unit) {
    for (const ClassDecl& cls : unit.classes) {
      for (const MethodDecl& method : cls.methods) {
        const MethodNode node{cls.name, method.name, method.params.size()};
        graph_.nodes.insert(node);
        const TypedBody typed = TypeMethodBody(cls, method, resolver_);
        const TypeEnv env = resolver_.DeclarationEnv(cls.type_params);
        std::set<std::string>& mentioned = graph_.mentioned_classes[node];
        for (const auto& [stmt, type] : typed.locals) {
          CollectClassNames(type, mentioned);
        }
        for (const auto& [expr, info] : typed.exprs) {
          if (const auto* made = std::get_if<New>(&expr->node)) {
            CollectClassNames(resolver_.Resolve(made->type, env), mentioned);
          }
          if (!info.call) continue;
          if (info.call->resolved) {
            graph_.edges[node].insert(
                MethodNode{info.call->callee.class_name,
                           *info.call->callee.method,
                           std::get<Call>(expr->node).args.size()});
          } else {
            graph_.unresolved.insert(
                UnresolvedCall{node, expr->pos, info.call->callee.ToString()});
          }
        }
      }
    }
  }

 private:
  TypeResolver resolver_;
  CallGraph& graph_;
};

}  // namespace

CallGraph BuildCallGraph(const SymbolTable& table,
                         const std::vector<const AstUnit*>& units) {
  CallGraph graph;
  GraphBuilder builder(table, graph);
  builder.AddSignatures();
  for (const AstUnit* unit : units) builder.AddBodies(*unit);
  return graph;
}

PolicyDocument ExtractPolicy(const CallGraph& graph, const SymbolTable& table,
                             std::string generated_from) {
  const AnalyzerConfig& config = table.config();
  const TypeResolver resolver(table);
  PolicyDocument doc;
  doc.generated_from = std::move(generated_from);

  std::map<MethodNode, std::size_t> unresolved_per_node;
  for (const UnresolvedCall& call : graph.unresolved) {
    ++unresolved_per_node[call.caller];
  }

  for (const MethodNode& node : graph.nodes) {
    const ClassInfo* info = table.Find(node.class_name);
    if (!info) continue;
    const MethodSignature* sig = nullptr;
    for (const MethodSignature& candidate : info->decl.methods) {
      if (candidate.name == node.method && candidate.arity() == node.arity) {
        sig = &candidate;
        break;
      }
    }
    if (!sig) continue;
    const bool entry = std::any_of(
        sig->annotations.begin(), sig->annotations.end(),
        [&](const std::string& n) {
          return config.Classify(n) == AnnotationKind::kEntryPoint;
        });
    if (!entry) continue;
    if (!ComputeEffectiveContext(*info, sig, config).has_handler) {
      doc.warnings.push_back(
          {node, "entry point '" + node.ToString() +
                     "' is not a handler context; no purpose generated"});
      continue;
    }

    Purpose purpose;
    purpose.name = node.ToString();
    purpose.entry = node;
    std::set<MethodNode> visited{node};
    std::vector<MethodNode> stack{node};
    std::set<std::string> data;
    while (!stack.empty()) {
      const MethodNode current = stack.back();
      stack.pop_back();
      if (auto it = unresolved_per_node.find(current); it != unresolved_per_node.end()) {
        purpose.unresolved_calls += it->second;
      }
      if (auto it = graph.mentioned_classes.find(current);
          it != graph.mentioned_classes.end()) {
        for (const std::string& name : it->second) {
          const ClassInfo* cls = table.Find(name);
          if (cls && cls->Has(AnnotationKind::kEntity) &&
              resolver.ClassIsPersonal(name)) {
            data.insert(name);
          }
        }
      }
      if (auto it = graph.edges.find(current); it != graph.edges.end()) {
        for (const MethodNode& next : it->second) {
          if (visited.insert(next).second) stack.push_back(next);
        }
      }
    }
    for (const std::string& name : data) {
      DataElement element;
      element.class_name = name;
      for (const FieldSignature& field : table.Find(name)->decl.fields) {
        element.fields.emplace_back(field.name, ToString(field.type));
      }
      purpose.data.push_back(std::move(element));
    }
    doc.purposes.push_back(std::move(purpose));
  }
  std::sort(doc.purposes.begin(), doc.purposes.end(),
            [](const Purpose& a, const Purpose& b) {
              return std::tie(a.name, a.entry.arity) <
                     std::tie(b.name, b.entry.arity);
            });
  return doc;
}

}  // namespace pdflow

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

#ifndef PDFLOW_SEMA_H_
#define PDFLOW_SEMA_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pdflow/ast.h"
#include "pdflow/config.h"
#include "pdflow/diagnostic.h"
#include "pdflow/summary.h"

namespace pdflow {

inline constexpr std::string_view kDefaultModule = "(default)";

// ---- Resolved types ----

enum class TypeKind { kClass, kPrimitive, kUnknown, kVoid };

struct ResolvedType {
  TypeKind kind = TypeKind::kUnknown;
  std::string name;  // empty for an anonymous Unknown
  std::vector<ResolvedType> type_args;
  int array_dims = 0;

  static ResolvedType Unknown(std::string name = {});
  static ResolvedType Primitive(std::string name);
  static ResolvedType Void();
  static ResolvedType Class(std::string name, std::vector<ResolvedType> args = {});

  friend bool operator==(const ResolvedType&, const ResolvedType&) = default;
};

std::string ToString(const ResolvedType& type);

bool IsPrimitiveTypeName(std::string_view name);

// ---- Symbol table ----

enum class ClassOrigin { kParsed, kSummary, kExternal };

struct ClassInfo {
  std::string name;
  ClassOrigin origin = ClassOrigin::kParsed;
  std::string file;               // empty for external classes
  std::size_t index_in_file = 0;  // declaration order within `file`
  std::string module{kDefaultModule};
  ClassSummary decl;  // signatures only; empty for external classes
  std::optional<std::string> resolved_super;
  std::set<AnnotationKind> effective_annotations;

  bool Has(AnnotationKind kind) const {
    return effective_annotations.count(kind) != 0;
  }
};

// A table-level error tied to one class declaration.
struct TableIssue {
  enum class Kind { kDuplicateClass, kInheritanceCycle, kUnknownSuperclass };
  Kind kind;
  std::string file;
  std::size_t class_index = 0;
  std::string class_name;
  std::string message;
};

class SymbolTable {
 public:
  explicit SymbolTable(AnalyzerConfig config) : config_(std::move(config)) {}

  // nullptr means the distinguished Unknown type.
  const ClassInfo* Find(std::string_view name) const;

  const std::map<std::string, ClassInfo, std::less<>>& classes() const {
    return classes_;
  }
  const std::vector<TableIssue>& issues() const { return issues_; }
  std::vector<const TableIssue*> IssuesFor(std::string_view file,
                                           std::size_t class_index) const;
  const AnalyzerConfig& config() const { return config_; }

  // Declared (non-external) classes.
  std::size_t DeclaredCount() const;

 private:
  friend SymbolTable BuildSymbolTable(const std::vector<const AstUnit*>&,
                                      const std::vector<FileSummary>&,
                                      const AnalyzerConfig&);
  AnalyzerConfig config_;
  std::map<std::string, ClassInfo, std::less<>> classes_;
  std::vector<TableIssue> issues_;
};

// Units and summaries must describe disjoint files. Duplicate class names
// keep the first declaration by (path, declaration order). Inheritance rings
// are cut at the member with the smallest name.
SymbolTable BuildSymbolTable(const std::vector<const AstUnit*>& units,
                             const std::vector<FileSummary>& summaries,
                             const AnalyzerConfig& config);

// ---- Contexts ----

struct EffectiveContext {
  MethodRef owner;
  bool has_handler = false;   // A2 on the method or its class
  bool has_endpoint = false;  // A3 on the method or its class
};

EffectiveContext ComputeEffectiveContext(const ClassInfo& cls,
                                         const MethodSignature* method,
                                         const AnalyzerConfig& config);
EffectiveContext ComputeEffectiveContext(const ClassDecl& cls,
                                         const MethodDecl* method,
                                         const AnalyzerConfig& config);

// ---- Type queries ----

using TypeEnv = std::map<std::string, ResolvedType, std::less<>>;

struct MethodMatch {
  const ClassInfo* owner = nullptr;
  const MethodSignature* signature = nullptr;
  ResolvedType return_type;
};

// Read-only view of a SymbolTable for one analysis task. Every class name
// looked up is added to `dependencies` when one is supplied.
class TypeResolver {
 public:
  explicit TypeResolver(const SymbolTable& table,
                        std::set<std::string>* dependencies = nullptr)
      : table_(table), dependencies_(dependencies) {}

  const SymbolTable& table() const { return table_; }
  const ClassInfo* Find(std::string_view name) const;

  // Binds `cls`'s type parameters to `args`, or to Unknown on arity mismatch.
  TypeEnv EnvFor(const ClassInfo& cls,
                 const std::vector<ResolvedType>& args) const;
  // Environment inside the body of a class: parameters stay Unknown.
  TypeEnv DeclarationEnv(const std::vector<std::string>& type_params) const;

  ResolvedType Resolve(const TypeRef& ref, const TypeEnv& env) const;

  bool IsPersonal(const ResolvedType& type) const;
  // Name of the first personal class within `type`, searching the base and
  // then the type arguments depth-first.
  std::optional<std::string> PersonalSubject(const ResolvedType& type) const;
  bool ClassIsPersonal(std::string_view name) const;

  std::optional<ResolvedType> FieldType(const ResolvedType& receiver,
                                        std::string_view field) const;
  std::optional<MethodMatch> FindMethod(const ResolvedType& receiver,
                                        std::string_view name,
                                        std::size_t arity) const;

 private:
  const SymbolTable& table_;
  std::set<std::string>* dependencies_;
};

bool IsPersonal(const ResolvedType& type, const SymbolTable& table);

// ---- Body typing ----

struct CallInfo {
  bool resolved = false;
  MethodRef callee;
  EffectiveContext callee_context;  // meaningful only when resolved
};

struct ExprInfo {
  ResolvedType type;
  bool class_reference = false;  // a bare class name, not an instance
  std::optional<CallInfo> call;
};

// Flow-sensitive typing of expressions inside one method. Locals enter
// scope after their declaration statement; blocks close their scope.
class BodyTyper {
 public:
  BodyTyper(const ClassDecl& cls, const MethodDecl* method,
            const TypeResolver& resolver);

  void PushScope();
  void PopScope();
  void Declare(const std::string& name, ResolvedType type);

  // Types `expr` and all its subexpressions, memoizing each node.
  ResolvedType TypeOf(const Expr& expr);

  const TypeEnv& env() const { return env_; }
  const std::unordered_map<const Expr*, ExprInfo>& infos() const {
    return infos_;
  }
  std::vector<Diagnostic>& errors() { return errors_; }

 private:
  ExprInfo Compute(const Expr& expr);
  std::optional<ResolvedType> LookupLocal(std::string_view name) const;

  const ClassDecl& cls_;
  const TypeResolver& resolver_;
  MethodRef owner_;
  TypeEnv env_;
  ResolvedType self_;
  std::set<std::string, std::less<>> body_locals_;
  std::vector<std::map<std::string, ResolvedType, std::less<>>> scopes_;
  std::unordered_map<const Expr*, ExprInfo> infos_;
  std::vector<Diagnostic> errors_;
};

struct TypedBody {
  std::unordered_map<const Expr*, ExprInfo> exprs;
  std::unordered_map<const Stmt*, ResolvedType> locals;  // LocalDecl types
  std::vector<Diagnostic> errors;
};

TypedBody TypeMethodBody(const ClassDecl& cls, const MethodDecl& method,
                         const TypeResolver& resolver);

}  // namespace pdflow

#endif  // PDFLOW_SEMA_H_

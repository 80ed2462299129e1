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

#include "pdflow/sema.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pdflow {

// ---- ResolvedType ----

ResolvedType ResolvedType::Unknown(std::string name) {
  return ResolvedType{TypeKind::kUnknown, std::move(name), {}, 0};
}
ResolvedType ResolvedType::Primitive(std::string name) {
  return ResolvedType{TypeKind::kPrimitive, std::move(name), {}, 0};
}
ResolvedType ResolvedType::Void() {
  return ResolvedType{TypeKind::kVoid, "void", {}, 0};
}
ResolvedType ResolvedType::Class(std::string name,
                                 std::vector<ResolvedType> args) {
  return ResolvedType{TypeKind::kClass, std::move(name), std::move(args), 0};
}

std::string ToString(const ResolvedType& type) {
  std::string out = type.name.empty() ? "<unknown>" : type.name;
  if (!type.type_args.empty()) {
    out += "<";
    for (std::size_t i = 0; i < type.type_args.size(); ++i) {
      if (i > 0) out += ", ";
      out += ToString(type.type_args[i]);
    }
    out += ">";
  }
  for (int i = 0; i < type.array_dims; ++i) out += "[]";
  return out;
}

bool IsPrimitiveTypeName(std::string_view name) {
  static constexpr std::string_view kNames[] = {
      "int", "long", "short", "byte", "char",
      "float", "double", "boolean", "String"};
  return std::find(std::begin(kNames), std::end(kNames), name) !=
         std::end(kNames);
}

// ---- SymbolTable ----

const ClassInfo* SymbolTable::Find(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

std::vector<const TableIssue*> SymbolTable::IssuesFor(
    std::string_view file, std::size_t class_index) const {
  std::vector<const TableIssue*> out;
  for (const TableIssue& issue : issues_) {
    if (issue.file == file && issue.class_index == class_index) {
      out.push_back(&issue);
    }
  }
  return out;
}

std::size_t SymbolTable::DeclaredCount() const {
  return static_cast<std::size_t>(std::count_if(
      classes_.begin(), classes_.end(), [](const auto& entry) {
        return entry.second.origin != ClassOrigin::kExternal;
      }));
}

namespace {

void CutInheritanceRings(std::map<std::string, ClassInfo, std::less<>>& classes,
                         std::vector<TableIssue>& issues) {
  enum class Mark { kNew, kOnPath, kDone };
  std::map<std::string, Mark, std::less<>> marks;
  for (const auto& [name, info] : classes) marks[name] = Mark::kNew;

  for (const auto& [start, unused] : classes) {
    std::vector<std::string> path;
    std::string current = start;
    while (true) {
      Mark& mark = marks[current];
      if (mark == Mark::kDone) break;
      if (mark == Mark::kOnPath) {
        auto ring_begin = std::find(path.begin(), path.end(), current);
        std::vector<std::string> ring(ring_begin, path.end());
        const std::string cut = *std::min_element(ring.begin(), ring.end());
        std::string cycle = cut;
        std::string walk = *classes.at(cut).resolved_super;
        while (true) {
          cycle += " -> " + walk;
          if (walk == cut) break;
          walk = *classes.at(walk).resolved_super;
        }
        ClassInfo& victim = classes.at(cut);
        victim.resolved_super.reset();
        issues.push_back({TableIssue::Kind::kInheritanceCycle, victim.file,
                          victim.index_in_file, cut,
                          "inheritance cycle " + cycle +
                              "; superclass of '" + cut + "' ignored"});
        break;
      }
      mark = Mark::kOnPath;
      path.push_back(current);
      const ClassInfo& info = classes.at(current);
      if (!info.resolved_super) break;
      current = *info.resolved_super;
    }
    for (const std::string& name : path) marks[name] = Mark::kDone;
  }
}

}  // namespace

SymbolTable BuildSymbolTable(const std::vector<const AstUnit*>& units,
                             const std::vector<FileSummary>& summaries,
                             const AnalyzerConfig& config) {
  SymbolTable table(config);

  std::vector<std::pair<FileSummary, ClassOrigin>> files;
  files.reserve(units.size() + summaries.size());
  for (const AstUnit* unit : units) {
    files.emplace_back(Summarize(*unit), ClassOrigin::kParsed);
  }
  for (const FileSummary& summary : summaries) {
    files.emplace_back(summary, ClassOrigin::kSummary);
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.first.path < b.first.path;
  });
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].first.path == files[i - 1].first.path) {
      throw std::invalid_argument("file listed twice: " + files[i].first.path);
    }
  }

  for (auto& [summary, origin] : files) {
    for (std::size_t i = 0; i < summary.classes.size(); ++i) {
      const ClassSummary& cls = summary.classes[i];
      if (const ClassInfo* first = table.Find(cls.name)) {
        table.issues_.push_back(
            {TableIssue::Kind::kDuplicateClass, summary.path, i, cls.name,
             "duplicate class '" + cls.name + "' (already declared in " +
                 first->file + ")"});
        continue;
      }
      ClassInfo info;
      info.name = cls.name;
      info.origin = origin;
      info.file = summary.path;
      info.index_in_file = i;
      if (summary.module) info.module = *summary.module;
      info.decl = cls;
      for (const std::string& annotation : cls.annotations) {
        info.effective_annotations.insert(config.Classify(annotation));
      }
      table.classes_.emplace(cls.name, std::move(info));
    }
  }

  for (const std::string& name : config.external_personal_types) {
    auto it = table.classes_.find(name);
    if (it != table.classes_.end()) {
      it->second.effective_annotations.insert(AnnotationKind::kPersonalData);
      continue;
    }
    ClassInfo info;
    info.name = name;
    info.origin = ClassOrigin::kExternal;
    info.decl.name = name;
    info.effective_annotations.insert(AnnotationKind::kPersonalData);
    table.classes_.emplace(name, std::move(info));
  }

  for (auto& [name, info] : table.classes_) {
    if (!info.decl.superclass) continue;
    const std::string& super = info.decl.superclass->name;
    const bool is_param =
        std::find(info.decl.type_params.begin(), info.decl.type_params.end(),
                  super) != info.decl.type_params.end();
    if (!is_param && table.classes_.count(super) != 0) {
      info.resolved_super = super;
    } else {
      table.issues_.push_back({TableIssue::Kind::kUnknownSuperclass, info.file,
                               info.index_in_file, name,
                               "unknown superclass '" + super + "' of '" +
                                   name + "'"});
    }
  }
  CutInheritanceRings(table.classes_, table.issues_);
  return table;
}

// ---- Contexts ----

namespace {
bool AnyOf(const std::vector<std::string>& names, AnnotationKind kind,
           const AnalyzerConfig& config) {
  return std::any_of(names.begin(), names.end(), [&](const std::string& n) {
    return config.Classify(n) == kind;
  });
}
bool AnyOf(const std::vector<AnnotationUse>& uses, AnnotationKind kind,
           const AnalyzerConfig& config) {
  return std::any_of(uses.begin(), uses.end(), [&](const AnnotationUse& u) {
    return config.Classify(u.name) == kind;
  });
}
}  // namespace

EffectiveContext ComputeEffectiveContext(const ClassInfo& cls,
                                         const MethodSignature* method,
                                         const AnalyzerConfig& config) {
  EffectiveContext ctx;
  ctx.owner.class_name = cls.name;
  ctx.has_handler = cls.Has(AnnotationKind::kHandler);
  ctx.has_endpoint = cls.Has(AnnotationKind::kEndpoint);
  if (method) {
    ctx.owner.method = method->name;
    ctx.has_handler = ctx.has_handler ||
                      AnyOf(method->annotations, AnnotationKind::kHandler, config);
    ctx.has_endpoint =
        ctx.has_endpoint ||
        AnyOf(method->annotations, AnnotationKind::kEndpoint, config);
  }
  return ctx;
}

EffectiveContext ComputeEffectiveContext(const ClassDecl& cls,
                                         const MethodDecl* method,
                                         const AnalyzerConfig& config) {
  EffectiveContext ctx;
  ctx.owner.class_name = cls.name;
  ctx.has_handler = AnyOf(cls.annotations, AnnotationKind::kHandler, config);
  ctx.has_endpoint = AnyOf(cls.annotations, AnnotationKind::kEndpoint, config);
  if (method) {
    ctx.owner.method = method->name;
    ctx.has_handler = ctx.has_handler ||
                      AnyOf(method->annotations, AnnotationKind::kHandler, config);
    ctx.has_endpoint =
        ctx.has_endpoint ||
        AnyOf(method->annotations, AnnotationKind::kEndpoint, config);
  }
  return ctx;
}

// ---- TypeResolver ----

// A class's table entry also depends on its declared superclass chain
// (resolution and ring cutting), so the whole chain is recorded.
const ClassInfo* TypeResolver::Find(std::string_view name) const {
  const ClassInfo* found = table_.Find(name);
  if (dependencies_ && dependencies_->insert(std::string(name)).second) {
    const ClassInfo* info = found;
    while (info && info->decl.superclass &&
           dependencies_->insert(info->decl.superclass->name).second) {
      info = table_.Find(info->decl.superclass->name);
    }
  }
  return found;
}

TypeEnv TypeResolver::EnvFor(const ClassInfo& cls,
                             const std::vector<ResolvedType>& args) const {
  TypeEnv env;
  const auto& params = cls.decl.type_params;
  const bool bound = args.size() == params.size();
  for (std::size_t i = 0; i < params.size(); ++i) {
    env[params[i]] = bound ? args[i] : ResolvedType::Unknown(params[i]);
  }
  return env;
}

TypeEnv TypeResolver::DeclarationEnv(
    const std::vector<std::string>& type_params) const {
  TypeEnv env;
  for (const std::string& param : type_params) {
    env[param] = ResolvedType::Unknown(param);
  }
  return env;
}

ResolvedType TypeResolver::Resolve(const TypeRef& ref,
                                   const TypeEnv& env) const {
  if (auto it = env.find(ref.name); it != env.end()) {
    ResolvedType bound = it->second;
    bound.array_dims += ref.array_dims;
    return bound;
  }
  if (IsPrimitiveTypeName(ref.name)) {
    ResolvedType prim = ResolvedType::Primitive(ref.name);
    prim.array_dims = ref.array_dims;
    return prim;
  }
  std::vector<ResolvedType> args;
  args.reserve(ref.type_args.size());
  for (const TypeRef& arg : ref.type_args) args.push_back(Resolve(arg, env));
  ResolvedType out = Find(ref.name)
                         ? ResolvedType::Class(ref.name, std::move(args))
                         : ResolvedType{TypeKind::kUnknown, ref.name,
                                        std::move(args), 0};
  out.array_dims = ref.array_dims;
  return out;
}

bool TypeResolver::ClassIsPersonal(std::string_view name) const {
  std::set<std::string, std::less<>> seen;
  std::string current(name);
  while (seen.insert(current).second) {
    const ClassInfo* info = Find(current);
    if (!info) return false;
    if (info->Has(AnnotationKind::kPersonalData)) return true;
    if (!info->resolved_super) return false;
    current = *info->resolved_super;
  }
  return false;
}

bool TypeResolver::IsPersonal(const ResolvedType& type) const {
  return PersonalSubject(type).has_value();
}

std::optional<std::string> TypeResolver::PersonalSubject(
    const ResolvedType& type) const {
  if (type.kind == TypeKind::kClass && ClassIsPersonal(type.name)) {
    return type.name;
  }
  for (const ResolvedType& arg : type.type_args) {
    if (auto subject = PersonalSubject(arg)) return subject;
  }
  return std::nullopt;
}

std::optional<ResolvedType> TypeResolver::FieldType(
    const ResolvedType& receiver, std::string_view field) const {
  if (receiver.kind != TypeKind::kClass || receiver.array_dims != 0) {
    return std::nullopt;
  }
  std::set<std::string, std::less<>> seen;
  ResolvedType current = receiver;
  while (seen.insert(current.name).second) {
    const ClassInfo* info = Find(current.name);
    if (!info) return std::nullopt;
    const TypeEnv env = EnvFor(*info, current.type_args);
    for (const FieldSignature& sig : info->decl.fields) {
      if (sig.name == field) return Resolve(sig.type, env);
    }
    if (!info->resolved_super) return std::nullopt;
    ResolvedType super = Resolve(*info->decl.superclass, env);
    current = ResolvedType::Class(*info->resolved_super, super.type_args);
  }
  return std::nullopt;
}

std::optional<MethodMatch> TypeResolver::FindMethod(
    const ResolvedType& receiver, std::string_view name,
    std::size_t arity) const {
  if (receiver.kind != TypeKind::kClass || receiver.array_dims != 0) {
    return std::nullopt;
  }
  std::set<std::string, std::less<>> seen;
  ResolvedType current = receiver;
  while (seen.insert(current.name).second) {
    const ClassInfo* info = Find(current.name);
    if (!info) return std::nullopt;
    const TypeEnv env = EnvFor(*info, current.type_args);
    for (const MethodSignature& sig : info->decl.methods) {
      if (sig.name == name && sig.arity() == arity) {
        return MethodMatch{info, &sig,
                           sig.return_type ? Resolve(*sig.return_type, env)
                                           : ResolvedType::Void()};
      }
    }
    if (!info->resolved_super) return std::nullopt;
    ResolvedType super = Resolve(*info->decl.superclass, env);
    current = ResolvedType::Class(*info->resolved_super, super.type_args);
  }
  return std::nullopt;
}

bool IsPersonal(const ResolvedType& type, const SymbolTable& table) {
  return TypeResolver(table).IsPersonal(type);
}

// ---- BodyTyper ----

namespace {

void CollectLocalNames(const std::vector<Stmt>& stmts,
                       std::set<std::string, std::less<>>& out) {
  for (const Stmt& stmt : stmts) {
    if (const auto* local = std::get_if<LocalDecl>(&stmt.node)) {
      out.insert(local->name);
    } else if (const auto* branch = std::get_if<If>(&stmt.node)) {
      CollectLocalNames(branch->then_block, out);
      CollectLocalNames(branch->else_block, out);
    } else if (const auto* loop = std::get_if<While>(&stmt.node)) {
      CollectLocalNames(loop->body, out);
    } else if (const auto* block = std::get_if<Block>(&stmt.node)) {
      CollectLocalNames(block->stmts, out);
    }
  }
}

bool IsComparison(std::string_view op) {
  return op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" ||
         op == ">=" || op == "&&" || op == "||";
}

}  // namespace

BodyTyper::BodyTyper(const ClassDecl& cls, const MethodDecl* method,
                     const TypeResolver& resolver)
    : cls_(cls), resolver_(resolver) {
  owner_.class_name = cls.name;
  env_ = resolver.DeclarationEnv(cls.type_params);
  std::vector<ResolvedType> self_args;
  for (const std::string& param : cls.type_params) {
    self_args.push_back(ResolvedType::Unknown(param));
  }
  self_ = ResolvedType::Class(cls.name, std::move(self_args));
  scopes_.emplace_back();
  if (method) {
    owner_.method = method->name;
    CollectLocalNames(method->body, body_locals_);
    for (const Param& param : method->params) {
      Declare(param.name, resolver.Resolve(param.type, env_));
    }
  }
}

void BodyTyper::PushScope() { scopes_.emplace_back(); }
void BodyTyper::PopScope() { scopes_.pop_back(); }

void BodyTyper::Declare(const std::string& name, ResolvedType type) {
  scopes_.back()[name] = std::move(type);
}

std::optional<ResolvedType> BodyTyper::LookupLocal(std::string_view name) const {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    if (auto found = it->find(name); found != it->end()) return found->second;
  }
  return std::nullopt;
}

ResolvedType BodyTyper::TypeOf(const Expr& expr) {
  if (auto it = infos_.find(&expr); it != infos_.end()) return it->second.type;
  ExprInfo info = Compute(expr);
  ResolvedType type = info.type;
  infos_.emplace(&expr, std::move(info));
  return type;
}

ExprInfo BodyTyper::Compute(const Expr& expr) {
  ExprInfo info;
  if (const auto* lit = std::get_if<Literal>(&expr.node)) {
    switch (lit->kind) {
      case LiteralKind::kInt: info.type = ResolvedType::Primitive("int"); break;
      case LiteralKind::kString: info.type = ResolvedType::Primitive("String"); break;
      case LiteralKind::kBool: info.type = ResolvedType::Primitive("boolean"); break;
      case LiteralKind::kNull: info.type = ResolvedType::Primitive("null"); break;
    }
  } else if (const auto* var = std::get_if<VarRef>(&expr.node)) {
    if (auto local = LookupLocal(var->name)) {
      info.type = std::move(*local);
    } else if (auto field = resolver_.FieldType(self_, var->name)) {
      info.type = std::move(*field);
    } else if (resolver_.Find(var->name)) {
      info.type = ResolvedType::Class(var->name);
      info.class_reference = true;
    } else {
      if (body_locals_.count(var->name) != 0) {
        errors_.push_back(Diagnostic{
            Rule::kSema, expr.pos,
            "'" + var->name + "' used before its declaration", "", owner_,
            std::nullopt});
      }
      info.type = ResolvedType::Unknown();
    }
  } else if (const auto* access = std::get_if<FieldAccess>(&expr.node)) {
    const ResolvedType receiver = TypeOf(*access->receiver);
    info.type = resolver_.FieldType(receiver, access->field)
                    .value_or(ResolvedType::Unknown());
  } else if (const auto* call = std::get_if<Call>(&expr.node)) {
    std::optional<MethodMatch> match;
    CallInfo call_info;
    call_info.callee.method = call->method;
    if (call->receiver) {
      const ResolvedType receiver = TypeOf(**call->receiver);
      match = resolver_.FindMethod(receiver, call->method, call->args.size());
      call_info.callee.class_name = receiver.name;
    } else {
      match = resolver_.FindMethod(self_, call->method, call->args.size());
    }
    for (const Expr& arg : call->args) TypeOf(arg);
    if (match) {
      call_info.resolved = true;
      call_info.callee.class_name = match->owner->name;
      call_info.callee_context = ComputeEffectiveContext(
          *match->owner, match->signature, resolver_.table().config());
      info.type = std::move(match->return_type);
    } else {
      info.type = ResolvedType::Unknown();
    }
    info.call = std::move(call_info);
  } else if (const auto* made = std::get_if<New>(&expr.node)) {
    for (const Expr& arg : made->args) TypeOf(arg);
    info.type = resolver_.Resolve(made->type, env_);
  } else if (const auto* cast = std::get_if<Cast>(&expr.node)) {
    TypeOf(*cast->operand);
    info.type = resolver_.Resolve(cast->type, env_);
  } else if (const auto* binary = std::get_if<Binary>(&expr.node)) {
    const ResolvedType lhs = TypeOf(*binary->lhs);
    const ResolvedType rhs = TypeOf(*binary->rhs);
    if (IsComparison(binary->op)) {
      info.type = ResolvedType::Primitive("boolean");
    } else if (lhs == ResolvedType::Primitive("String") ||
               rhs == ResolvedType::Primitive("String")) {
      info.type = ResolvedType::Primitive("String");
    } else {
      info.type = ResolvedType::Primitive("int");
    }
  }
  return info;
}

// ---- TypeMethodBody ----

namespace {

class BodyWalker {
 public:
  BodyWalker(BodyTyper& typer, const TypeResolver& resolver, TypedBody& out)
      : typer_(typer), resolver_(resolver), out_(out) {}

  void Walk(const std::vector<Stmt>& stmts) {
    for (const Stmt& stmt : stmts) Visit(stmt);
  }

 private:
  void Scoped(const std::vector<Stmt>& stmts) {
    typer_.PushScope();
    Walk(stmts);
    typer_.PopScope();
  }

  void Visit(const Stmt& stmt) {
    if (const auto* local = std::get_if<LocalDecl>(&stmt.node)) {
      if (local->init) typer_.TypeOf(*local->init);
      ResolvedType type = resolver_.Resolve(local->type, typer_.env());
      out_.locals.emplace(&stmt, type);
      typer_.Declare(local->name, std::move(type));
    } else if (const auto* assign = std::get_if<Assign>(&stmt.node)) {
      typer_.TypeOf(assign->target);
      typer_.TypeOf(assign->value);
    } else if (const auto* expr = std::get_if<ExprStmt>(&stmt.node)) {
      typer_.TypeOf(expr->expr);
    } else if (const auto* ret = std::get_if<Return>(&stmt.node)) {
      if (ret->value) typer_.TypeOf(*ret->value);
    } else if (const auto* branch = std::get_if<If>(&stmt.node)) {
      typer_.TypeOf(branch->cond);
      Scoped(branch->then_block);
      Scoped(branch->else_block);
    } else if (const auto* loop = std::get_if<While>(&stmt.node)) {
      typer_.TypeOf(loop->cond);
      Scoped(loop->body);
    } else if (const auto* block = std::get_if<Block>(&stmt.node)) {
      Scoped(block->stmts);
    }
  }

  BodyTyper& typer_;
  const TypeResolver& resolver_;
  TypedBody& out_;
};

}  // namespace

TypedBody TypeMethodBody(const ClassDecl& cls, const MethodDecl& method,
                         const TypeResolver& resolver) {
  TypedBody out;
  BodyTyper typer(cls, &method, resolver);
  typer.PushScope();
  BodyWalker(typer, resolver, out).Walk(method.body);
  out.exprs = typer.infos();
  out.errors = std::move(typer.errors());
  return out;
}

}  // namespace pdflow

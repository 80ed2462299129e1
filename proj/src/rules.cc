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

#include "pdflow/rules.h"

#include <algorithm>
#include <map>
#include <utility>

namespace pdflow {
namespace {

enum RuleMask : unsigned { kMaskR2 = 1, kMaskR3 = 2, kMaskSema = 4 };

bool IsSiteKind(const Expr& expr) {
  return std::holds_alternative<New>(expr.node) ||
         std::holds_alternative<Call>(expr.node) ||
         std::holds_alternative<FieldAccess>(expr.node) ||
         std::holds_alternative<VarRef>(expr.node) ||
         std::holds_alternative<Cast>(expr.node);
}

template <typename Fn>
void ForEachChild(const Expr& expr, Fn&& fn) {
  if (const auto* access = std::get_if<FieldAccess>(&expr.node)) {
    fn(*access->receiver);
  } else if (const auto* call = std::get_if<Call>(&expr.node)) {
    if (call->receiver) fn(**call->receiver);
    for (const Expr& arg : call->args) fn(arg);
  } else if (const auto* made = std::get_if<New>(&expr.node)) {
    for (const Expr& arg : made->args) fn(arg);
  } else if (const auto* cast = std::get_if<Cast>(&expr.node)) {
    fn(*cast->operand);
  } else if (const auto* binary = std::get_if<Binary>(&expr.node)) {
    fn(*binary->lhs);
    fn(*binary->rhs);
  }
}

std::string R2Message(const std::string& subject, const MethodRef& owner) {
  return "personal data '" + subject + "' used outside handler context in '" +
         owner.ToString() + "'";
}

class UnitChecker {
 public:
  UnitChecker(const SymbolTable& table, std::set<std::string>* dependencies,
              unsigned rules)
      : resolver_(table, dependencies), config_(table.config()), rules_(rules) {}

  std::vector<Diagnostic> Run(const AstUnit& unit) {
    for (std::size_t i = 0; i < unit.classes.size(); ++i) {
      CheckClass(unit, i);
    }
    return std::move(out_);
  }

 private:
  void Emit(Rule rule, const Position& pos, std::string message,
            std::string subject, MethodRef owner,
            std::optional<MethodRef> callee = std::nullopt) {
    out_.push_back(Diagnostic{rule, pos, std::move(message), std::move(subject),
                              std::move(owner), std::move(callee)});
  }

  void CheckClass(const AstUnit& unit, std::size_t index) {
    const ClassDecl& cls = unit.classes[index];
    RecordDeclarationDependencies(cls);
    if (rules_ & kMaskSema) {
      for (const TableIssue* issue : resolver_.table().IssuesFor(unit.path, index)) {
        Emit(Rule::kSema, cls.pos, issue->message, "", MethodRef{cls.name, {}});
      }
      CheckDuplicateMembers(cls);
    }

    const TypeEnv env = resolver_.DeclarationEnv(cls.type_params);
    const EffectiveContext class_ctx =
        ComputeEffectiveContext(cls, nullptr, config_);
    if ((rules_ & kMaskR2) && !class_ctx.has_handler) {
      for (const FieldDecl& field : cls.fields) {
        if (auto subject = resolver_.PersonalSubject(resolver_.Resolve(field.type, env))) {
          Emit(Rule::kR2, field.pos, R2Message(*subject, class_ctx.owner),
               *subject, class_ctx.owner);
        }
      }
    }

    for (const MethodDecl& method : cls.methods) {
      const EffectiveContext ctx = ComputeEffectiveContext(cls, &method, config_);
      const TypedBody typed = TypeMethodBody(cls, method, resolver_);
      if (rules_ & kMaskSema) {
        out_.insert(out_.end(), typed.errors.begin(), typed.errors.end());
      }
      if ((rules_ & kMaskR2) && !ctx.has_handler) {
        CheckSignatureR2(method, env, ctx);
        for (const Stmt& stmt : method.body) StmtR2(stmt, typed, ctx);
      }
      if ((rules_ & kMaskR3) && ctx.has_handler) {
        for (const Stmt& stmt : method.body) StmtR3(stmt, typed, ctx);
      }
    }
  }

  // Names whose table entries decide this class's own table issues.
  void RecordDeclarationDependencies(const ClassDecl& cls) {
    resolver_.Find(cls.name);
    std::set<std::string> seen{cls.name};
    std::optional<std::string> next;
    if (cls.superclass) next = cls.superclass->name;
    while (next && seen.insert(*next).second) {
      const ClassInfo* info = resolver_.Find(*next);
      if (!info || !info->decl.superclass) break;
      next = info->decl.superclass->name;
    }
  }

  void CheckDuplicateMembers(const ClassDecl& cls) {
    const MethodRef owner{cls.name, {}};
    std::set<std::string> fields;
    for (const FieldDecl& field : cls.fields) {
      if (!fields.insert(field.name).second) {
        Emit(Rule::kSema, field.pos,
             "duplicate field '" + field.name + "' in class '" + cls.name + "'",
             "", owner);
      }
    }
    std::set<std::pair<std::string, std::size_t>> methods;
    for (const MethodDecl& method : cls.methods) {
      if (!methods.emplace(method.name, method.params.size()).second) {
        Emit(Rule::kSema, method.pos,
             "duplicate method '" + method.name + "/" +
                 std::to_string(method.params.size()) + "' in class '" +
                 cls.name + "'",
             "", owner);
      }
      std::set<std::string> params;
      for (const Param& param : method.params) {
        if (!params.insert(param.name).second) {
          Emit(Rule::kSema, param.pos,
               "duplicate parameter '" + param.name + "' in '" + cls.name +
                   "." + method.name + "'",
               "", MethodRef{cls.name, method.name});
        }
      }
    }
  }

  // ---- R2 ----

  void CheckSignatureR2(const MethodDecl& method, const TypeEnv& env,
                        const EffectiveContext& ctx) {
    for (const Param& param : method.params) {
      if (auto subject = resolver_.PersonalSubject(resolver_.Resolve(param.type, env))) {
        Emit(Rule::kR2, param.pos, R2Message(*subject, ctx.owner), *subject,
             ctx.owner);
      }
    }
    if (method.return_type) {
      if (auto subject = resolver_.PersonalSubject(
              resolver_.Resolve(*method.return_type, env))) {
        Emit(Rule::kR2, method.return_type->pos, R2Message(*subject, ctx.owner),
             *subject, ctx.owner);
      }
    }
  }

  void StmtR2(const Stmt& stmt, const TypedBody& typed,
              const EffectiveContext& ctx) {
    if (const auto* local = std::get_if<LocalDecl>(&stmt.node)) {
      auto subject = resolver_.PersonalSubject(typed.locals.at(&stmt));
      if (subject) {
        Emit(Rule::kR2, stmt.pos, R2Message(*subject, ctx.owner), *subject,
             ctx.owner);
      }
      if (local->init) ExprR2(*local->init, subject.has_value(), typed, ctx);
    } else if (const auto* assign = std::get_if<Assign>(&stmt.node)) {
      ExprR2(assign->target, false, typed, ctx);
      ExprR2(assign->value, false, typed, ctx);
    } else if (const auto* expr = std::get_if<ExprStmt>(&stmt.node)) {
      ExprR2(expr->expr, false, typed, ctx);
    } else if (const auto* ret = std::get_if<Return>(&stmt.node)) {
      if (ret->value) ExprR2(*ret->value, false, typed, ctx);
    } else if (const auto* branch = std::get_if<If>(&stmt.node)) {
      ExprR2(branch->cond, false, typed, ctx);
      for (const Stmt& s : branch->then_block) StmtR2(s, typed, ctx);
      for (const Stmt& s : branch->else_block) StmtR2(s, typed, ctx);
    } else if (const auto* loop = std::get_if<While>(&stmt.node)) {
      ExprR2(loop->cond, false, typed, ctx);
      for (const Stmt& s : loop->body) StmtR2(s, typed, ctx);
    } else if (const auto* block = std::get_if<Block>(&stmt.node)) {
      for (const Stmt& s : block->stmts) StmtR2(s, typed, ctx);
    }
  }

  void ExprR2(const Expr& expr, bool parent_personal, const TypedBody& typed,
              const EffectiveContext& ctx) {
    const ExprInfo& info = typed.exprs.at(&expr);
    std::optional<std::string> subject;
    if (IsSiteKind(expr) && !info.class_reference) {
      subject = resolver_.PersonalSubject(info.type);
    }
    if (subject && !parent_personal) {
      Emit(Rule::kR2, expr.pos, R2Message(*subject, ctx.owner), *subject,
           ctx.owner);
    }
    const bool personal = subject.has_value();
    ForEachChild(expr, [&](const Expr& child) {
      ExprR2(child, personal, typed, ctx);
    });
  }

  // ---- R3 ----

  void StmtR3(const Stmt& stmt, const TypedBody& typed,
              const EffectiveContext& ctx) {
    if (const auto* local = std::get_if<LocalDecl>(&stmt.node)) {
      if (local->init) ExprR3(*local->init, typed, ctx);
    } else if (const auto* assign = std::get_if<Assign>(&stmt.node)) {
      ExprR3(assign->target, typed, ctx);
      ExprR3(assign->value, typed, ctx);
    } else if (const auto* expr = std::get_if<ExprStmt>(&stmt.node)) {
      ExprR3(expr->expr, typed, ctx);
    } else if (const auto* ret = std::get_if<Return>(&stmt.node)) {
      if (ret->value) ExprR3(*ret->value, typed, ctx);
    } else if (const auto* branch = std::get_if<If>(&stmt.node)) {
      ExprR3(branch->cond, typed, ctx);
      for (const Stmt& s : branch->then_block) StmtR3(s, typed, ctx);
      for (const Stmt& s : branch->else_block) StmtR3(s, typed, ctx);
    } else if (const auto* loop = std::get_if<While>(&stmt.node)) {
      ExprR3(loop->cond, typed, ctx);
      for (const Stmt& s : loop->body) StmtR3(s, typed, ctx);
    } else if (const auto* block = std::get_if<Block>(&stmt.node)) {
      for (const Stmt& s : block->stmts) StmtR3(s, typed, ctx);
    }
  }

  void ExprR3(const Expr& expr, const TypedBody& typed,
              const EffectiveContext& ctx) {
    if (const auto* call = std::get_if<Call>(&expr.node)) {
      const CallInfo& info = *typed.exprs.at(&expr).call;
      const bool outside =
          !info.resolved ||
          (!info.callee_context.has_handler && !info.callee_context.has_endpoint);
      if (outside) {
        for (const Expr& arg : call->args) {
          const ExprInfo& arg_info = typed.exprs.at(&arg);
          if (arg_info.class_reference) continue;
          if (auto subject = resolver_.PersonalSubject(arg_info.type)) {
            Emit(Rule::kR3, expr.pos,
                 "personal data '" + *subject + "' passed to non-endpoint '" +
                     info.callee.ToString() + "' from handler context",
                 *subject, ctx.owner, info.callee);
            break;
          }
        }
      }
    }
    ForEachChild(expr, [&](const Expr& child) { ExprR3(child, typed, ctx); });
  }

  TypeResolver resolver_;
  const AnalyzerConfig& config_;
  unsigned rules_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> CheckR2(const AstUnit& unit, const SymbolTable& table) {
  std::vector<Diagnostic> out = UnitChecker(table, nullptr, kMaskR2).Run(unit);
  SortAndDedupe(out);
  return out;
}

std::vector<Diagnostic> CheckR3(const AstUnit& unit, const SymbolTable& table) {
  std::vector<Diagnostic> out = UnitChecker(table, nullptr, kMaskR3).Run(unit);
  SortAndDedupe(out);
  return out;
}

std::vector<Diagnostic> CheckFile(const ParseResult& parsed,
                                  const SymbolTable& table,
                                  std::set<std::string>* dependencies) {
  std::vector<Diagnostic> out;
  if (!parsed.ok()) {
    for (const ParseError& error : parsed.errors) {
      out.push_back(Diagnostic{Rule::kSema, error.pos,
                               "syntax error: " + error.message, "", MethodRef{},
                               std::nullopt});
    }
  } else {
    out = UnitChecker(table, dependencies, kMaskR2 | kMaskR3 | kMaskSema)
              .Run(parsed.unit);
  }
  SortAndDedupe(out);
  return out;
}

AnalysisResult Analyze(const std::vector<ParseResult>& units,
                       const std::vector<FileSummary>& summaries,
                       const AnalyzerConfig& config) {
  std::vector<const AstUnit*> clean;
  for (const ParseResult& parsed : units) {
    if (parsed.ok()) clean.push_back(&parsed.unit);
  }
  const SymbolTable table = BuildSymbolTable(clean, summaries, config);

  AnalysisResult result;
  for (const ParseResult& parsed : units) {
    std::vector<Diagnostic> file = CheckFile(parsed, table);
    result.diagnostics.insert(result.diagnostics.end(),
                              std::make_move_iterator(file.begin()),
                              std::make_move_iterator(file.end()));
  }
  result.files_analyzed = units.size();
  result.classes_seen = table.DeclaredCount();
  SortAndDedupe(result.diagnostics);
  return result;
}

}  // namespace pdflow

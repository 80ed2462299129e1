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

#ifndef PDFLOW_AST_H_
#define PDFLOW_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pdflow/source.h"

namespace pdflow {

// Owning pointer with value semantics: deep copy and deep equality.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

struct AnnotationUse {
  std::string name;
  std::string raw_args;  // text between the parentheses, verbatim
  Position pos;
  friend bool operator==(const AnnotationUse&, const AnnotationUse&) = default;
};

struct TypeRef {
  std::string name;
  std::vector<TypeRef> type_args;
  int array_dims = 0;
  Position pos;
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

// Renders e.g. "Map<String, User>[]".
std::string ToString(const TypeRef& type);

// ---- Expressions ----

struct Expr;

enum class LiteralKind { kInt, kString, kBool, kNull };

struct Literal {
  LiteralKind kind;
  std::string text;
  friend bool operator==(const Literal&, const Literal&) = default;
};
struct VarRef {
  std::string name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};
struct FieldAccess {
  Box<Expr> receiver;
  std::string field;
  friend bool operator==(const FieldAccess&, const FieldAccess&) = default;
};
struct Call {
  std::optional<Box<Expr>> receiver;
  std::string method;
  std::vector<Expr> args;
  friend bool operator==(const Call&, const Call&) = default;
};
struct New {
  TypeRef type;
  std::vector<Expr> args;
  friend bool operator==(const New&, const New&) = default;
};
struct Cast {
  TypeRef type;
  Box<Expr> operand;
  friend bool operator==(const Cast&, const Cast&) = default;
};
struct Binary {
  std::string op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};

struct Expr {
  Position pos;
  std::variant<Literal, VarRef, FieldAccess, Call, New, Cast, Binary> node;
  friend bool operator==(const Expr&, const Expr&) = default;
};

// ---- Statements ----

struct Stmt;

struct LocalDecl {
  std::string name;
  TypeRef type;
  std::optional<Expr> init;
  friend bool operator==(const LocalDecl&, const LocalDecl&) = default;
};
struct Assign {
  Expr target;
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};
struct ExprStmt {
  Expr expr;
  friend bool operator==(const ExprStmt&, const ExprStmt&) = default;
};
struct Return {
  std::optional<Expr> value;
  friend bool operator==(const Return&, const Return&) = default;
};
struct If {
  Expr cond;
  std::vector<Stmt> then_block;
  std::vector<Stmt> else_block;
  friend bool operator==(const If&, const If&) = default;
};
struct While {
  Expr cond;
  std::vector<Stmt> body;
  friend bool operator==(const While&, const While&) = default;
};
struct Block {
  std::vector<Stmt> stmts;
  friend bool operator==(const Block&, const Block&) = default;
};

struct Stmt {
  Position pos;
  std::variant<LocalDecl, Assign, ExprStmt, Return, If, While, Block> node;
  friend bool operator==(const Stmt&, const Stmt&) = default;
};

// ---- Declarations ----

struct FieldDecl {
  std::string name;
  TypeRef type;
  std::vector<AnnotationUse> annotations;
  Position pos;  // start of the type, after any annotations
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

struct Param {
  std::string name;
  TypeRef type;
  Position pos;
  friend bool operator==(const Param&, const Param&) = default;
};

struct MethodDecl {
  std::string name;
  std::vector<AnnotationUse> annotations;
  std::vector<Param> params;
  std::optional<TypeRef> return_type;  // nullopt means void
  bool has_body = false;                // false for `T m();`
  std::vector<Stmt> body;
  Position pos;  // start of the return type or `void`
  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct ClassDecl {
  std::string name;
  std::vector<AnnotationUse> annotations;
  std::vector<std::string> type_params;
  std::optional<TypeRef> superclass;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  Position pos;  // the `class` keyword
  friend bool operator==(const ClassDecl&, const ClassDecl&) = default;
};

struct AstUnit {
  std::string path;
  std::uint64_t content_hash = 0;
  std::optional<std::string> module;
  std::vector<ClassDecl> classes;
  friend bool operator==(const AstUnit&, const AstUnit&) = default;
};

}  // namespace pdflow

#endif  // PDFLOW_AST_H_

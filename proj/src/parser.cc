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

#include "pdflow/parser.h"

#include <algorithm>
#include <utility>

#include "pdflow/lexer.h"

namespace pdflow {
namespace {

struct ParseFailure {
  ParseError error;
};

bool StartsPrimary(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent:
    case TokenKind::kIntLit:
    case TokenKind::kStringLit:
    case TokenKind::kTrue:
    case TokenKind::kFalse:
    case TokenKind::kNull:
    case TokenKind::kNew:
    case TokenKind::kLParen:
      return true;
    default:
      return false;
  }
}

bool IsComparisonOp(TokenKind kind) {
  switch (kind) {
    case TokenKind::kEqEq:
    case TokenKind::kNotEq:
    case TokenKind::kLt:
    case TokenKind::kGt:
    case TokenKind::kLtEq:
    case TokenKind::kGtEq:
    case TokenKind::kAndAnd:
    case TokenKind::kOrOr:
      return true;
    default:
      return false;
  }
}

bool IsArithmeticOp(TokenKind kind) {
  switch (kind) {
    case TokenKind::kPlus:
    case TokenKind::kMinus:
    case TokenKind::kStar:
    case TokenKind::kSlash:
    case TokenKind::kPercent:
      return true;
    default:
      return false;
  }
}

Position EndPosition(const SourceFile& source) {
  Position pos{source.path, 1, 1};
  for (char c : source.text) {
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

class Parser {
 public:
  Parser(const SourceFile& source, std::vector<Token> tokens)
      : source_(source), tokens_(std::move(tokens)) {
    end_token_.kind = TokenKind::kEnd;
    end_token_.pos = EndPosition(source);
    end_token_.offset = source.text.size();
  }

  ParseResult Run(std::vector<ParseError> lex_errors) {
    ParseResult result;
    result.errors = std::move(lex_errors);
    result.unit.path = source_.path;
    result.unit.content_hash = source_.content_hash;

    if (At(TokenKind::kModule)) {
      try {
        Next();
        result.unit.module = QualifiedName("module name");
        Expect(TokenKind::kSemi, "';' after module declaration");
      } catch (const ParseFailure& failure) {
        result.errors.push_back(failure.error);
        index_ = Resync(index_, 1);
      }
    }

    while (!At(TokenKind::kEnd)) {
      const std::size_t start = index_;
      try {
        if (!At(TokenKind::kAt) && !At(TokenKind::kClass)) {
          Fail("class declaration");
        }
        result.unit.classes.push_back(ClassDeclaration());
      } catch (const ParseFailure& failure) {
        result.errors.push_back(failure.error);
        index_ = Resync(index_, start + 1);
      }
    }
    return result;
  }

 private:
  // ---- token cursor ----

  const Token& Peek(std::size_t ahead = 0) const {
    const std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : end_token_;
  }
  bool At(TokenKind kind, std::size_t ahead = 0) const {
    return Peek(ahead).kind == kind;
  }
  const Token& Next() {
    const Token& token = Peek();
    if (index_ < tokens_.size()) ++index_;
    return token;
  }
  bool Accept(TokenKind kind) {
    if (!At(kind)) return false;
    Next();
    return true;
  }
  [[noreturn]] void Fail(std::string_view expected) const {
    const Token& token = Peek();
    std::string found = token.kind == TokenKind::kEnd
                            ? std::string("end of file")
                            : "'" + token.text + "'";
    throw ParseFailure{
        {token.pos, "expected " + std::string(expected) + ", found " + found}};
  }
  const Token& Expect(TokenKind kind, std::string_view expected) {
    if (!At(kind)) Fail(expected);
    return Next();
  }

  // First index at or after `from` where a class declaration begins,
  // including any annotations directly preceding the `class` keyword.
  std::size_t Resync(std::size_t from, std::size_t floor) const {
    from = std::max(from, floor);
    std::size_t j = from;
    while (j < tokens_.size() && tokens_[j].kind != TokenKind::kClass) ++j;
    if (j >= tokens_.size()) return tokens_.size();
    std::size_t k = j;
    while (k >= floor + 2) {
      if (tokens_[k - 1].kind == TokenKind::kIdent &&
          tokens_[k - 2].kind == TokenKind::kAt) {
        k -= 2;
        continue;
      }
      if (tokens_[k - 1].kind != TokenKind::kRParen) break;
      std::size_t p = k - 1;
      int depth = 0;
      bool matched = false;
      while (p > floor) {
        if (tokens_[p].kind == TokenKind::kRParen) ++depth;
        if (tokens_[p].kind == TokenKind::kLParen && --depth == 0) {
          matched = true;
          break;
        }
        --p;
      }
      if (!matched || p < floor + 2 ||
          tokens_[p - 1].kind != TokenKind::kIdent ||
          tokens_[p - 2].kind != TokenKind::kAt) {
        break;
      }
      k = p - 2;
    }
    return k;
  }

  std::string QualifiedName(std::string_view what) {
    std::string name = Expect(TokenKind::kIdent, what).text;
    while (At(TokenKind::kDot) && At(TokenKind::kIdent, 1)) {
      Next();
      name += "." + Next().text;
    }
    return name;
  }

  // ---- declarations ----

  std::vector<AnnotationUse> Annotations() {
    std::vector<AnnotationUse> out;
    while (At(TokenKind::kAt)) {
      const Position pos = Next().pos;
      AnnotationUse use;
      use.name = Expect(TokenKind::kIdent, "annotation name").text;
      use.pos = pos;
      if (At(TokenKind::kLParen)) {
        const Token& open = Next();
        int depth = 1;
        while (true) {
          if (At(TokenKind::kEnd)) Fail("')' closing annotation arguments");
          const Token& token = Next();
          if (token.kind == TokenKind::kLParen) ++depth;
          if (token.kind == TokenKind::kRParen && --depth == 0) {
            const std::size_t begin = open.offset + 1;
            use.raw_args = source_.text.substr(begin, token.offset - begin);
            break;
          }
        }
      }
      out.push_back(std::move(use));
    }
    return out;
  }

  ClassDecl ClassDeclaration() {
    ClassDecl decl;
    decl.annotations = Annotations();
    decl.pos = Expect(TokenKind::kClass, "'class'").pos;
    decl.name = Expect(TokenKind::kIdent, "class name").text;
    if (Accept(TokenKind::kLt)) {
      do {
        decl.type_params.push_back(
            Expect(TokenKind::kIdent, "type parameter name").text);
      } while (Accept(TokenKind::kComma));
      Expect(TokenKind::kGt, "'>' closing type parameters");
    }
    if (Accept(TokenKind::kExtends)) decl.superclass = ExpectTypeRef();
    Expect(TokenKind::kLBrace, "'{' opening class body");
    while (!Accept(TokenKind::kRBrace)) {
      std::vector<AnnotationUse> annotations = Annotations();
      if (At(TokenKind::kVoid)) {
        const Position pos = Next().pos;
        decl.methods.push_back(
            MethodRest(std::move(annotations), std::nullopt, pos));
        continue;
      }
      if (!At(TokenKind::kIdent)) Fail("member declaration or '}'");
      TypeRef type = ExpectTypeRef();
      if (At(TokenKind::kIdent) && At(TokenKind::kLParen, 1)) {
        const Position pos = type.pos;
        decl.methods.push_back(MethodRest(std::move(annotations),
                                          std::move(type), pos));
        continue;
      }
      FieldDecl field;
      field.pos = type.pos;
      field.type = std::move(type);
      field.annotations = std::move(annotations);
      field.name = Expect(TokenKind::kIdent, "field name").text;
      Expect(TokenKind::kSemi, "';' after field declaration");
      decl.fields.push_back(std::move(field));
    }
    return decl;
  }

  MethodDecl MethodRest(std::vector<AnnotationUse> annotations,
                        std::optional<TypeRef> return_type, Position pos) {
    MethodDecl method;
    method.annotations = std::move(annotations);
    method.return_type = std::move(return_type);
    method.pos = std::move(pos);
    method.name = Expect(TokenKind::kIdent, "method name").text;
    Expect(TokenKind::kLParen, "'('");
    if (!Accept(TokenKind::kRParen)) {
      do {
        if (!At(TokenKind::kIdent)) Fail("parameter type or ')'");
        Param param;
        param.type = ExpectTypeRef();
        param.pos = param.type.pos;
        param.name = Expect(TokenKind::kIdent, "parameter name").text;
        method.params.push_back(std::move(param));
      } while (Accept(TokenKind::kComma));
      Expect(TokenKind::kRParen, "')' or ','");
    }
    if (Accept(TokenKind::kSemi)) return method;
    if (!At(TokenKind::kLBrace)) Fail("method body or ';'");
    method.has_body = true;
    method.body = BlockBody();
    return method;
  }

  // ---- types ----

  // Restores the cursor and returns nullopt when no type reference starts
  // here; never records errors.
  std::optional<TypeRef> TryTypeRef() {
    const std::size_t saved = index_;
    if (!At(TokenKind::kIdent)) return std::nullopt;
    TypeRef type;
    type.pos = Peek().pos;
    type.name = Next().text;
    while (At(TokenKind::kDot) && At(TokenKind::kIdent, 1)) {
      Next();
      type.name += "." + Next().text;
    }
    if (Accept(TokenKind::kLt)) {
      do {
        std::optional<TypeRef> arg = TryTypeRef();
        if (!arg) {
          index_ = saved;
          return std::nullopt;
        }
        type.type_args.push_back(std::move(*arg));
      } while (Accept(TokenKind::kComma));
      if (!Accept(TokenKind::kGt)) {
        index_ = saved;
        return std::nullopt;
      }
    }
    while (At(TokenKind::kLBracket) && At(TokenKind::kRBracket, 1)) {
      Next();
      Next();
      ++type.array_dims;
    }
    return type;
  }

  TypeRef ExpectTypeRef() {
    const std::size_t saved = index_;
    std::optional<TypeRef> type = TryTypeRef();
    if (type) return std::move(*type);
    // Re-walk to blame the token where the type stopped making sense.
    index_ = saved;
    Expect(TokenKind::kIdent, "type name");
    while (At(TokenKind::kDot) && At(TokenKind::kIdent, 1)) {
      Next();
      Next();
    }
    if (Accept(TokenKind::kLt)) {
      do {
        ExpectTypeRef();
      } while (Accept(TokenKind::kComma));
      Expect(TokenKind::kGt, "'>' closing type arguments");
    }
    Fail("type");
  }

  // ---- statements ----

  std::vector<Stmt> BlockBody() {
    Expect(TokenKind::kLBrace, "'{'");
    std::vector<Stmt> stmts;
    while (!Accept(TokenKind::kRBrace)) {
      if (At(TokenKind::kEnd)) Fail("'}'");
      stmts.push_back(Statement());
    }
    return stmts;
  }

  // Body of an if/while branch: a block, or a single statement.
  std::vector<Stmt> Branch() {
    if (At(TokenKind::kLBrace)) return BlockBody();
    std::vector<Stmt> stmts;
    stmts.push_back(Statement());
    return stmts;
  }

  Stmt Statement() {
    const Position pos = Peek().pos;
    if (At(TokenKind::kLBrace)) return Stmt{pos, Block{BlockBody()}};
    if (Accept(TokenKind::kReturn)) {
      Return ret;
      if (!At(TokenKind::kSemi)) ret.value = Expression();
      Expect(TokenKind::kSemi, "';' after return");
      return Stmt{pos, std::move(ret)};
    }
    if (Accept(TokenKind::kIf)) {
      Expect(TokenKind::kLParen, "'(' after 'if'");
      Expr cond = Expression();
      Expect(TokenKind::kRParen, "')' after condition");
      std::vector<Stmt> then_block = Branch();
      std::vector<Stmt> else_block;
      if (Accept(TokenKind::kElse)) else_block = Branch();
      return Stmt{pos, If{std::move(cond), std::move(then_block),
                          std::move(else_block)}};
    }
    if (Accept(TokenKind::kWhile)) {
      Expect(TokenKind::kLParen, "'(' after 'while'");
      Expr cond = Expression();
      Expect(TokenKind::kRParen, "')' after condition");
      return Stmt{pos, While{std::move(cond), Branch()}};
    }
    {
      const std::size_t saved = index_;
      std::optional<TypeRef> type = TryTypeRef();
      if (type && At(TokenKind::kIdent)) {
        LocalDecl local;
        local.type = std::move(*type);
        local.name = Next().text;
        if (Accept(TokenKind::kAssign)) local.init = Expression();
        Expect(TokenKind::kSemi, "';' after local declaration");
        return Stmt{pos, std::move(local)};
      }
      index_ = saved;
    }
    Expr expr = Expression();
    if (Accept(TokenKind::kAssign)) {
      Expr value = Expression();
      Expect(TokenKind::kSemi, "';' after assignment");
      return Stmt{pos, Assign{std::move(expr), std::move(value)}};
    }
    Expect(TokenKind::kSemi, "';' after expression");
    return Stmt{pos, ExprStmt{std::move(expr)}};
  }

  // ---- expressions ----

  Expr Expression() {
    Expr lhs = Arithmetic();
    while (IsComparisonOp(Peek().kind)) {
      std::string op = Next().text;
      Expr rhs = Arithmetic();
      Position pos = lhs.pos;
      lhs = Expr{std::move(pos),
                 Binary{std::move(op), std::move(lhs), std::move(rhs)}};
    }
    return lhs;
  }

  Expr Arithmetic() {
    Expr lhs = Unary();
    while (IsArithmeticOp(Peek().kind)) {
      std::string op = Next().text;
      Expr rhs = Unary();
      Position pos = lhs.pos;
      lhs = Expr{std::move(pos),
                 Binary{std::move(op), std::move(lhs), std::move(rhs)}};
    }
    return lhs;
  }

  // A cast is `( type )` directly followed by something that starts an
  // operand; otherwise the parenthesis groups an expression.
  Expr Unary() {
    if (At(TokenKind::kLParen)) {
      const std::size_t saved = index_;
      const Position pos = Next().pos;
      std::optional<TypeRef> type = TryTypeRef();
      if (type && Accept(TokenKind::kRParen) && StartsPrimary(Peek().kind)) {
        Expr operand = Unary();
        return Expr{pos, Cast{std::move(*type), std::move(operand)}};
      }
      index_ = saved;
    }
    return Postfix();
  }

  Expr Postfix() {
    Expr expr = Primary();
    while (Accept(TokenKind::kDot)) {
      std::string name = Expect(TokenKind::kIdent, "member name").text;
      Position pos = expr.pos;
      if (At(TokenKind::kLParen)) {
        std::vector<Expr> args = Arguments();
        expr = Expr{std::move(pos), Call{Box<Expr>(std::move(expr)),
                                         std::move(name), std::move(args)}};
      } else {
        expr = Expr{std::move(pos),
                    FieldAccess{std::move(expr), std::move(name)}};
      }
    }
    return expr;
  }

  std::vector<Expr> Arguments() {
    Expect(TokenKind::kLParen, "'('");
    std::vector<Expr> args;
    if (Accept(TokenKind::kRParen)) return args;
    do {
      args.push_back(Expression());
    } while (Accept(TokenKind::kComma));
    Expect(TokenKind::kRParen, "')' or ','");
    return args;
  }

  Expr Primary() {
    const Token& token = Peek();
    const Position pos = token.pos;
    switch (token.kind) {
      case TokenKind::kIntLit:
        return Expr{pos, Literal{LiteralKind::kInt, Next().text}};
      case TokenKind::kStringLit:
        return Expr{pos, Literal{LiteralKind::kString, Next().text}};
      case TokenKind::kTrue:
      case TokenKind::kFalse:
        return Expr{pos, Literal{LiteralKind::kBool, Next().text}};
      case TokenKind::kNull:
        return Expr{pos, Literal{LiteralKind::kNull, Next().text}};
      case TokenKind::kIdent: {
        std::string name = Next().text;
        if (At(TokenKind::kLParen)) {
          std::vector<Expr> args = Arguments();
          return Expr{pos, Call{std::nullopt, std::move(name), std::move(args)}};
        }
        return Expr{pos, VarRef{std::move(name)}};
      }
      case TokenKind::kNew: {
        Next();
        TypeRef type = ExpectTypeRef();
        std::vector<Expr> args = Arguments();
        return Expr{pos, New{std::move(type), std::move(args)}};
      }
      case TokenKind::kLParen: {
        Next();
        Expr inner = Expression();
        Expect(TokenKind::kRParen, "')'");
        inner.pos = pos;
        return inner;
      }
      default:
        Fail("expression");
    }
  }

  const SourceFile& source_;
  std::vector<Token> tokens_;
  Token end_token_;
  std::size_t index_ = 0;
};

}  // namespace

std::string ToString(const TypeRef& type) {
  std::string out = type.name;
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

ParseResult Parse(const SourceFile& source) {
  LexResult lexed = Lex(source);
  std::vector<ParseError> lex_errors;
  lex_errors.reserve(lexed.errors.size());
  for (LexError& error : lexed.errors) {
    lex_errors.push_back({std::move(error.pos), std::move(error.message)});
  }
  return Parser(source, std::move(lexed.tokens)).Run(std::move(lex_errors));
}

}  // namespace pdflow

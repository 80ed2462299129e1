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

#include "pdflow/lexer.h"

#include <array>
#include <utility>

namespace pdflow {
namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 12> kKeywords = {{
    {"class", TokenKind::kClass},
    {"extends", TokenKind::kExtends},
    {"module", TokenKind::kModule},
    {"void", TokenKind::kVoid},
    {"return", TokenKind::kReturn},
    {"if", TokenKind::kIf},
    {"else", TokenKind::kElse},
    {"while", TokenKind::kWhile},
    {"new", TokenKind::kNew},
    {"true", TokenKind::kTrue},
    {"false", TokenKind::kFalse},
    {"null", TokenKind::kNull},
}};

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || IsDigit(c); }

class Lexer {
 public:
  explicit Lexer(const SourceFile& source)
      : path_(source.path), text_(source.text) {}

  LexResult Run() {
    while (offset_ < text_.size()) {
      const char c = text_[offset_];
      if (c == '\n') {
        Advance(1);
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        Advance(1);
        continue;
      }
      if (c == '/' && Peek(1) == '/') {
        while (offset_ < text_.size() && text_[offset_] != '\n') Advance(1);
        continue;
      }
      if (IsIdentStart(c)) {
        LexIdent();
      } else if (IsDigit(c)) {
        std::size_t len = 1;
        while (IsDigit(Peek(len))) ++len;
        Emit(TokenKind::kIntLit, len);
      } else if (c == '"') {
        LexString();
      } else {
        LexPunct();
      }
    }
    return std::move(result_);
  }

 private:
  char Peek(std::size_t ahead) const {
    return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
  }

  void Advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[offset_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++offset_;
    }
  }

  Position Here() const { return Position{path_, line_, column_}; }

  void Emit(TokenKind kind, std::size_t len) {
    result_.tokens.push_back(Token{kind, std::string(text_.substr(offset_, len)),
                                   Here(), offset_, len});
    Advance(len);
  }

  void LexIdent() {
    std::size_t len = 1;
    while (IsIdentChar(Peek(len))) ++len;
    const std::string_view word = text_.substr(offset_, len);
    TokenKind kind = TokenKind::kIdent;
    for (const auto& [spelling, kw] : kKeywords) {
      if (word == spelling) kind = kw;
    }
    Emit(kind, len);
  }

  void LexString() {
    std::size_t len = 1;
    while (true) {
      const char c = Peek(len);
      if (c == '\0' || c == '\n') {
        result_.errors.push_back({Here(), "unterminated string literal"});
        Advance(len);
        return;
      }
      if (c == '\\' && Peek(len + 1) == '"') {
        len += 2;
        continue;
      }
      ++len;
      if (c == '"') break;
    }
    Emit(TokenKind::kStringLit, len);
  }

  void LexPunct() {
    const char c = text_[offset_];
    const char next = Peek(1);
    switch (c) {
      case '@': return Emit(TokenKind::kAt, 1);
      case '(': return Emit(TokenKind::kLParen, 1);
      case ')': return Emit(TokenKind::kRParen, 1);
      case '{': return Emit(TokenKind::kLBrace, 1);
      case '}': return Emit(TokenKind::kRBrace, 1);
      case '[': return Emit(TokenKind::kLBracket, 1);
      case ']': return Emit(TokenKind::kRBracket, 1);
      case ',': return Emit(TokenKind::kComma, 1);
      case ';': return Emit(TokenKind::kSemi, 1);
      case '.': return Emit(TokenKind::kDot, 1);
      case '+': return Emit(TokenKind::kPlus, 1);
      case '-': return Emit(TokenKind::kMinus, 1);
      case '*': return Emit(TokenKind::kStar, 1);
      case '/': return Emit(TokenKind::kSlash, 1);
      case '%': return Emit(TokenKind::kPercent, 1);
      // '>' never fuses with a following '>' so nested generics close cleanly.
      case '<':
        return next == '=' ? Emit(TokenKind::kLtEq, 2) : Emit(TokenKind::kLt, 1);
      case '>':
        return next == '=' ? Emit(TokenKind::kGtEq, 2) : Emit(TokenKind::kGt, 1);
      case '=':
        return next == '=' ? Emit(TokenKind::kEqEq, 2)
                           : Emit(TokenKind::kAssign, 1);
      case '!':
        if (next == '=') return Emit(TokenKind::kNotEq, 2);
        break;
      case '&':
        if (next == '&') return Emit(TokenKind::kAndAnd, 2);
        break;
      case '|':
        if (next == '|') return Emit(TokenKind::kOrOr, 2);
        break;
      default:
        break;
    }
    result_.errors.push_back({Here(), "unexpected character"});
    // Skip a whole UTF-8 sequence so one bad code point yields one error.
    std::size_t len = 1;
    while (offset_ + len < text_.size() &&
           (static_cast<unsigned char>(text_[offset_ + len]) & 0xC0) == 0x80) {
      ++len;
    }
    Advance(len);
  }

  const std::string& path_;
  std::string_view text_;
  std::size_t offset_ = 0;
  int line_ = 1;
  int column_ = 1;
  LexResult result_;
};

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kIntLit: return "integer literal";
    case TokenKind::kStringLit: return "string literal";
    case TokenKind::kClass: return "'class'";
    case TokenKind::kExtends: return "'extends'";
    case TokenKind::kModule: return "'module'";
    case TokenKind::kVoid: return "'void'";
    case TokenKind::kReturn: return "'return'";
    case TokenKind::kIf: return "'if'";
    case TokenKind::kElse: return "'else'";
    case TokenKind::kWhile: return "'while'";
    case TokenKind::kNew: return "'new'";
    case TokenKind::kTrue: return "'true'";
    case TokenKind::kFalse: return "'false'";
    case TokenKind::kNull: return "'null'";
    case TokenKind::kAt: return "'@'";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kLt: return "'<'";
    case TokenKind::kGt: return "'>'";
    case TokenKind::kComma: return "','";
    case TokenKind::kSemi: return "';'";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kAssign: return "'='";
    case TokenKind::kPlus: return "'+'";
    case TokenKind::kMinus: return "'-'";
    case TokenKind::kStar: return "'*'";
    case TokenKind::kSlash: return "'/'";
    case TokenKind::kPercent: return "'%'";
    case TokenKind::kEqEq: return "'=='";
    case TokenKind::kNotEq: return "'!='";
    case TokenKind::kLtEq: return "'<='";
    case TokenKind::kGtEq: return "'>='";
    case TokenKind::kAndAnd: return "'&&'";
    case TokenKind::kOrOr: return "'||'";
    case TokenKind::kEnd: return "end of file";
  }
  return "?";
}

LexResult Lex(const SourceFile& source) { return Lexer(source).Run(); }

std::variant<std::vector<Token>, LexError> Tokenize(const SourceFile& source) {
  LexResult result = Lex(source);
  if (!result.errors.empty()) return result.errors.front();
  return std::move(result.tokens);
}

}  // namespace pdflow

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

#ifndef PDFLOW_LEXER_H_
#define PDFLOW_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pdflow/source.h"

namespace pdflow {

enum class TokenKind {
  kIdent,
  kIntLit,
  kStringLit,
  // Keywords.
  kClass,
  kExtends,
  kModule,
  kVoid,
  kReturn,
  kIf,
  kElse,
  kWhile,
  kNew,
  kTrue,
  kFalse,
  kNull,
  // Punctuation.
  kAt,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kLt,
  kGt,
  kComma,
  kSemi,
  kDot,
  kAssign,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kPercent,
  kEqEq,
  kNotEq,
  kLtEq,
  kGtEq,
  kAndAnd,
  kOrOr,
  // Only produced by the parser's token cursor, never by the lexer.
  kEnd,
};

std::string_view TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  Position pos;
  std::size_t offset = 0;  // byte offset of the first character
  std::size_t length = 0;
};

struct LexError {
  Position pos;
  std::string message;
};

// Lexes the whole file, skipping any character outside the language
// alphabet and recording an error for it.
struct LexResult {
  std::vector<Token> tokens;
  std::vector<LexError> errors;
};
LexResult Lex(const SourceFile& source);

// Strict form: the token list, or the first lexical error.
std::variant<std::vector<Token>, LexError> Tokenize(const SourceFile& source);

}  // namespace pdflow

#endif  // PDFLOW_LEXER_H_

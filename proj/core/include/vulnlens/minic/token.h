// Copyright 2026 The VulnLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vulnlens/minic/source_span.h"

namespace vulnlens::minic {

enum class TokenKind {
  kKeyword,
  kIdentifier,
  kIntLiteral,
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::int64_t value = 0;  // kIntLiteral only
  SourceSpan span;

  bool Is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool IsPunct(std::string_view t) const { return Is(TokenKind::kPunct, t); }
  bool IsKeyword(std::string_view t) const { return Is(TokenKind::kKeyword, t); }
};

std::string_view TokenKindName(TokenKind kind);

// Splits MiniC source into tokens. The trailing kEnd token is not included.
// Throws LexError on any character outside the token grammar.
std::vector<Token> Tokenize(std::string_view source);

bool IsKeyword(std::string_view word);

}  // namespace vulnlens::minic

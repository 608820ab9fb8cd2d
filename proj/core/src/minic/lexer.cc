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

#include <array>
#include <cctype>
#include <limits>

#include "vulnlens/common/error.h"
#include "vulnlens/minic/token.h"

namespace vulnlens::minic {

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {
    "int", "if", "else", "while", "for", "switch", "case", "default", "break", "return"};

// Longest match first.
constexpr std::array<std::string_view, 24> kPunctuation = {
    "<=", ">=", "==", "!=", "&&", "||", "+", "-", "*", "/", "%", "<", ">",
    "=",  "!",  "(",  ")",  "{",  "}",  "[", "]", ";", ",", ":"};

}  // namespace

std::string SourceSpan::ToString() const {
  return std::to_string(start_line) + ":" + std::to_string(start_col) + "-" +
         std::to_string(end_line) + ":" + std::to_string(end_col);
}

SourceSpan Cover(const SourceSpan& a, const SourceSpan& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  SourceSpan out = a;
  if (b.start_line < out.start_line ||
      (b.start_line == out.start_line && b.start_col < out.start_col)) {
    out.start_line = b.start_line;
    out.start_col = b.start_col;
  }
  if (b.end_line > out.end_line || (b.end_line == out.end_line && b.end_col > out.end_col)) {
    out.end_line = b.end_line;
    out.end_col = b.end_col;
  }
  return out;
}

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kIntLiteral: return "integer";
    case TokenKind::kPunct: return "punctuation";
    case TokenKind::kEnd: return "end of input";
  }
  return "?";
}

bool IsKeyword(std::string_view word) {
  for (auto kw : kKeywords) {
    if (kw == word) return true;
  }
  return false;
}

std::vector<Token> Tokenize(std::string_view source) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < source.size()) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    // Line and block comments.
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '*') {
      const int open_line = line;
      const int open_col = col;
      advance(2);
      while (i + 1 < source.size() && !(source[i] == '*' && source[i + 1] == '/')) advance(1);
      if (i + 1 >= source.size()) {
        throw LexError("unterminated comment at " + std::to_string(open_line) + ":" +
                       std::to_string(open_col));
      }
      advance(2);
      continue;
    }

    Token tok;
    tok.span.start_line = line;
    tok.span.start_col = col;
    const std::size_t begin = i;
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '_') {
      while (i < source.size() &&
             (std::isalnum(static_cast<unsigned char>(source[i])) || source[i] == '_')) {
        advance(1);
      }
      tok.text = std::string(source.substr(begin, i - begin));
      tok.kind = IsKeyword(tok.text) ? TokenKind::kKeyword : TokenKind::kIdentifier;
    } else if (std::isdigit(uc)) {
      while (i < source.size() && std::isdigit(static_cast<unsigned char>(source[i]))) {
        advance(1);
      }
      tok.text = std::string(source.substr(begin, i - begin));
      tok.kind = TokenKind::kIntLiteral;
      std::int64_t value = 0;
      for (char d : tok.text) {
        if (value > (std::numeric_limits<std::int64_t>::max() - (d - '0')) / 10) {
          throw LexError("integer literal out of range at " + std::to_string(tok.span.start_line) +
                         ":" + std::to_string(tok.span.start_col));
        }
        value = value * 10 + (d - '0');
      }
      tok.value = value;
    } else {
      bool matched = false;
      for (auto p : kPunctuation) {
        if (source.substr(i, p.size()) == p) {
          tok.text = std::string(p);
          tok.kind = TokenKind::kPunct;
          advance(p.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        throw LexError("unrecognized character '" + std::string(1, c) + "' at " +
                       std::to_string(line) + ":" + std::to_string(col));
      }
    }
    tok.span.end_line = line;
    tok.span.end_col = col - 1;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace vulnlens::minic

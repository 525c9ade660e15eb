// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spre/error.hpp"

namespace spre {

enum class TokenKind {
  LBrack,    // [
  RBrack,    // ]
  Attr,      // [:name:] or [:a,b:]
  LParen,
  RParen,
  Pipe,
  Amp,
  Tilde,
  Star,
  Plus,
  Minus,
  Caret,
  Comma,
  Assign,    // :=
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Number,
  Ident,
  Angle,     // <name>
  Range,     // {m}, {m,}, {m,n}
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  SourceSpan span;
  /// Attr: the comma-separated values, trimmed. Angle: the name between the
  /// brackets. Ident: the identifier. Number and Range: the source text.
  std::string text;
  /// Attr values, in source order.
  std::vector<std::string> values;
  double number = 0.0;
  unsigned range_min = 0;
  bool range_unbounded = false;
  unsigned range_max = 0;
  /// Accepted only by lenient recovery; `note` says what was repaired.
  bool recovered = false;
  std::string note;
};

/// Names accepted inside angle brackets.
bool is_known_angle_name(std::string_view name);

/// Splits a query into tokens, skipping whitespace.
///
/// Throws QueryError for unknown characters, unterminated attribute classes,
/// malformed ranges, and angle names outside the known set. An attribute class
/// closed by `]` without its colon is accepted and marked recovered.
std::vector<Token> tokenize(std::string_view query);

}  // namespace spre

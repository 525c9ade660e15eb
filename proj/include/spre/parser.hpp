// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spre/ast.hpp"
#include "spre/error.hpp"
#include "spre/lexer.hpp"

namespace spre {

/// A syntax error. `expected()` lists what would have been accepted at the
/// offending position.
class SyntaxError : public QueryError {
public:
  SyntaxError(const std::string& what, SourceSpan span, std::vector<std::string> expected)
    : QueryError(what, span), expected_(std::move(expected)) {}

  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::vector<std::string> expected_;
};

struct Diagnostic {
  std::string message;
  SourceSpan span;
};

struct ParseOptions {
  /// Reject input that needs repair instead of repairing it. Lenient mode
  /// accepts `[:name]`, closes parentheses left open at a formula's `]`, and
  /// drops surplus `)` directly before it, reporting each repair.
  bool strict = false;
};

struct ParseResult {
  QueryAst ast;
  std::vector<Diagnostic> warnings;
};

ParseResult parse(const std::vector<Token>& tokens, ParseOptions options = {});

/// tokenize + parse. Repairs are appended to `warnings` when given.
QueryAst parse_query(std::string_view text, std::vector<Diagnostic>* warnings = nullptr,
                     ParseOptions options = {});

/// Free variables, unknown metric functions, wrong arities, and inverted
/// ranges. Empty iff the query is well formed.
std::vector<Diagnostic> check_well_formed(const QueryAst& ast);

/// Rewrites every Range node into alternations, concatenations, and stars.
QueryAst expand_ranges(const QueryAst& ast);

}  // namespace spre

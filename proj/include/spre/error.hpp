// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spre {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A half-open byte range in the query text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Lexical, syntactic, or arity problem in a query string.
class QueryError : public Error {
public:
  QueryError(const std::string& what, SourceSpan span)
    : Error(what + " at offset " + std::to_string(span.begin)), span_(span) {}
  /// A problem that belongs to the query as a whole rather than one position.
  explicit QueryError(const std::string& what) : Error(what) {}

  SourceSpan span() const { return span_; }

private:
  SourceSpan span_;
};

/// Malformed JSON or schema violation in a stream record.
class IngestError : public Error {
public:
  IngestError(const std::string& what, std::size_t line, std::size_t offset)
    : Error("line " + std::to_string(line) + ", byte " + std::to_string(offset) + ": " + what),
      line_(line), offset_(offset) {}

  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

private:
  std::size_t line_;
  std::size_t offset_;
};

/// Failure while evaluating a formula against a frame.
class EvaluationError : public Error {
public:
  using Error::Error;
};

/// Region operations on incompatible operands.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// Automaton construction exceeded its configured limits.
class CompileError : public Error {
public:
  using Error::Error;
};

/// Invalid combination of runtime options.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace spre

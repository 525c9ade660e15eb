// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spre/ast.hpp"
#include "spre/monitor.hpp"
#include "spre/parser.hpp"

namespace spre {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;

/// Distinct leaf formulas of a query, numbered in order of first occurrence.
class SymbolTable {
public:
  /// Id of `formula`, adding it if no structurally equal formula is present.
  SymbolId intern(const FormulaPtr& formula);
  std::optional<SymbolId> find(const SpatialFormula& formula) const;

  std::size_t size() const { return formulas_.size(); }
  const FormulaPtr& operator[](SymbolId id) const { return formulas_[id]; }
  std::span<const FormulaPtr> formulas() const { return formulas_; }

private:
  std::vector<FormulaPtr> formulas_;
  std::vector<std::string> keys_;
};

SymbolTable collect_symbols(const QueryAst& ast);

struct Transition {
  StateId from;
  SymbolId symbol;
  StateId to;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A deterministic automaton over symbol ids. It is run with active-set
/// semantics: a frame enables every symbol whose formula it satisfies, so
/// several edges may fire at once.
class SpatialAutomaton {
public:
  struct Edge {
    SymbolId symbol;
    StateId to;
  };

  SpatialAutomaton() = default;
  SpatialAutomaton(std::size_t symbol_count, StateId start, std::vector<std::vector<Edge>> edges,
                   std::vector<bool> accepting);

  std::size_t state_count() const { return edges_.size(); }
  std::size_t symbol_count() const { return symbol_count_; }
  StateId start() const { return start_; }
  bool accepting(StateId s) const { return accepting_[s]; }
  /// No accepting state is reachable from `s`.
  bool dead(StateId s) const { return dead_[s]; }
  /// Outgoing edges sorted by symbol; at most one per symbol.
  std::span<const Edge> edges(StateId s) const { return edges_[s]; }
  std::vector<Transition> transitions() const;
  std::size_t transition_count() const;

  /// Membership of a word of single symbols.
  bool accepts_symbols(std::span<const SymbolId> word) const;
  /// Membership of a word of frames given by their symbol bitmaps: some
  /// choice of one enabled symbol per frame spells an accepted word.
  bool accepts(std::span<const SymbolBitmap> word) const;

  /// Graphviz rendering; edge labels are the symbol formulas when given.
  std::string to_dot(const SymbolTable* symbols = nullptr) const;

private:
  std::size_t symbol_count_ = 0;
  StateId start_ = 0;
  std::vector<std::vector<Edge>> edges_;
  std::vector<bool> accepting_;
  std::vector<bool> dead_;
};

/// The set of states an automaton occupies while reading frames.
class ActiveSet {
public:
  explicit ActiveSet(const SpatialAutomaton& automaton);

  void reset();
  /// Advances every live state along every edge enabled by `frame`.
  void step(const SymbolBitmap& frame);
  bool any_accepting() const;
  /// No live state remains.
  bool all_dead() const { return states_.empty(); }
  std::span<const StateId> states() const { return states_; }

private:
  const SpatialAutomaton* automaton_;
  std::vector<StateId> states_;
  std::vector<StateId> next_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

struct CompileOptions {
  /// Upper bound on deterministic states before minimization.
  std::size_t max_states = 100000;
};

/// Automaton for L(ast). Ranges are expanded first; the expansion size is
/// checked against the state budget before it is built.
///
/// Throws CompileError when a limit is exceeded.
SpatialAutomaton compile_forward(const QueryAst& ast, const SymbolTable& symbols,
                                 const CompileOptions& options = {});

/// Automaton for the reversal of L(ast).
SpatialAutomaton compile_reverse(const QueryAst& ast, const SymbolTable& symbols,
                                 const CompileOptions& options = {});

/// Longest word of L(ast); nullopt when unbounded. Saturates at the largest
/// representable value.
std::optional<std::uint64_t> horizon(const QueryAst& ast);

struct CompiledQuery {
  std::string text;
  QueryAst ast;
  SymbolTable symbols;
  SpatialAutomaton forward;
  std::optional<SpatialAutomaton> reverse;
  std::optional<std::uint64_t> horizon;
  std::vector<Diagnostic> warnings;
};

/// Parses, checks, and compiles a query. The reverse automaton is built only
/// when `with_reverse` is set.
///
/// Throws QueryError for syntax errors and ill-formed queries, CompileError
/// when a limit is exceeded.
CompiledQuery compile_query(std::string_view text, const CompileOptions& options = {},
                            bool with_reverse = false, ParseOptions parse_options = {});

}  // namespace spre

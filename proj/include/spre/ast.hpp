// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "spre/stream.hpp"

namespace spre {

// Query syntax trees. Nodes are immutable and shared; equality is structural.
//
//   RegexNode       leaf formulas combined with | , juxtaposition, *, {m,n}
//   SpatialFormula  boolean predicate over one frame
//   MetricExpr      real-valued expression over spatial terms
//   SpatialTerm     set-valued expression over object bounding regions

struct SpatialTerm;
struct MetricExpr;
struct SpatialFormula;
struct RegexNode;

using TermPtr = std::shared_ptr<const SpatialTerm>;
using MetricPtr = std::shared_ptr<const MetricExpr>;
using FormulaPtr = std::shared_ptr<const SpatialFormula>;
using RegexPtr = std::shared_ptr<const RegexNode>;

namespace term {
struct Atom { AttributePattern pattern; };
struct Var { std::string name; };
struct Complement { TermPtr inner; };
struct Intersect { TermPtr lhs, rhs; };
struct Union { TermPtr lhs, rhs; };
struct Interior { TermPtr inner; };
struct Closure { TermPtr inner; };
}  // namespace term

struct SpatialTerm {
  std::variant<term::Atom, term::Var, term::Complement, term::Intersect, term::Union,
               term::Interior, term::Closure>
      node;
};

namespace metric {
struct Const { double value; };
struct UnaryFn { std::string name; TermPtr arg; };
struct BinaryFn { std::string name; TermPtr lhs, rhs; };
struct Negate { MetricPtr inner; };
struct Add { MetricPtr lhs, rhs; };
struct Mul { MetricPtr lhs, rhs; };
struct Pow { MetricPtr base; double exponent; };
}  // namespace metric

struct MetricExpr {
  std::variant<metric::Const, metric::UnaryFn, metric::BinaryFn, metric::Negate, metric::Add,
               metric::Mul, metric::Pow>
      node;
};

namespace formula {
struct Atom { AttributePattern pattern; };
struct Exists { std::string var; AttributePattern binder; FormulaPtr body; };
struct NonEmpty { TermPtr term; };
struct SubsetOf { TermPtr lhs, rhs; };
struct Not { FormulaPtr inner; };
struct And { FormulaPtr lhs, rhs; };
struct Or { FormulaPtr lhs, rhs; };
struct LessEq { MetricPtr lhs, rhs; };
}  // namespace formula

struct SpatialFormula {
  std::variant<formula::Atom, formula::Exists, formula::NonEmpty, formula::SubsetOf, formula::Not,
               formula::And, formula::Or, formula::LessEq>
      node;
};

namespace regex {
struct Leaf { FormulaPtr formula; };
struct Epsilon {};
struct Alternation { RegexPtr lhs, rhs; };
struct Concatenation { RegexPtr lhs, rhs; };
struct KleeneStar { RegexPtr inner; };
/// inner{min,max}; an absent max means unbounded.
struct Range { RegexPtr inner; std::uint32_t min; std::optional<std::uint32_t> max; };
}  // namespace regex

struct RegexNode {
  std::variant<regex::Leaf, regex::Epsilon, regex::Alternation, regex::Concatenation,
               regex::KleeneStar, regex::Range>
      node;
};

struct QueryAst {
  RegexPtr root;
};

bool operator==(const SpatialTerm& a, const SpatialTerm& b);
bool operator==(const MetricExpr& a, const MetricExpr& b);
bool operator==(const SpatialFormula& a, const SpatialFormula& b);
bool operator==(const RegexNode& a, const RegexNode& b);
bool operator==(const QueryAst& a, const QueryAst& b);

// Construction helpers.

TermPtr term_atom(AttributePattern pattern);
TermPtr term_var(std::string name);
TermPtr term_complement(TermPtr inner);
TermPtr term_intersect(TermPtr lhs, TermPtr rhs);
TermPtr term_union(TermPtr lhs, TermPtr rhs);
TermPtr term_interior(TermPtr inner);
TermPtr term_closure(TermPtr inner);

MetricPtr metric_const(double value);
MetricPtr metric_call(std::string name, TermPtr arg);
MetricPtr metric_call(std::string name, TermPtr lhs, TermPtr rhs);
MetricPtr metric_negate(MetricPtr inner);
MetricPtr metric_add(MetricPtr lhs, MetricPtr rhs);
MetricPtr metric_mul(MetricPtr lhs, MetricPtr rhs);
MetricPtr metric_pow(MetricPtr base, double exponent);

FormulaPtr formula_atom(AttributePattern pattern);
FormulaPtr formula_exists(std::string var, AttributePattern binder, FormulaPtr body);
FormulaPtr formula_nonempty(TermPtr term);
FormulaPtr formula_subset(TermPtr lhs, TermPtr rhs);
FormulaPtr formula_not(FormulaPtr inner);
FormulaPtr formula_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr formula_or(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr formula_less_eq(MetricPtr lhs, MetricPtr rhs);
/// lhs < rhs, encoded as lhs <= rhs & ~(rhs <= lhs).
FormulaPtr formula_less(MetricPtr lhs, MetricPtr rhs);
/// lhs = rhs, encoded as lhs <= rhs & rhs <= lhs.
FormulaPtr formula_equal(MetricPtr lhs, MetricPtr rhs);

RegexPtr regex_leaf(FormulaPtr formula);
RegexPtr regex_epsilon();
RegexPtr regex_alt(RegexPtr lhs, RegexPtr rhs);
RegexPtr regex_concat(RegexPtr lhs, RegexPtr rhs);
RegexPtr regex_star(RegexPtr inner);
RegexPtr regex_range(RegexPtr inner, std::uint32_t min, std::optional<std::uint32_t> max);

// Canonical concrete syntax. Parsing the output yields a structurally equal
// tree.

std::string to_string(const SpatialTerm& t);
std::string to_string(const MetricExpr& m);
std::string to_string(const SpatialFormula& f);
std::string to_string(const RegexNode& r);
std::string to_string(const QueryAst& q);

/// Shortest decimal spelling of a double that reads back exactly.
std::string format_number(double value);

}  // namespace spre

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/ast.hpp"

#include <charconv>
#include <cmath>

namespace spre {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

template <class T>
bool same(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// Two variants of the same alternative; `eq` compares their payloads.
template <class V, class Eq>
bool variant_equal(const V& a, const V& b, Eq eq) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return eq(x, std::get<T>(b));
      },
      a);
}

// Numbers compare bitwise-equal in value; NaN is equal to itself so that
// structural equality stays reflexive.
bool same_number(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

}  // namespace

bool operator==(const SpatialTerm& a, const SpatialTerm& b) {
  return variant_equal(a.node, b.node, Overload{
      [](const term::Atom& x, const term::Atom& y) { return x.pattern == y.pattern; },
      [](const term::Var& x, const term::Var& y) { return x.name == y.name; },
      [](const term::Complement& x, const term::Complement& y) { return same(x.inner, y.inner); },
      [](const term::Intersect& x, const term::Intersect& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const term::Union& x, const term::Union& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const term::Interior& x, const term::Interior& y) { return same(x.inner, y.inner); },
      [](const term::Closure& x, const term::Closure& y) { return same(x.inner, y.inner); },
      [](const auto&, const auto&) { return false; },
  });
}

bool operator==(const MetricExpr& a, const MetricExpr& b) {
  return variant_equal(a.node, b.node, Overload{
      [](const metric::Const& x, const metric::Const& y) { return same_number(x.value, y.value); },
      [](const metric::UnaryFn& x, const metric::UnaryFn& y) {
        return x.name == y.name && same(x.arg, y.arg);
      },
      [](const metric::BinaryFn& x, const metric::BinaryFn& y) {
        return x.name == y.name && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const metric::Negate& x, const metric::Negate& y) { return same(x.inner, y.inner); },
      [](const metric::Add& x, const metric::Add& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const metric::Mul& x, const metric::Mul& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const metric::Pow& x, const metric::Pow& y) {
        return same_number(x.exponent, y.exponent) && same(x.base, y.base);
      },
      [](const auto&, const auto&) { return false; },
  });
}

bool operator==(const SpatialFormula& a, const SpatialFormula& b) {
  return variant_equal(a.node, b.node, Overload{
      [](const formula::Atom& x, const formula::Atom& y) { return x.pattern == y.pattern; },
      [](const formula::Exists& x, const formula::Exists& y) {
        return x.var == y.var && x.binder == y.binder && same(x.body, y.body);
      },
      [](const formula::NonEmpty& x, const formula::NonEmpty& y) { return same(x.term, y.term); },
      [](const formula::SubsetOf& x, const formula::SubsetOf& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const formula::Not& x, const formula::Not& y) { return same(x.inner, y.inner); },
      [](const formula::And& x, const formula::And& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const formula::Or& x, const formula::Or& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const formula::LessEq& x, const formula::LessEq& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const auto&, const auto&) { return false; },
  });
}

bool operator==(const RegexNode& a, const RegexNode& b) {
  return variant_equal(a.node, b.node, Overload{
      [](const regex::Leaf& x, const regex::Leaf& y) { return same(x.formula, y.formula); },
      [](const regex::Epsilon&, const regex::Epsilon&) { return true; },
      [](const regex::Alternation& x, const regex::Alternation& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const regex::Concatenation& x, const regex::Concatenation& y) {
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
      },
      [](const regex::KleeneStar& x, const regex::KleeneStar& y) { return same(x.inner, y.inner); },
      [](const regex::Range& x, const regex::Range& y) {
        return x.min == y.min && x.max == y.max && same(x.inner, y.inner);
      },
      [](const auto&, const auto&) { return false; },
  });
}

bool operator==(const QueryAst& a, const QueryAst& b) { return same(a.root, b.root); }

// Builders.

namespace {
template <class Node, class Alt>
std::shared_ptr<const Node> make(Alt alt) {
  return std::make_shared<const Node>(Node{std::move(alt)});
}
}  // namespace

TermPtr term_atom(AttributePattern pattern) { return make<SpatialTerm>(term::Atom{std::move(pattern)}); }
TermPtr term_var(std::string name) { return make<SpatialTerm>(term::Var{std::move(name)}); }
TermPtr term_complement(TermPtr inner) { return make<SpatialTerm>(term::Complement{std::move(inner)}); }
TermPtr term_intersect(TermPtr lhs, TermPtr rhs) {
  return make<SpatialTerm>(term::Intersect{std::move(lhs), std::move(rhs)});
}
TermPtr term_union(TermPtr lhs, TermPtr rhs) {
  return make<SpatialTerm>(term::Union{std::move(lhs), std::move(rhs)});
}
TermPtr term_interior(TermPtr inner) { return make<SpatialTerm>(term::Interior{std::move(inner)}); }
TermPtr term_closure(TermPtr inner) { return make<SpatialTerm>(term::Closure{std::move(inner)}); }

MetricPtr metric_const(double value) { return make<MetricExpr>(metric::Const{value}); }
MetricPtr metric_call(std::string name, TermPtr arg) {
  return make<MetricExpr>(metric::UnaryFn{std::move(name), std::move(arg)});
}
MetricPtr metric_call(std::string name, TermPtr lhs, TermPtr rhs) {
  return make<MetricExpr>(metric::BinaryFn{std::move(name), std::move(lhs), std::move(rhs)});
}
MetricPtr metric_negate(MetricPtr inner) { return make<MetricExpr>(metric::Negate{std::move(inner)}); }
MetricPtr metric_add(MetricPtr lhs, MetricPtr rhs) {
  return make<MetricExpr>(metric::Add{std::move(lhs), std::move(rhs)});
}
MetricPtr metric_mul(MetricPtr lhs, MetricPtr rhs) {
  return make<MetricExpr>(metric::Mul{std::move(lhs), std::move(rhs)});
}
MetricPtr metric_pow(MetricPtr base, double exponent) {
  return make<MetricExpr>(metric::Pow{std::move(base), exponent});
}

FormulaPtr formula_atom(AttributePattern pattern) {
  return make<SpatialFormula>(formula::Atom{std::move(pattern)});
}
FormulaPtr formula_exists(std::string var, AttributePattern binder, FormulaPtr body) {
  return make<SpatialFormula>(formula::Exists{std::move(var), std::move(binder), std::move(body)});
}
FormulaPtr formula_nonempty(TermPtr term) { return make<SpatialFormula>(formula::NonEmpty{std::move(term)}); }
FormulaPtr formula_subset(TermPtr lhs, TermPtr rhs) {
  return make<SpatialFormula>(formula::SubsetOf{std::move(lhs), std::move(rhs)});
}
FormulaPtr formula_not(FormulaPtr inner) { return make<SpatialFormula>(formula::Not{std::move(inner)}); }
FormulaPtr formula_and(FormulaPtr lhs, FormulaPtr rhs) {
  return make<SpatialFormula>(formula::And{std::move(lhs), std::move(rhs)});
}
FormulaPtr formula_or(FormulaPtr lhs, FormulaPtr rhs) {
  return make<SpatialFormula>(formula::Or{std::move(lhs), std::move(rhs)});
}
FormulaPtr formula_less_eq(MetricPtr lhs, MetricPtr rhs) {
  return make<SpatialFormula>(formula::LessEq{std::move(lhs), std::move(rhs)});
}
FormulaPtr formula_less(MetricPtr lhs, MetricPtr rhs) {
  return formula_and(formula_less_eq(lhs, rhs), formula_not(formula_less_eq(rhs, lhs)));
}
FormulaPtr formula_equal(MetricPtr lhs, MetricPtr rhs) {
  return formula_and(formula_less_eq(lhs, rhs), formula_less_eq(rhs, lhs));
}

RegexPtr regex_leaf(FormulaPtr formula) { return make<RegexNode>(regex::Leaf{std::move(formula)}); }
RegexPtr regex_epsilon() { return make<RegexNode>(regex::Epsilon{}); }
RegexPtr regex_alt(RegexPtr lhs, RegexPtr rhs) {
  return make<RegexNode>(regex::Alternation{std::move(lhs), std::move(rhs)});
}
RegexPtr regex_concat(RegexPtr lhs, RegexPtr rhs) {
  return make<RegexNode>(regex::Concatenation{std::move(lhs), std::move(rhs)});
}
RegexPtr regex_star(RegexPtr inner) { return make<RegexNode>(regex::KleeneStar{std::move(inner)}); }
RegexPtr regex_range(RegexPtr inner, std::uint32_t min, std::optional<std::uint32_t> max) {
  return make<RegexNode>(regex::Range{std::move(inner), min, max});
}

// Printing. Each node has a binding level; a child is parenthesized when its
// level is below the level its slot requires. Binary operators are
// left-associative, so right operands need one level more than the operator.

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string attr_class(const AttributePattern& p) {
  std::string out = "[:";
  for (std::size_t i = 0; i < p.values().size(); ++i) {
    if (i) out += ',';
    out += p.values()[i];
  }
  return out + ":]";
}

std::string wrap(std::string s, bool parens) { return parens ? "(" + s + ")" : s; }

enum TermLevel { kTermUnion = 1, kTermIntersect = 2, kTermUnary = 3 };

int level(const SpatialTerm& t) {
  if (std::holds_alternative<term::Union>(t.node)) return kTermUnion;
  if (std::holds_alternative<term::Intersect>(t.node)) return kTermIntersect;
  return kTermUnary;
}

std::string print(const SpatialTerm& t, int need) {
  std::string s = std::visit(Overload{
      [](const term::Atom& x) { return attr_class(x.pattern); },
      [](const term::Var& x) { return x.name; },
      [](const term::Complement& x) { return "~" + print(*x.inner, kTermUnary); },
      [](const term::Intersect& x) {
        return print(*x.lhs, kTermIntersect) + " & " + print(*x.rhs, kTermIntersect + 1);
      },
      [](const term::Union& x) {
        return print(*x.lhs, kTermUnion) + " | " + print(*x.rhs, kTermUnion + 1);
      },
      [](const term::Interior& x) { return "<interior>(" + print(*x.inner, 0) + ")"; },
      [](const term::Closure& x) { return "<closure>(" + print(*x.inner, 0) + ")"; },
  }, t.node);
  return wrap(std::move(s), level(t) < need);
}

enum MetricLevel { kMetricAdd = 1, kMetricMul = 2, kMetricNeg = 3, kMetricPow = 4, kMetricAtom = 5 };

int level(const MetricExpr& m) {
  return std::visit(Overload{
      [](const metric::Add&) { return int(kMetricAdd); },
      [](const metric::Mul&) { return int(kMetricMul); },
      [](const metric::Negate&) { return int(kMetricNeg); },
      [](const metric::Pow&) { return int(kMetricPow); },
      // Negative literals read back as negations, so they bind like one.
      [](const metric::Const& c) { return std::signbit(c.value) ? int(kMetricNeg) : int(kMetricAtom); },
      [](const auto&) { return int(kMetricAtom); },
  }, m.node);
}

std::string print(const MetricExpr& m, int need) {
  std::string s = std::visit(Overload{
      [](const metric::Const& x) { return format_number(x.value); },
      [](const metric::UnaryFn& x) { return "<" + x.name + ">(" + print(*x.arg, 0) + ")"; },
      [](const metric::BinaryFn& x) {
        return "<" + x.name + ">(" + print(*x.lhs, 0) + ", " + print(*x.rhs, 0) + ")";
      },
      [](const metric::Negate& x) { return "-" + print(*x.inner, kMetricNeg); },
      [](const metric::Add& x) {
        return print(*x.lhs, kMetricAdd) + " + " + print(*x.rhs, kMetricAdd + 1);
      },
      [](const metric::Mul& x) {
        return print(*x.lhs, kMetricMul) + " * " + print(*x.rhs, kMetricMul + 1);
      },
      [](const metric::Pow& x) { return print(*x.base, kMetricAtom) + "^" + format_number(x.exponent); },
  }, m.node);
  return wrap(std::move(s), level(m) < need);
}

enum FormulaLevel { kFormulaOr = 1, kFormulaAnd = 2, kFormulaRel = 3, kFormulaUnary = 4 };

// Recognizes the encodings produced by formula_less / formula_equal.
enum class Relation { None, Less, Equal };

struct RelationView {
  Relation kind = Relation::None;
  const MetricExpr* lhs = nullptr;
  const MetricExpr* rhs = nullptr;
};

RelationView as_relation(const SpatialFormula& f) {
  const auto* conj = std::get_if<formula::And>(&f.node);
  if (!conj) return {};
  const auto* first = std::get_if<formula::LessEq>(&conj->lhs->node);
  if (!first) return {};
  const MetricExpr& a = *first->lhs;
  const MetricExpr& b = *first->rhs;
  if (const auto* second = std::get_if<formula::LessEq>(&conj->rhs->node)) {
    if (*second->lhs == b && *second->rhs == a) return {Relation::Equal, &a, &b};
    return {};
  }
  if (const auto* neg = std::get_if<formula::Not>(&conj->rhs->node)) {
    if (const auto* second = std::get_if<formula::LessEq>(&neg->inner->node)) {
      if (*second->lhs == b && *second->rhs == a) return {Relation::Less, &a, &b};
    }
  }
  return {};
}

int level(const SpatialFormula& f) {
  if (as_relation(f).kind != Relation::None) return kFormulaRel;
  return std::visit(Overload{
      [](const formula::Or&) { return int(kFormulaOr); },
      [](const formula::And&) { return int(kFormulaAnd); },
      [](const formula::LessEq&) { return int(kFormulaRel); },
      [](const auto&) { return int(kFormulaUnary); },
  }, f.node);
}

std::string print(const SpatialFormula& f, int need) {
  std::string s;
  if (RelationView rel = as_relation(f); rel.kind != Relation::None) {
    s = print(*rel.lhs, kMetricAdd) + (rel.kind == Relation::Less ? " < " : " = ") +
        print(*rel.rhs, kMetricAdd);
  } else {
    s = std::visit(Overload{
        [](const formula::Atom& x) { return attr_class(x.pattern); },
        [](const formula::Exists& x) {
          return "<exists>(" + x.var + " := " + attr_class(x.binder) + ")(" + print(*x.body, 0) + ")";
        },
        [](const formula::NonEmpty& x) { return "<nonempty>(" + print(*x.term, 0) + ")"; },
        [](const formula::SubsetOf& x) {
          return "<subset>(" + print(*x.lhs, 0) + ", " + print(*x.rhs, 0) + ")";
        },
        [](const formula::Not& x) { return "~" + print(*x.inner, kFormulaUnary); },
        [](const formula::And& x) {
          return print(*x.lhs, kFormulaAnd) + " & " + print(*x.rhs, kFormulaAnd + 1);
        },
        [](const formula::Or& x) {
          return print(*x.lhs, kFormulaOr) + " | " + print(*x.rhs, kFormulaOr + 1);
        },
        [](const formula::LessEq& x) {
          return print(*x.lhs, kMetricAdd) + " <= " + print(*x.rhs, kMetricAdd);
        },
    }, f.node);
  }
  return wrap(std::move(s), level(f) < need);
}

enum RegexLevel { kRegexAlt = 1, kRegexConcat = 2, kRegexPostfix = 3 };

int level(const RegexNode& r) {
  if (std::holds_alternative<regex::Alternation>(r.node)) return kRegexAlt;
  if (std::holds_alternative<regex::Concatenation>(r.node)) return kRegexConcat;
  return kRegexPostfix;
}

std::string print(const RegexNode& r, int need) {
  std::string s = std::visit(Overload{
      [](const regex::Leaf& x) { return "[" + print(*x.formula, 0) + "]"; },
      [](const regex::Epsilon&) { return std::string("()"); },
      [](const regex::Alternation& x) {
        return print(*x.lhs, kRegexAlt) + " | " + print(*x.rhs, kRegexAlt + 1);
      },
      [](const regex::Concatenation& x) {
        return print(*x.lhs, kRegexConcat) + " " + print(*x.rhs, kRegexConcat + 1);
      },
      [](const regex::KleeneStar& x) { return print(*x.inner, kRegexPostfix) + "*"; },
      [](const regex::Range& x) {
        std::string out = print(*x.inner, kRegexPostfix) + "{" + std::to_string(x.min);
        if (!x.max) {
          out += ",";
        } else if (*x.max != x.min) {
          out += "," + std::to_string(*x.max);
        }
        return out + "}";
      },
  }, r.node);
  return wrap(std::move(s), level(r) < need);
}

}  // namespace

std::string to_string(const SpatialTerm& t) { return print(t, 0); }
std::string to_string(const MetricExpr& m) { return print(m, 0); }
std::string to_string(const SpatialFormula& f) { return print(f, 0); }
std::string to_string(const RegexNode& r) { return print(r, 0); }
std::string to_string(const QueryAst& q) { return q.root ? print(*q.root, 0) : std::string(); }

}  // namespace spre

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>

#include "spre/parser.hpp"
#include "spre/region.hpp"

namespace spre {

namespace {

class WellFormedness {
public:
  std::vector<Diagnostic> run(const RegexNode& r) {
    regex(r);
    return std::move(out_);
  }

private:
  void report(std::string message) { out_.push_back(Diagnostic{std::move(message), {}}); }

  void regex(const RegexNode& r) {
    std::visit([this](const auto& n) { visit(n); }, r.node);
  }
  void visit(const regex::Leaf& n) { formula(*n.formula); }
  void visit(const regex::Epsilon&) {}
  void visit(const regex::Alternation& n) { regex(*n.lhs); regex(*n.rhs); }
  void visit(const regex::Concatenation& n) { regex(*n.lhs); regex(*n.rhs); }
  void visit(const regex::KleeneStar& n) { regex(*n.inner); }
  void visit(const regex::Range& n) {
    if (n.max && *n.max < n.min) {
      report("repetition range {" + std::to_string(n.min) + "," + std::to_string(*n.max) +
             "} has max below min");
    }
    regex(*n.inner);
  }

  void formula(const SpatialFormula& f) {
    std::visit([this](const auto& n) { visit(n); }, f.node);
  }
  void visit(const formula::Atom&) {}
  void visit(const formula::Exists& n) {
    scope_.push_back(n.var);
    formula(*n.body);
    scope_.pop_back();
  }
  void visit(const formula::NonEmpty& n) { term(*n.term); }
  void visit(const formula::SubsetOf& n) { term(*n.lhs); term(*n.rhs); }
  void visit(const formula::Not& n) { formula(*n.inner); }
  void visit(const formula::And& n) { formula(*n.lhs); formula(*n.rhs); }
  void visit(const formula::Or& n) { formula(*n.lhs); formula(*n.rhs); }
  void visit(const formula::LessEq& n) { metric(*n.lhs); metric(*n.rhs); }

  void metric(const MetricExpr& m) {
    std::visit([this](const auto& n) { visit(n); }, m.node);
  }
  void visit(const metric::Const&) {}
  void visit(const metric::UnaryFn& n) {
    function(n.name, 1);
    term(*n.arg);
  }
  void visit(const metric::BinaryFn& n) {
    function(n.name, 2);
    term(*n.lhs);
    term(*n.rhs);
  }
  void visit(const metric::Negate& n) { metric(*n.inner); }
  void visit(const metric::Add& n) { metric(*n.lhs); metric(*n.rhs); }
  void visit(const metric::Mul& n) { metric(*n.lhs); metric(*n.rhs); }
  void visit(const metric::Pow& n) { metric(*n.base); }

  void function(const std::string& name, int used) {
    auto arity = metric_arity(name);
    if (!arity) {
      report("unknown metric function '<" + name + ">'");
    } else if (*arity != used) {
      report("'<" + name + ">' takes " + std::to_string(*arity) + " argument" + (*arity == 1 ? "" : "s") +
             ", used with " + std::to_string(used));
    }
  }

  void term(const SpatialTerm& t) {
    std::visit([this](const auto& n) { visit(n); }, t.node);
  }
  void visit(const term::Atom&) {}
  void visit(const term::Var& n) {
    if (std::find(scope_.begin(), scope_.end(), n.name) == scope_.end()) {
      report("free variable '" + n.name + "'");
    }
  }
  void visit(const term::Complement& n) { term(*n.inner); }
  void visit(const term::Intersect& n) { term(*n.lhs); term(*n.rhs); }
  void visit(const term::Union& n) { term(*n.lhs); term(*n.rhs); }
  void visit(const term::Interior& n) { term(*n.inner); }
  void visit(const term::Closure& n) { term(*n.inner); }

  std::vector<std::string> scope_;
  std::vector<Diagnostic> out_;
};

// k copies of q, nested to the right; k = 0 is the empty word.
RegexPtr repeat(const RegexPtr& q, std::uint32_t k) {
  if (k == 0) return regex_epsilon();
  RegexPtr r = q;
  for (std::uint32_t i = 1; i < k; ++i) r = regex_concat(q, r);
  return r;
}

RegexPtr expand(const RegexPtr& r) {
  return std::visit(
      [&](const auto& n) -> RegexPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, regex::Alternation>) {
          return regex_alt(expand(n.lhs), expand(n.rhs));
        } else if constexpr (std::is_same_v<T, regex::Concatenation>) {
          return regex_concat(expand(n.lhs), expand(n.rhs));
        } else if constexpr (std::is_same_v<T, regex::KleeneStar>) {
          return regex_star(expand(n.inner));
        } else if constexpr (std::is_same_v<T, regex::Range>) {
          RegexPtr q = expand(n.inner);
          if (!n.max) {
            RegexPtr tail = regex_star(q);
            for (std::uint32_t i = 0; i < n.min; ++i) tail = regex_concat(q, tail);
            return tail;
          }
          RegexPtr out = repeat(q, n.min);
          for (std::uint64_t k = std::uint64_t(n.min) + 1; k <= *n.max; ++k) {
            out = regex_alt(out, repeat(q, static_cast<std::uint32_t>(k)));
          }
          return out;
        } else {
          return r;
        }
      },
      r->node);
}

}  // namespace

std::vector<Diagnostic> check_well_formed(const QueryAst& ast) {
  if (!ast.root) return {Diagnostic{"empty query", {}}};
  return WellFormedness().run(*ast.root);
}

QueryAst expand_ranges(const QueryAst& ast) {
  if (!ast.root) return ast;
  return QueryAst{expand(ast.root)};
}

}  // namespace spre

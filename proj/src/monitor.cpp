// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/monitor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace spre {

const ObjectAnnotation* LookupTable::find(std::string_view name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  return nullptr;
}

LookupTable LookupTable::with(std::string name, const ObjectAnnotation* object) const {
  LookupTable out = *this;
  out.bindings_.emplace_back(std::move(name), object);
  return out;
}

bool SymbolBitmap::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t SymbolBitmap::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_product(std::size_t a, std::size_t b, const std::string& what) {
  if (a != 0 && b > kCandidateCap / a) {
    throw EvaluationError("candidate set of " + what + " exceeds " + std::to_string(kCandidateCap) +
                          " (" + std::to_string(a) + " x " + std::to_string(b) + ")");
  }
}

class Evaluator {
public:
  explicit Evaluator(const Scene& scene) : scene_(scene) {}

  std::vector<Region> term(const SpatialTerm& t, const LookupTable& z) const {
    std::vector<Region> out = std::visit([&](const auto& n) { return eval(n, t, z); }, t.node);
    sort_unique(out);
    return out;
  }

  std::vector<double> metric(const MetricExpr& m, const LookupTable& z) const {
    std::vector<double> out = std::visit([&](const auto& n) { return eval(n, m, z); }, m.node);
    out.erase(std::remove_if(out.begin(), out.end(), [](double v) { return std::isnan(v); }), out.end());
    sort_unique(out);
    return out;
  }

  bool holds(const SpatialFormula& f, const LookupTable& z) const {
    return std::visit([&](const auto& n) { return eval(n, z); }, f.node);
  }

  const ObjectAnnotation* witness(const formula::Exists& n, const LookupTable& z) const {
    for (const auto& o : scene_.objects) {
      if (n.binder.matches(o.attributes) && holds(*n.body, z.with(n.var, &o))) return &o;
    }
    return nullptr;
  }

private:
  Region region(const ObjectAnnotation& o) const { return region_of(o, *scene_.channel); }

  // Terms.

  std::vector<Region> eval(const term::Atom& n, const SpatialTerm&, const LookupTable&) const {
    std::vector<Region> out;
    for (const auto& o : scene_.objects) {
      if (n.pattern.matches(o.attributes)) out.push_back(region(o));
    }
    return out;
  }

  std::vector<Region> eval(const term::Var& n, const SpatialTerm&, const LookupTable& z) const {
    const ObjectAnnotation* o = z.find(n.name);
    if (!o) throw EvaluationError("unbound variable '" + n.name + "'");
    return {region(*o)};
  }

  template <class F>
  std::vector<Region> map(const SpatialTerm& inner, const LookupTable& z, F f) const {
    std::vector<Region> out;
    for (const auto& r : term(inner, z)) out.push_back(f(r));
    return out;
  }

  template <class F>
  std::vector<Region> product(const SpatialTerm& self, const SpatialTerm& lhs, const SpatialTerm& rhs,
                              const LookupTable& z, F f) const {
    auto a = term(lhs, z);
    auto b = term(rhs, z);
    check_product(a.size(), b.size(), "'" + to_string(self) + "'");
    std::vector<Region> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
      for (const auto& y : b) out.push_back(f(x, y));
    }
    return out;
  }

  std::vector<Region> eval(const term::Complement& n, const SpatialTerm&, const LookupTable& z) const {
    return map(*n.inner, z, [](const Region& r) { return complement(r); });
  }
  std::vector<Region> eval(const term::Interior& n, const SpatialTerm&, const LookupTable& z) const {
    return map(*n.inner, z, [](const Region& r) { return interior(r); });
  }
  std::vector<Region> eval(const term::Closure& n, const SpatialTerm&, const LookupTable& z) const {
    return map(*n.inner, z, [](const Region& r) { return closure(r); });
  }
  std::vector<Region> eval(const term::Intersect& n, const SpatialTerm& self, const LookupTable& z) const {
    return product(self, *n.lhs, *n.rhs, z, [](const Region& a, const Region& b) { return intersect(a, b); });
  }
  std::vector<Region> eval(const term::Union& n, const SpatialTerm& self, const LookupTable& z) const {
    return product(self, *n.lhs, *n.rhs, z, [](const Region& a, const Region& b) { return unite(a, b); });
  }

  // Metrics.

  std::vector<double> eval(const metric::Const& n, const MetricExpr&, const LookupTable&) const {
    return {n.value};
  }

  std::vector<double> eval(const metric::UnaryFn& n, const MetricExpr&, const LookupTable& z) const {
    std::vector<double> out;
    for (const auto& r : term(*n.arg, z)) {
      try {
        out.push_back(metric_fn(n.name, std::span<const Region>(&r, 1)));
      } catch (const MetricDomainError&) {
        // No value for this choice.
      }
    }
    return out;
  }

  std::vector<double> eval(const metric::BinaryFn& n, const MetricExpr& self, const LookupTable& z) const {
    auto a = term(*n.lhs, z);
    auto b = term(*n.rhs, z);
    check_product(a.size(), b.size(), "'" + to_string(self) + "'");
    std::vector<double> out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        const Region args[] = {x, y};
        try {
          out.push_back(metric_fn(n.name, args));
        } catch (const MetricDomainError&) {
          // No value for this pair.
        }
      }
    }
    return out;
  }

  template <class F>
  std::vector<double> arith(const MetricExpr& self, const MetricExpr& lhs, const MetricExpr& rhs,
                            const LookupTable& z, F f) const {
    auto a = metric(lhs, z);
    auto b = metric(rhs, z);
    check_product(a.size(), b.size(), "'" + to_string(self) + "'");
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (double x : a) {
      for (double y : b) out.push_back(f(x, y));
    }
    return out;
  }

  std::vector<double> eval(const metric::Negate& n, const MetricExpr&, const LookupTable& z) const {
    auto v = metric(*n.inner, z);
    for (double& x : v) x = -x;
    return v;
  }
  std::vector<double> eval(const metric::Add& n, const MetricExpr& self, const LookupTable& z) const {
    return arith(self, *n.lhs, *n.rhs, z, [](double a, double b) { return a + b; });
  }
  std::vector<double> eval(const metric::Mul& n, const MetricExpr& self, const LookupTable& z) const {
    return arith(self, *n.lhs, *n.rhs, z, [](double a, double b) { return a * b; });
  }
  std::vector<double> eval(const metric::Pow& n, const MetricExpr&, const LookupTable& z) const {
    auto v = metric(*n.base, z);
    for (double& x : v) x = std::pow(x, n.exponent);
    return v;
  }

  // Formulas.

  bool eval(const formula::Atom& n, const LookupTable&) const {
    return std::any_of(scene_.objects.begin(), scene_.objects.end(),
                       [&](const ObjectAnnotation& o) { return n.pattern.matches(o.attributes); });
  }
  bool eval(const formula::Exists& n, const LookupTable& z) const { return witness(n, z) != nullptr; }
  bool eval(const formula::NonEmpty& n, const LookupTable& z) const {
    auto c = term(*n.term, z);
    return std::any_of(c.begin(), c.end(), [](const Region& r) { return is_non_empty(r); });
  }
  bool eval(const formula::SubsetOf& n, const LookupTable& z) const {
    auto a = term(*n.lhs, z);
    auto b = term(*n.rhs, z);
    for (const auto& x : a) {
      for (const auto& y : b) {
        if (is_subset(x, y)) return true;
      }
    }
    return false;
  }
  bool eval(const formula::Not& n, const LookupTable& z) const { return !holds(*n.inner, z); }
  bool eval(const formula::And& n, const LookupTable& z) const {
    return holds(*n.lhs, z) && holds(*n.rhs, z);
  }
  bool eval(const formula::Or& n, const LookupTable& z) const {
    return holds(*n.lhs, z) || holds(*n.rhs, z);
  }
  // Some value on the left is at most some value on the right.
  bool eval(const formula::LessEq& n, const LookupTable& z) const {
    auto a = metric(*n.lhs, z);
    if (a.empty()) return false;
    auto b = metric(*n.rhs, z);
    return !b.empty() && a.front() <= b.back();
  }

  const Scene& scene_;
};

void require_channel(const Scene& scene) {
  if (!scene.channel) throw EvaluationError("scene has no channel");
}

}  // namespace

std::vector<Region> eval_term(const SpatialTerm& term, const Scene& scene, const LookupTable& table) {
  require_channel(scene);
  return Evaluator(scene).term(term, table);
}

std::vector<double> eval_metric(const MetricExpr& expr, const Scene& scene, const LookupTable& table) {
  require_channel(scene);
  return Evaluator(scene).metric(expr, table);
}

bool satisfies(const SpatialFormula& formula, const Scene& scene, const LookupTable& table) {
  require_channel(scene);
  return Evaluator(scene).holds(formula, table);
}

const ObjectAnnotation* find_witness(const formula::Exists& exists, const Scene& scene,
                                     const LookupTable& table) {
  require_channel(scene);
  return Evaluator(scene).witness(exists, table);
}

const ChannelFrame& select_channel(const Frame& frame, std::string_view channel) {
  if (channel.empty()) {
    if (frame.channels.empty()) throw EvaluationError("frame " + std::to_string(frame.index) + " has no channels");
    return frame.channels.front();
  }
  if (const ChannelFrame* c = frame.find_channel(channel)) return *c;
  throw EvaluationError("channel '" + std::string(channel) + "' not found in frame " +
                        std::to_string(frame.index));
}

SymbolBitmap satisfied_symbols(const Frame& frame, std::span<const FormulaPtr> symbols,
                               std::string_view channel) {
  const ChannelFrame& c = select_channel(frame, channel);
  Scene scene{c.objects, &c.info};
  Evaluator eval(scene);
  SymbolBitmap out(symbols.size());
  LookupTable empty;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (eval.holds(*symbols[i], empty)) out.set(i);
  }
  return out;
}

}  // namespace spre

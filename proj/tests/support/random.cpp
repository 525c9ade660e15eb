// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "random.hpp"

#include "fixtures.hpp"

namespace spre::testing {

namespace {

const std::vector<std::string> kUnaryMetrics = {"area", "volume", "x", "y"};
const std::vector<std::string> kBinaryMetrics = {"dist", "iou"};
const std::vector<double> kConstants = {0, 0.25, 1, 2.5, 10, 25, 50, 100, 400};
const std::vector<double> kExponents = {2, 0.5, -1};

AttributePattern random_pattern(Rng& rng, const Vocabulary& vocab) {
  if (rng.chance(0.15)) return AttributePattern{rng.pick(vocab.attributes), rng.pick(vocab.attributes)};
  return AttributePattern{rng.pick(vocab.attributes)};
}

}  // namespace

Box random_box(Rng& rng, int extent, int max_side) {
  const int w = rng.between(1, max_side);
  const int h = rng.between(1, max_side);
  const int x = rng.between(0, extent - w);
  const int y = rng.between(0, extent - h);
  return Box::make2d(x, y, x + w, y + h);
}

Region random_region(Rng& rng, int max_boxes) {
  std::vector<Box> boxes;
  const int n = rng.between(0, max_boxes);
  for (int i = 0; i < n; ++i) boxes.push_back(random_box(rng));
  return Region(kUniverse, 2, std::move(boxes), rng.chance(0.5) ? Topology::Open : Topology::Closed);
}

PerceptionStream random_stream(Rng& rng, const StreamShape& shape) {
  std::vector<std::vector<Thing>> frames(rng.between(static_cast<int>(shape.min_frames),
                                                     static_cast<int>(shape.max_frames)));
  for (auto& frame : frames) {
    const int n = rng.between(0, static_cast<int>(shape.max_objects));
    for (int k = 0; k < n; ++k) {
      Thing t;
      t.attributes.push_back(rng.pick(shape.classes));
      if (rng.chance(0.4)) t.attributes.push_back(rng.pick(shape.tags));
      t.box = random_box(rng, shape.extent, shape.max_side);
      if (rng.chance(shape.degenerate_probability)) t.box.hi[0] = t.box.lo[0];
      frame.push_back(std::move(t));
    }
  }
  return stream_of(frames);
}

TermPtr random_term(Rng& rng, const Vocabulary& vocab, int depth) {
  const bool leaf = depth <= 0 || rng.chance(0.35);
  if (leaf) {
    if (!vocab.vars.empty() && rng.chance(0.5)) return term_var(rng.pick(vocab.vars));
    return term_atom(random_pattern(rng, vocab));
  }
  switch (rng.below(5)) {
    case 0: return term_complement(random_term(rng, vocab, depth - 1));
    case 1: return term_intersect(random_term(rng, vocab, depth - 1), random_term(rng, vocab, depth - 1));
    case 2: return term_union(random_term(rng, vocab, depth - 1), random_term(rng, vocab, depth - 1));
    case 3: return term_interior(random_term(rng, vocab, depth - 1));
    default: return term_closure(random_term(rng, vocab, depth - 1));
  }
}

MetricPtr random_metric(Rng& rng, const Vocabulary& vocab, int depth) {
  const bool leaf = depth <= 0 || rng.chance(0.4);
  if (leaf) {
    switch (rng.below(3)) {
      case 0: return metric_const(rng.pick(kConstants));
      case 1: return metric_call(rng.pick(kUnaryMetrics), random_term(rng, vocab, 1));
      default:
        return metric_call(rng.pick(kBinaryMetrics), random_term(rng, vocab, 1), random_term(rng, vocab, 1));
    }
  }
  switch (rng.below(4)) {
    case 0: return metric_negate(random_metric(rng, vocab, depth - 1));
    case 1: return metric_add(random_metric(rng, vocab, depth - 1), random_metric(rng, vocab, depth - 1));
    case 2: return metric_mul(random_metric(rng, vocab, depth - 1), random_metric(rng, vocab, depth - 1));
    default: return metric_pow(random_metric(rng, vocab, depth - 1), rng.pick(kExponents));
  }
}

FormulaPtr random_formula(Rng& rng, const Vocabulary& vocab, int depth) {
  const bool leaf = depth <= 0 || rng.chance(0.3);
  if (leaf) {
    switch (rng.below(4)) {
      case 0: return formula_atom(random_pattern(rng, vocab));
      case 1: return formula_nonempty(random_term(rng, vocab, 2));
      case 2: return formula_subset(random_term(rng, vocab, 1), random_term(rng, vocab, 1));
      default: return formula_less_eq(random_metric(rng, vocab, 1), random_metric(rng, vocab, 1));
    }
  }
  switch (rng.below(4)) {
    case 0: return formula_not(random_formula(rng, vocab, depth - 1));
    case 1: return formula_and(random_formula(rng, vocab, depth - 1), random_formula(rng, vocab, depth - 1));
    case 2: return formula_or(random_formula(rng, vocab, depth - 1), random_formula(rng, vocab, depth - 1));
    default: {
      Vocabulary inner = vocab;
      std::string var = "v" + std::to_string(vocab.vars.size());
      inner.vars.push_back(var);
      return formula_exists(var, random_pattern(rng, vocab), random_formula(rng, inner, depth - 1));
    }
  }
}

RegexPtr random_regex(Rng& rng, const RegexShape& shape, const LeafMaker& leaf) {
  if (shape.depth <= 0 || rng.chance(0.25)) {
    return rng.chance(0.05) ? regex_epsilon() : regex_leaf(leaf(rng));
  }
  RegexShape sub = shape;
  sub.depth -= 1;
  const std::size_t choices = shape.ranges ? 4 : 3;
  switch (rng.below(choices)) {
    case 0: return regex_alt(random_regex(rng, sub, leaf), random_regex(rng, sub, leaf));
    case 1: return regex_concat(random_regex(rng, sub, leaf), random_regex(rng, sub, leaf));
    case 2: return regex_star(random_regex(rng, sub, leaf));
    default: {
      const auto lo = static_cast<std::uint32_t>(rng.between(0, static_cast<int>(shape.max_repeat)));
      std::optional<std::uint32_t> hi;
      if (!rng.chance(0.3)) {
        hi = lo + static_cast<std::uint32_t>(rng.between(0, static_cast<int>(shape.max_repeat)));
      }
      return regex_range(random_regex(rng, sub, leaf), lo, hi);
    }
  }
}

QueryAst random_query(Rng& rng, const RegexShape& shape, int formula_depth, std::size_t pool_size) {
  std::vector<FormulaPtr> pool;
  const Vocabulary vocab;
  for (std::size_t i = 0; i < pool_size; ++i) pool.push_back(random_formula(rng, vocab, formula_depth));
  return QueryAst{random_regex(rng, shape, [&](Rng& r) { return r.pick(pool); })};
}

QueryAst random_symbol_query(Rng& rng, const std::vector<std::string>& alphabet, const RegexShape& shape) {
  return QueryAst{random_regex(rng, shape, [&](Rng& r) { return formula_atom({r.pick(alphabet)}); })};
}

}  // namespace spre::testing

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spre/ast.hpp"
#include "spre/region.hpp"
#include "spre/stream.hpp"

namespace spre::testing {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }

  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }

private:
  std::mt19937_64 engine_;
};

/// Integer box inside [0, extent]^2 with positive width and height.
Box random_box(Rng& rng, int extent = 100, int max_side = 40);

/// Union of up to `max_boxes` integer boxes in the 100x100 universe, random
/// topology.
Region random_region(Rng& rng, int max_boxes = 4);

struct StreamShape {
  std::size_t min_frames = 0;
  std::size_t max_frames = 8;
  std::size_t max_objects = 3;
  std::vector<std::string> classes = {"a", "b", "c"};
  std::vector<std::string> tags = {"red", "blue"};
  int extent = 100;
  int max_side = 60;
  double degenerate_probability = 0.1;
};

PerceptionStream random_stream(Rng& rng, const StreamShape& shape = {});

/// Names available to generated formulas. `vars` grows under <exists>.
struct Vocabulary {
  std::vector<std::string> attributes = {"a", "b", "c", "red"};
  std::vector<std::string> vars;
};

TermPtr random_term(Rng& rng, const Vocabulary& vocab, int depth);
MetricPtr random_metric(Rng& rng, const Vocabulary& vocab, int depth);
FormulaPtr random_formula(Rng& rng, const Vocabulary& vocab, int depth);

using LeafMaker = std::function<FormulaPtr(Rng&)>;

struct RegexShape {
  int depth = 3;
  bool ranges = true;
  std::uint32_t max_repeat = 3;
};

RegexPtr random_regex(Rng& rng, const RegexShape& shape, const LeafMaker& leaf);

/// Query whose leaves come from a small pool so that symbols repeat.
QueryAst random_query(Rng& rng, const RegexShape& shape = {}, int formula_depth = 2,
                      std::size_t pool_size = 4);

/// Leaves are bare attribute atoms over `alphabet`; handy for language tests
/// where each symbol is a distinct class.
QueryAst random_symbol_query(Rng& rng, const std::vector<std::string>& alphabet, const RegexShape& shape);

}  // namespace spre::testing

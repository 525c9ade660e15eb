// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spre/ast.hpp"
#include "spre/region.hpp"
#include "spre/stream.hpp"

namespace spre {

/// Variable bindings for one satisfaction call. Later bindings shadow earlier
/// ones with the same name; a name without a binding is unbound.
class LookupTable {
public:
  const ObjectAnnotation* find(std::string_view name) const;
  LookupTable with(std::string name, const ObjectAnnotation* object) const;

private:
  std::vector<std::pair<std::string, const ObjectAnnotation*>> bindings_;
};

/// Largest candidate set a single term or metric node may produce.
inline constexpr std::size_t kCandidateCap = 10000;

/// What one frame of one channel offers to a formula.
struct Scene {
  std::span<const ObjectAnnotation> objects;
  const ChannelInfo* channel = nullptr;
};

/// The candidate regions of a term: one per nondeterministic choice of
/// objects, sorted and without duplicates.
///
/// Throws EvaluationError when a variable is unbound or a node would exceed
/// kCandidateCap candidates.
std::vector<Region> eval_term(const SpatialTerm& term, const Scene& scene, const LookupTable& table);

/// The values a metric expression can take, sorted and without duplicates.
/// Choices that fall outside a function's domain, or yield NaN, contribute
/// nothing.
std::vector<double> eval_metric(const MetricExpr& expr, const Scene& scene, const LookupTable& table);

bool satisfies(const SpatialFormula& formula, const Scene& scene, const LookupTable& table = {});

/// An object that makes the quantified body true, or nullptr.
const ObjectAnnotation* find_witness(const formula::Exists& exists, const Scene& scene,
                                     const LookupTable& table = {});

/// Fixed-width set of symbol ids.
class SymbolBitmap {
public:
  SymbolBitmap() = default;
  explicit SymbolBitmap(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool none() const;
  std::size_t count() const;

  friend bool operator==(const SymbolBitmap&, const SymbolBitmap&) = default;

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The channel a query reads. An empty name selects the first channel.
/// Throws EvaluationError when no channel has the name.
const ChannelFrame& select_channel(const Frame& frame, std::string_view channel);

/// Bit i is set iff symbols[i] holds on the selected channel of the frame.
SymbolBitmap satisfied_symbols(const Frame& frame, std::span<const FormulaPtr> symbols,
                               std::string_view channel = {});

}  // namespace spre

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace spre {

bool Box::valid(int dims) const {
  for (int d = 0; d < dims; ++d) {
    if (!(lo[d] <= hi[d])) return false;
  }
  return true;
}

bool Box::degenerate(int dims) const {
  for (int d = 0; d < dims; ++d) {
    if (lo[d] == hi[d]) return true;
  }
  return false;
}

double Box::measure(int dims) const {
  double m = 1.0;
  for (int d = 0; d < dims; ++d) m *= hi[d] - lo[d];
  return m;
}

bool Box::contains(const Box& other, int dims) const {
  for (int d = 0; d < dims; ++d) {
    if (other.lo[d] < lo[d] || other.hi[d] > hi[d]) return false;
  }
  return true;
}

std::optional<Box> Box::intersection(const Box& other, int dims) const {
  Box out;
  for (int d = 0; d < dims; ++d) {
    out.lo[d] = std::max(lo[d], other.lo[d]);
    out.hi[d] = std::min(hi[d], other.hi[d]);
    if (out.lo[d] > out.hi[d]) return std::nullopt;
  }
  return out;
}

void subtract_box(const Box& piece, const Box& cut, int dims, std::vector<Box>& out) {
  if (!piece.intersection(cut, dims)) {
    out.push_back(piece);
    return;
  }
  Box rest = piece;
  for (int d = 0; d < dims; ++d) {
    if (rest.lo[d] < cut.lo[d]) {
      Box slab = rest;
      slab.hi[d] = cut.lo[d];
      out.push_back(slab);
      rest.lo[d] = cut.lo[d];
    }
    if (rest.hi[d] > cut.hi[d]) {
      Box slab = rest;
      slab.lo[d] = cut.hi[d];
      out.push_back(slab);
      rest.hi[d] = cut.hi[d];
    }
  }
}

namespace {

void check_compatible(const Region& a, const Region& b) {
  if (a.dims() != b.dims()) {
    throw GeometryError("region dimension mismatch: " + std::to_string(a.dims()) + " vs " +
                        std::to_string(b.dims()));
  }
  if (!(a.universe() == b.universe())) {
    throw GeometryError("regions belong to different universes");
  }
}

// Two boxes merge when they agree on every axis but one and touch or overlap
// along that one.
std::optional<Box> try_merge(const Box& a, const Box& b, int dims) {
  int differing = -1;
  for (int d = 0; d < dims; ++d) {
    if (a.lo[d] != b.lo[d] || a.hi[d] != b.hi[d]) {
      if (differing >= 0) return std::nullopt;
      differing = d;
    }
  }
  if (differing < 0) return a;
  if (a.hi[differing] < b.lo[differing] || b.hi[differing] < a.lo[differing]) return std::nullopt;
  Box merged = a;
  merged.lo[differing] = std::min(a.lo[differing], b.lo[differing]);
  merged.hi[differing] = std::max(a.hi[differing], b.hi[differing]);
  return merged;
}

std::vector<Box> effective_boxes(const Region& r) {
  if (!r.is_open()) return r.boxes();
  std::vector<Box> out;
  for (const Box& b : r.boxes()) {
    if (!b.degenerate(r.dims())) out.push_back(b);
  }
  return out;
}

}  // namespace

Region::Region(const Box& universe, int dims, std::vector<Box> boxes, Topology topology)
  : universe_(universe), dims_(dims), boxes_(std::move(boxes)), topology_(topology) {
  if (dims_ != 2 && dims_ != 3) {
    throw GeometryError("regions must have 2 or 3 dimensions, got " + std::to_string(dims_));
  }
  for (int d = dims_; d < kMaxDims; ++d) {
    universe_.lo[d] = universe_.hi[d] = 0.0;
  }
  normalize();
}

Region Region::with_topology(Topology t) const {
  Region out = *this;
  out.topology_ = t;
  return out;
}

void Region::normalize() {
  std::vector<Box> clipped;
  clipped.reserve(boxes_.size());
  for (Box b : boxes_) {
    for (int d = dims_; d < kMaxDims; ++d) b.lo[d] = b.hi[d] = 0.0;
    if (!b.valid(dims_)) continue;
    if (auto c = b.intersection(universe_, dims_)) {
      for (int d = dims_; d < kMaxDims; ++d) c->lo[d] = c->hi[d] = 0.0;
      clipped.push_back(*c);
    }
  }
  if (clipped.size() <= 1) {
    boxes_ = std::move(clipped);
    return;
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < clipped.size() && !changed; ++i) {
      for (std::size_t j = 0; j < clipped.size() && !changed; ++j) {
        if (i == j) continue;
        if (clipped[i].contains(clipped[j], dims_)) {
          clipped.erase(clipped.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        } else if (auto m = try_merge(clipped[i], clipped[j], dims_)) {
          clipped[i] = *m;
          clipped.erase(clipped.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
  std::sort(clipped.begin(), clipped.end());
  boxes_ = std::move(clipped);
}

Region intersect(const Region& a, const Region& b) {
  check_compatible(a, b);
  std::vector<Box> out;
  out.reserve(a.boxes().size() * b.boxes().size());
  for (const Box& x : a.boxes()) {
    for (const Box& y : b.boxes()) {
      if (auto c = x.intersection(y, a.dims())) out.push_back(*c);
    }
  }
  Topology t = (a.is_open() || b.is_open()) ? Topology::Open : Topology::Closed;
  return Region(a.universe(), a.dims(), std::move(out), t);
}

Region unite(const Region& a, const Region& b) {
  check_compatible(a, b);
  std::vector<Box> out = a.boxes();
  out.insert(out.end(), b.boxes().begin(), b.boxes().end());
  Topology t = (a.is_open() && b.is_open()) ? Topology::Open : Topology::Closed;
  return Region(a.universe(), a.dims(), std::move(out), t);
}

Region complement(const Region& a) {
  std::vector<Box> pieces{a.universe()};
  std::vector<Box> next;
  for (const Box& cut : a.boxes()) {
    next.clear();
    for (const Box& p : pieces) subtract_box(p, cut, a.dims(), next);
    pieces.swap(next);
    if (pieces.empty()) break;
  }
  Topology t = a.is_open() ? Topology::Closed : Topology::Open;
  return Region(a.universe(), a.dims(), std::move(pieces), t);
}

Region interior(const Region& a) {
  std::vector<Box> kept;
  for (const Box& b : a.boxes()) {
    if (!b.degenerate(a.dims())) kept.push_back(b);
  }
  return Region(a.universe(), a.dims(), std::move(kept), Topology::Open);
}

Region closure(const Region& a) { return a.with_topology(Topology::Closed); }

bool is_non_empty(const Region& a) {
  if (!a.is_open()) return !a.boxes().empty();
  return std::any_of(a.boxes().begin(), a.boxes().end(),
                     [&](const Box& b) { return !b.degenerate(a.dims()); });
}

bool is_subset(const Region& a, const Region& b) {
  check_compatible(a, b);
  std::vector<Box> residual = effective_boxes(a);
  std::vector<Box> next;
  for (const Box& cut : effective_boxes(b)) {
    next.clear();
    for (const Box& p : residual) subtract_box(p, cut, a.dims(), next);
    residual.swap(next);
    if (residual.empty()) return true;
  }
  return residual.empty();
}

double measure(const Region& a) {
  const int dims = a.dims();
  double total = 0.0;
  std::vector<Box> pieces;
  std::vector<Box> next;
  const auto& boxes = a.boxes();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].degenerate(dims)) continue;
    pieces.assign(1, boxes[i]);
    for (std::size_t j = 0; j < i && !pieces.empty(); ++j) {
      next.clear();
      for (const Box& p : pieces) subtract_box(p, boxes[j], dims, next);
      pieces.swap(next);
    }
    for (const Box& p : pieces) total += p.measure(dims);
  }
  return total;
}

Box bounding_hull(const Region& a) {
  if (a.boxes().empty()) throw MetricDomainError("bounding hull of an empty region");
  Box hull = a.boxes().front();
  for (const Box& b : a.boxes()) {
    for (int d = 0; d < a.dims(); ++d) {
      hull.lo[d] = std::min(hull.lo[d], b.lo[d]);
      hull.hi[d] = std::max(hull.hi[d], b.hi[d]);
    }
  }
  return hull;
}

namespace {

struct MetricEntry {
  std::string_view name;
  int arity;
};

constexpr std::array<MetricEntry, 7> kRegistry{{
    {"area", 1},
    {"volume", 1},
    {"x", 1},
    {"y", 1},
    {"z", 1},
    {"dist", 2},
    {"iou", 2},
}};

constexpr std::array<std::string_view, kRegistry.size()> kNames = [] {
  std::array<std::string_view, kRegistry.size()> names{};
  for (std::size_t i = 0; i < kRegistry.size(); ++i) names[i] = kRegistry[i].name;
  return names;
}();

double centroid(const Region& r, int axis) {
  if (axis >= r.dims()) {
    throw MetricDomainError("axis " + std::to_string(axis) + " is out of range for a " +
                            std::to_string(r.dims()) + "D region");
  }
  return bounding_hull(r).center(axis);
}

}  // namespace

std::optional<int> metric_arity(std::string_view name) {
  for (const auto& e : kRegistry) {
    if (e.name == name) return e.arity;
  }
  return std::nullopt;
}

std::span<const std::string_view> metric_names() { return kNames; }

double metric_fn(std::string_view name, std::span<const Region> args) {
  auto arity = metric_arity(name);
  if (!arity) throw EvaluationError("unknown metric function '" + std::string(name) + "'");
  if (static_cast<std::size_t>(*arity) != args.size()) {
    throw EvaluationError("metric function '" + std::string(name) + "' takes " +
                          std::to_string(*arity) + " argument(s), got " +
                          std::to_string(args.size()));
  }

  if (name == "area" || name == "volume") return measure(args[0]);
  if (name == "x") return centroid(args[0], 0);
  if (name == "y") return centroid(args[0], 1);
  if (name == "z") return centroid(args[0], 2);

  check_compatible(args[0], args[1]);
  if (name == "dist") {
    Box a = bounding_hull(args[0]);
    Box b = bounding_hull(args[1]);
    double sq = 0.0;
    for (int d = 0; d < args[0].dims(); ++d) {
      double delta = a.center(d) - b.center(d);
      sq += delta * delta;
    }
    return std::sqrt(sq);
  }
  // iou
  double denom = measure(unite(args[0], args[1]));
  if (denom == 0.0) return 0.0;
  return measure(intersect(args[0], args[1])) / denom;
}

}  // namespace spre

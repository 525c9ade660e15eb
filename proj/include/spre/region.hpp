// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spre/error.hpp"

namespace spre {

inline constexpr int kMaxDims = 3;

/// Closed axis-aligned box. Only the first `dims` coordinates are meaningful;
/// the remaining ones are kept at zero so that defaulted comparison works.
struct Box {
  std::array<double, kMaxDims> lo{};
  std::array<double, kMaxDims> hi{};

  static Box make2d(double x0, double y0, double x1, double y1) {
    return Box{{x0, y0, 0.0}, {x1, y1, 0.0}};
  }
  static Box make3d(double x0, double y0, double z0, double x1, double y1, double z1) {
    return Box{{x0, y0, z0}, {x1, y1, z1}};
  }

  bool valid(int dims) const;
  /// Zero extent along at least one axis.
  bool degenerate(int dims) const;
  double measure(int dims) const;
  bool contains(const Box& other, int dims) const;
  std::optional<Box> intersection(const Box& other, int dims) const;
  double center(int axis) const { return 0.5 * (lo[axis] + hi[axis]); }

  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box&, const Box&) = default;
};

enum class Topology { Closed, Open };

/// A finite union of axis-aligned boxes inside a bounded universe, tagged as
/// a whole as either closed or open.
///
/// The box list is kept in normal form: boxes are clipped to the universe,
/// boxes contained in another box are dropped, coaxial neighbours whose union
/// is itself a box are merged, and the list is sorted. Two regions with equal
/// normal forms compare equal.
class Region {
public:
  Region(const Box& universe, int dims, std::vector<Box> boxes = {},
         Topology topology = Topology::Closed);

  static Region empty(const Box& universe, int dims) { return Region(universe, dims); }
  static Region full(const Box& universe, int dims) { return Region(universe, dims, {universe}); }

  const std::vector<Box>& boxes() const { return boxes_; }
  Topology topology() const { return topology_; }
  bool is_open() const { return topology_ == Topology::Open; }
  int dims() const { return dims_; }
  const Box& universe() const { return universe_; }

  Region with_topology(Topology t) const;

  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region&, const Region&) = default;

private:
  void normalize();

  Box universe_;
  int dims_;
  std::vector<Box> boxes_;
  Topology topology_;
};

Region intersect(const Region& a, const Region& b);
Region unite(const Region& a, const Region& b);
Region complement(const Region& a);
Region interior(const Region& a);
Region closure(const Region& a);

bool is_non_empty(const Region& a);
/// Subset test on closures; boundary distinctions are ignored.
bool is_subset(const Region& a, const Region& b);

/// Lebesgue measure in the region's own dimension (area in 2D, volume in 3D).
double measure(const Region& a);

/// Smallest box covering the region. Throws MetricDomainError when empty.
Box bounding_hull(const Region& a);

/// Appends `piece \ cut` to `out` as boxes that each reach strictly outside
/// `cut` along their split axis.
void subtract_box(const Box& piece, const Box& cut, int dims, std::vector<Box>& out);

/// Raised by metric functions whose argument lies outside their domain, such
/// as the centroid of an empty region.
class MetricDomainError : public EvaluationError {
public:
  using EvaluationError::EvaluationError;
};

/// Number of region arguments taken by a registered metric function, or
/// nullopt if the name is not registered.
std::optional<int> metric_arity(std::string_view name);

/// Names accepted by `metric_arity`, in registry order.
std::span<const std::string_view> metric_names();

/// Evaluates a registered metric function.
///
///   area, volume   measure of the region
///   x, y, z        centroid coordinate of the bounding hull
///   dist           Euclidean distance between hull centroids
///   iou            measure(a & b) / measure(a | b), 0 when the union is null
double metric_fn(std::string_view name, std::span<const Region> args);

}  // namespace spre

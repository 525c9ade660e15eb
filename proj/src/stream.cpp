// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/stream.hpp"

#include <algorithm>
#include <cmath>

namespace spre {

AttributePattern::AttributePattern(std::initializer_list<std::string> values)
  : AttributePattern(std::vector<std::string>(values)) {}

AttributePattern::AttributePattern(std::vector<std::string> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

bool AttributePattern::matches(const AttributeSet& attributes) const {
  for (const auto& wanted : values_) {
    bool found = std::any_of(attributes.begin(), attributes.end(),
                             [&](const auto& kv) { return kv.second == wanted; });
    if (!found) return false;
  }
  return true;
}

const ChannelFrame* Frame::find_channel(std::string_view name) const {
  for (const auto& c : channels) {
    if (c.info.name == name) return &c;
  }
  return nullptr;
}

std::vector<const ObjectAnnotation*> objects_with_attributes(
    std::span<const ObjectAnnotation> objects, const AttributePattern& required) {
  std::vector<const ObjectAnnotation*> out;
  for (const auto& o : objects) {
    if (required.matches(o.attributes)) out.push_back(&o);
  }
  return out;
}

Box axis_aligned_hull(const BoundingRegionSpec& spec) {
  Box box = spec.box;
  if (spec.kind != BoxKind::Box3d || !spec.rotation || *spec.rotation == 0.0) return box;

  // Yaw about the box centre; z is unaffected.
  const double c = std::cos(*spec.rotation);
  const double s = std::sin(*spec.rotation);
  const double cx = box.center(0);
  const double cy = box.center(1);
  Box hull = box;
  hull.lo[0] = hull.lo[1] = INFINITY;
  hull.hi[0] = hull.hi[1] = -INFINITY;
  for (double x : {box.lo[0], box.hi[0]}) {
    for (double y : {box.lo[1], box.hi[1]}) {
      double dx = x - cx;
      double dy = y - cy;
      double rx = cx + c * dx - s * dy;
      double ry = cy + s * dx + c * dy;
      hull.lo[0] = std::min(hull.lo[0], rx);
      hull.hi[0] = std::max(hull.hi[0], rx);
      hull.lo[1] = std::min(hull.lo[1], ry);
      hull.hi[1] = std::max(hull.hi[1], ry);
    }
  }
  return hull;
}

Region channel_universe(const ChannelInfo& channel) {
  const auto& env = channel.environment_bounds;
  return Region::full(env.box, env.dims());
}

Region region_of(const ObjectAnnotation& object, const ChannelInfo& channel) {
  const auto& env = channel.environment_bounds;
  const int dims = env.dims();
  Box hull = axis_aligned_hull(object.region);
  // Clamped into the universe; an object entirely outside becomes a sliver on
  // the universe boundary.
  for (int d = 0; d < dims; ++d) {
    hull.lo[d] = std::clamp(hull.lo[d], env.box.lo[d], env.box.hi[d]);
    hull.hi[d] = std::clamp(hull.hi[d], env.box.lo[d], env.box.hi[d]);
  }
  return Region(env.box, dims, {hull});
}

}  // namespace spre

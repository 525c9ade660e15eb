// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spre/region.hpp"

namespace spre {

/// Key -> value annotations of one object. Lookups are case-sensitive.
using AttributeSet = std::map<std::string, std::string>;

/// The attribute values a query asks for, without naming keys. Kept sorted
/// and free of duplicates.
class AttributePattern {
public:
  AttributePattern() = default;
  AttributePattern(std::initializer_list<std::string> values);
  explicit AttributePattern(std::vector<std::string> values);

  const std::vector<std::string>& values() const { return values_; }
  bool empty() const { return values_.empty(); }

  /// Every required value appears under some key of `attributes`.
  bool matches(const AttributeSet& attributes) const;

  friend bool operator==(const AttributePattern&, const AttributePattern&) = default;

private:
  std::vector<std::string> values_;
};

enum class BoxKind { Box2d, Box3d };

struct BoundingRegionSpec {
  BoxKind kind = BoxKind::Box2d;
  Box box;
  /// Yaw around the vertical axis, radians. Only meaningful for 3D boxes.
  std::optional<double> rotation;

  int dims() const { return kind == BoxKind::Box2d ? 2 : 3; }

  friend bool operator==(const BoundingRegionSpec&, const BoundingRegionSpec&) = default;
};

struct ObjectAnnotation {
  std::string id;
  AttributeSet attributes;
  BoundingRegionSpec region;
  std::optional<double> confidence;

  friend bool operator==(const ObjectAnnotation&, const ObjectAnnotation&) = default;
};

struct ChannelInfo {
  std::string name;
  BoundingRegionSpec environment_bounds;
  double timestamp = 0.0;

  friend bool operator==(const ChannelInfo&, const ChannelInfo&) = default;
};

struct ChannelFrame {
  ChannelInfo info;
  std::vector<ObjectAnnotation> objects;

  friend bool operator==(const ChannelFrame&, const ChannelFrame&) = default;
};

struct Frame {
  std::size_t index = 0;
  std::vector<ChannelFrame> channels;

  /// nullptr when no channel has that name.
  const ChannelFrame* find_channel(std::string_view name) const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct PerceptionStream {
  std::vector<Frame> frames;

  std::size_t size() const { return frames.size(); }

  friend bool operator==(const PerceptionStream&, const PerceptionStream&) = default;
};

/// Half-open range of frame indices [start, end).
struct MatchRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }

  friend bool operator==(const MatchRange&, const MatchRange&) = default;
  friend auto operator<=>(const MatchRange&, const MatchRange&) = default;
};

/// Objects whose attributes contain every value of `required` under some key.
std::vector<const ObjectAnnotation*> objects_with_attributes(
    std::span<const ObjectAnnotation> objects, const AttributePattern& required);

/// Box of `spec` as a box inside a universe of matching dimension; rotated
/// 3D boxes become their axis-aligned hull.
Box axis_aligned_hull(const BoundingRegionSpec& spec);

/// The object's bounding region as a closed region of the channel's universe.
Region region_of(const ObjectAnnotation& object, const ChannelInfo& channel);

/// Universe region of the channel.
Region channel_universe(const ChannelInfo& channel);

}  // namespace spre

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "spre/stream.hpp"

namespace spre {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t frames = 1000;
  std::size_t objects_per_frame = 5;
  std::vector<std::string> classes = {"pedestrian", "bicycle", "car", "truck", "bus", "sign"};
  /// Chance that an object is placed overlapping the previous one.
  double overlap_probability = 0.3;
  std::string channel = "cam_front";
  double frame_rate = 10.0;
  /// Side length of the square environment; coordinates are integers.
  int extent = 100;
  int max_object_size = 20;
};

/// Deterministic in the seed: equal configs give equal streams on every run.
PerceptionStream generate_stream(const GeneratorConfig& config);

/// One record per line, readable by load_stream.
void write_stream(std::ostream& out, const PerceptionStream& stream);

}  // namespace spre

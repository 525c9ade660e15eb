// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/synthetic.hpp"

#include <algorithm>
#include <random>

#include "spre/error.hpp"
#include "spre/ingest.hpp"

namespace spre {

namespace {

// Draws from the engine directly so the sequence does not depend on the
// standard library's distribution algorithms.
class Draw {
public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

private:
  std::mt19937_64 engine_;
};

}  // namespace

PerceptionStream generate_stream(const GeneratorConfig& config) {
  if (config.classes.empty()) throw ConfigError("generator needs at least one class");
  if (config.extent < 2 || config.max_object_size < 1 || config.frame_rate <= 0.0) {
    throw ConfigError("generator extent, object size, and frame rate must be positive");
  }
  Draw draw(config.seed);
  const int extent = config.extent;
  const int size_cap = std::min(config.max_object_size, extent);

  PerceptionStream stream;
  stream.frames.reserve(config.frames);
  for (std::size_t f = 0; f < config.frames; ++f) {
    ChannelFrame channel;
    channel.info.name = config.channel;
    channel.info.timestamp = static_cast<double>(f) / config.frame_rate;
    channel.info.environment_bounds.box = Box::make2d(0, 0, extent, extent);

    for (std::size_t o = 0; o < config.objects_per_frame; ++o) {
      const int w = 1 + draw.below(size_cap);
      const int h = 1 + draw.below(size_cap);
      int x;
      int y;
      if (o > 0 && draw.chance(config.overlap_probability)) {
        const Box& prev = channel.objects.back().region.box;
        x = static_cast<int>(prev.lo[0]) + draw.below(std::max(1, static_cast<int>(prev.hi[0] - prev.lo[0])));
        y = static_cast<int>(prev.lo[1]) + draw.below(std::max(1, static_cast<int>(prev.hi[1] - prev.lo[1])));
      } else {
        x = draw.below(extent);
        y = draw.below(extent);
      }
      x = std::min(x, extent - w);
      y = std::min(y, extent - h);

      ObjectAnnotation object;
      object.id = std::to_string(o);
      object.attributes["class"] = config.classes[static_cast<std::size_t>(draw.below(static_cast<int>(config.classes.size())))];
      object.region.box = Box::make2d(x, y, x + w, y + h);
      channel.objects.push_back(std::move(object));
    }

    Frame frame;
    frame.index = f;
    frame.channels.push_back(std::move(channel));
    stream.frames.push_back(std::move(frame));
  }
  return stream;
}

void write_stream(std::ostream& out, const PerceptionStream& stream) {
  for (const auto& frame : stream.frames) out << write_frame_record(frame) << '\n';
}

}  // namespace spre

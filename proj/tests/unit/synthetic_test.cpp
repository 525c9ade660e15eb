// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "spre/ingest.hpp"
#include "spre/synthetic.hpp"

using namespace spre;

TEST(Synthetic, SameSeedSameStream) {
  GeneratorConfig g;
  g.frames = 200;
  EXPECT_EQ(generate_stream(g), generate_stream(g));
  GeneratorConfig h = g;
  h.seed = 2;
  EXPECT_NE(generate_stream(g), generate_stream(h));
}

TEST(Synthetic, HonoursShape) {
  GeneratorConfig g;
  g.frames = 120;
  g.objects_per_frame = 4;
  g.classes = {"car", "bus"};
  g.channel = "front";
  g.frame_rate = 20;
  PerceptionStream s = generate_stream(g);
  ASSERT_EQ(s.size(), 120u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Frame& f = s.frames[i];
    EXPECT_EQ(f.index, i);
    ASSERT_EQ(f.channels.size(), 1u);
    EXPECT_EQ(f.channels[0].info.name, "front");
    EXPECT_DOUBLE_EQ(f.channels[0].info.timestamp, static_cast<double>(i) / 20.0);
    EXPECT_EQ(f.channels[0].objects.size(), 4u);
    for (const auto& o : f.channels[0].objects) {
      const auto& cls = o.attributes.at("class");
      EXPECT_TRUE(cls == "car" || cls == "bus");
      for (int d = 0; d < 2; ++d) {
        EXPECT_GE(o.region.box.lo[d], 0.0);
        EXPECT_LE(o.region.box.hi[d], 100.0);
        EXPECT_LT(o.region.box.lo[d], o.region.box.hi[d]);
        EXPECT_EQ(o.region.box.lo[d], static_cast<double>(static_cast<int>(o.region.box.lo[d])));
      }
    }
  }
}

TEST(Synthetic, OverlapProbabilityRaisesOverlaps) {
  auto overlapping_frames = [](double p) {
    GeneratorConfig g;
    g.frames = 500;
    g.objects_per_frame = 2;
    g.overlap_probability = p;
    g.max_object_size = 5;
    std::size_t n = 0;
    for (const auto& f : generate_stream(g).frames) {
      const auto& a = f.channels[0].objects[0].region.box;
      const auto& b = f.channels[0].objects[1].region.box;
      if (a.intersection(b, 2)) ++n;
    }
    return n;
  };
  EXPECT_GT(overlapping_frames(0.9), overlapping_frames(0.0) + 300);
}

TEST(Synthetic, WriterRoundTrips) {
  GeneratorConfig g;
  g.frames = 100;
  PerceptionStream s = generate_stream(g);
  std::stringstream buf;
  write_stream(buf, s);
  EXPECT_EQ(load_stream(buf), s);
}

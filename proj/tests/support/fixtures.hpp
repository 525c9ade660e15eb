// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

#include "spre/stream.hpp"

namespace spre::testing {

/// An object for a hand-built frame: the first attribute is its class.
struct Thing {
  std::vector<std::string> attributes;
  Box box;
};

inline Box box(double x0, double y0, double x1, double y1) { return Box::make2d(x0, y0, x1, y1); }

inline const Box kUniverse = Box::make2d(0, 0, 100, 100);

Frame frame_of(const std::vector<Thing>& things, std::size_t index = 0, double timestamp = 0.0,
               const std::string& channel = "cam");

/// Frames numbered from 0, ten per second.
PerceptionStream stream_of(const std::vector<std::vector<Thing>>& frames);

std::string to_jsonl(const PerceptionStream& stream);

/// The queries of the evaluation corpus, as published, including the
/// bracket slips in three of them.
namespace corpus {
extern const char* const kA1;
extern const char* const kA2;
extern const char* const kA3;
extern const char* const kB1;
extern const char* const kB2;
extern const char* const kB3;
/// A.3 written with the positional sugar.
extern const char* const kA3Sugar;
/// The worked example with loop, alternation, and two tail formulas.
extern const char* const kExample;
}  // namespace corpus

}  // namespace spre::testing

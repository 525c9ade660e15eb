// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "spre/stream.hpp"

namespace spre {

struct IngestConfig {
  /// Largest allowed spread of channel timestamps within one key-frame, seconds.
  double keyframe_threshold = 0.001;
  /// Attribute key under which the record's "class" field is stored.
  std::string classification_key = "class";
  bool clip_to_environment = true;
  /// Skip frames that fail key-frame validation instead of failing.
  bool drop_misaligned = false;
};

/// Parses one newline-delimited JSON frame record.
///
/// Throws IngestError for malformed JSON (with the byte offset of the
/// problem) and for schema violations (naming the offending field).
Frame parse_frame_record(std::string_view line, const IngestConfig& config = {},
                         std::size_t line_number = 1);

/// True iff every pair of channel timestamps differs by at most the threshold.
bool validate_key_frame(const Frame& frame, const IngestConfig& config);

/// Serializes a frame to a single-line record that parse_frame_record reads
/// back to an equal frame.
std::string write_frame_record(const Frame& frame, const IngestConfig& config = {});

/// Incremental reader over a record stream. Frames are re-indexed from 0 in
/// arrival order.
class StreamReader {
public:
  using WarningSink = std::function<void(const std::string&)>;

  StreamReader(std::istream& in, IngestConfig config, WarningSink warn = {});

  /// Next key-frame, or nullopt at end of input.
  std::optional<Frame> next();

  std::size_t frames_read() const { return next_index_; }
  std::size_t frames_dropped() const { return dropped_; }

private:
  std::istream& in_;
  IngestConfig config_;
  WarningSink warn_;
  std::size_t line_number_ = 0;
  std::size_t next_index_ = 0;
  std::size_t dropped_ = 0;
};

PerceptionStream load_stream(std::istream& in, const IngestConfig& config = {},
                             StreamReader::WarningSink warn = {});

}  // namespace spre

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spre/automaton.hpp"
#include "spre/monitor.hpp"
#include "spre/stream.hpp"

namespace spre {

/// Symbol bitmaps of a stream's frames, computed on first use.
class FrameSymbols {
public:
  FrameSymbols(const PerceptionStream& stream, std::span<const FormulaPtr> symbols, std::string channel = {});

  const SymbolBitmap& operator[](std::size_t i);
  std::size_t size() const { return stream_->size(); }

private:
  const PerceptionStream* stream_;
  std::span<const FormulaPtr> symbols_;
  std::string channel_;
  std::vector<std::optional<SymbolBitmap>> cache_;
};

/// Longest non-empty match starting at frame i, or nullopt.
std::optional<MatchRange> match_at(FrameSymbols& frames, std::size_t i, const SpatialAutomaton& automaton);

/// Non-overlapping leftmost-longest matches: scanning from frame 0, each
/// match is the longest one starting at the earliest position not covered by
/// an earlier match. Ranges are sorted and disjoint.
std::vector<MatchRange> match_offline(FrameSymbols& frames, const SpatialAutomaton& automaton);

std::vector<MatchRange> match_offline(const PerceptionStream& stream, const CompiledQuery& query,
                                      std::string_view channel = {});

/// Reports, at every arriving frame j, the longest match [i, j+1) ending at
/// it. Only the last B frames are kept, B = min(horizon, max_window).
class OnlineSession {
public:
  /// `query` must carry a reverse automaton and must outlive the session.
  /// Throws ConfigError when the horizon is unbounded and no window is given.
  OnlineSession(const CompiledQuery& query, std::optional<std::size_t> max_window = std::nullopt,
                std::string channel = {});

  std::optional<MatchRange> push(const Frame& frame);

  std::size_t window() const { return window_; }
  std::size_t frames_seen() const { return seen_; }
  /// Timestamp of the selected channel for a frame still in the window.
  double timestamp(std::size_t frame) const;

private:
  const CompiledQuery* query_;
  std::string channel_;
  std::size_t window_;
  std::size_t seen_ = 0;
  // Ring buffer; slot (frame % window_) holds that frame.
  std::vector<SymbolBitmap> bitmaps_;
  std::vector<double> timestamps_;
  ActiveSet active_;
};

struct MatchReport {
  MatchRange range;
  std::string channel;
  double t_start = 0.0;
  double t_last = 0.0;
  std::string query;
};

/// Report for a range of a loaded stream, with timestamps from the selected
/// channel of its first and last frames.
MatchReport make_report(const PerceptionStream& stream, MatchRange range, std::string_view channel,
                        std::string_view query);

}  // namespace spre

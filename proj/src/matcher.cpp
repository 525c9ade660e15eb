// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/matcher.hpp"

#include <algorithm>
#include <limits>

namespace spre {

FrameSymbols::FrameSymbols(const PerceptionStream& stream, std::span<const FormulaPtr> symbols,
                           std::string channel)
  : stream_(&stream), symbols_(symbols), channel_(std::move(channel)), cache_(stream.size()) {}

const SymbolBitmap& FrameSymbols::operator[](std::size_t i) {
  auto& slot = cache_[i];
  if (!slot) slot = satisfied_symbols(stream_->frames[i], symbols_, channel_);
  return *slot;
}

std::optional<MatchRange> match_at(FrameSymbols& frames, std::size_t i, const SpatialAutomaton& automaton) {
  ActiveSet active(automaton);
  std::optional<MatchRange> best;
  for (std::size_t j = i; j < frames.size() && !active.all_dead(); ++j) {
    active.step(frames[j]);
    if (active.any_accepting()) best = MatchRange{i, j + 1};
  }
  return best;
}

std::vector<MatchRange> match_offline(FrameSymbols& frames, const SpatialAutomaton& automaton) {
  std::vector<MatchRange> out;
  std::size_t i = 0;
  while (i < frames.size()) {
    if (auto m = match_at(frames, i, automaton)) {
      out.push_back(*m);
      i = m->end;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<MatchRange> match_offline(const PerceptionStream& stream, const CompiledQuery& query,
                                      std::string_view channel) {
  FrameSymbols frames(stream, query.symbols.formulas(), std::string(channel));
  return match_offline(frames, query.forward);
}

namespace {

std::size_t effective_window(const CompiledQuery& query, std::optional<std::size_t> max_window) {
  if (!query.reverse) throw ConfigError("online matching needs the reverse automaton");
  if (!query.horizon && !max_window) {
    throw ConfigError("query has an unbounded horizon; online matching needs a maximum window");
  }
  std::uint64_t w = query.horizon ? *query.horizon : std::numeric_limits<std::uint64_t>::max();
  if (max_window) w = std::min<std::uint64_t>(w, *max_window);
  return static_cast<std::size_t>(w);
}

}  // namespace

OnlineSession::OnlineSession(const CompiledQuery& query, std::optional<std::size_t> max_window,
                             std::string channel)
  : query_(&query), channel_(std::move(channel)), window_(effective_window(query, max_window)),
    active_(*query.reverse) {
  bitmaps_.reserve(std::min<std::size_t>(window_, 1 << 16));
  timestamps_.reserve(bitmaps_.capacity());
}

std::optional<MatchRange> OnlineSession::push(const Frame& frame) {
  const std::size_t j = seen_++;
  if (window_ == 0) return std::nullopt;

  const ChannelFrame& ch = select_channel(frame, channel_);
  SymbolBitmap bits = satisfied_symbols(frame, query_->symbols.formulas(), channel_);
  if (bitmaps_.size() < window_) {
    bitmaps_.push_back(std::move(bits));
    timestamps_.push_back(ch.info.timestamp);
  } else {
    bitmaps_[j % window_] = std::move(bits);
    timestamps_[j % window_] = ch.info.timestamp;
  }

  // Read the buffered frames newest first through the reverse automaton.
  const std::size_t depth = std::min(window_, j + 1);
  active_.reset();
  std::optional<MatchRange> best;
  for (std::size_t k = 0; k < depth && !active_.all_dead(); ++k) {
    const std::size_t frame_no = j - k;
    active_.step(bitmaps_[frame_no % window_]);
    if (active_.any_accepting()) best = MatchRange{frame_no, j + 1};
  }
  return best;
}

double OnlineSession::timestamp(std::size_t frame) const {
  if (frame >= seen_ || seen_ - frame > window_) {
    throw ConfigError("frame " + std::to_string(frame) + " is outside the online window");
  }
  return timestamps_[frame % window_];
}

MatchReport make_report(const PerceptionStream& stream, MatchRange range, std::string_view channel,
                        std::string_view query) {
  MatchReport r;
  r.range = range;
  r.query = std::string(query);
  const ChannelFrame& first = select_channel(stream.frames.at(range.start), channel);
  const ChannelFrame& last = select_channel(stream.frames.at(range.end - 1), channel);
  r.channel = first.info.name;
  r.t_start = first.info.timestamp;
  r.t_last = last.info.timestamp;
  return r;
}

}  // namespace spre

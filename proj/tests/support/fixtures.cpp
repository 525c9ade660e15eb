// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "fixtures.hpp"

#include <sstream>

#include "spre/ingest.hpp"

namespace spre::testing {

Frame frame_of(const std::vector<Thing>& things, std::size_t index, double timestamp,
               const std::string& channel) {
  ChannelFrame c;
  c.info.name = channel;
  c.info.timestamp = timestamp;
  c.info.environment_bounds.box = kUniverse;
  for (std::size_t i = 0; i < things.size(); ++i) {
    ObjectAnnotation o;
    o.id = std::to_string(i);
    const auto& attrs = things[i].attributes;
    for (std::size_t k = 0; k < attrs.size(); ++k) {
      o.attributes[k == 0 ? "class" : "tag" + std::to_string(k)] = attrs[k];
    }
    o.region.box = things[i].box;
    c.objects.push_back(std::move(o));
  }
  Frame f;
  f.index = index;
  f.channels.push_back(std::move(c));
  return f;
}

PerceptionStream stream_of(const std::vector<std::vector<Thing>>& frames) {
  PerceptionStream s;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    s.frames.push_back(frame_of(frames[i], i, static_cast<double>(i) / 10.0));
  }
  return s;
}

std::string to_jsonl(const PerceptionStream& stream) {
  std::ostringstream out;
  for (const auto& f : stream.frames) out << write_frame_record(f) << '\n';
  return out.str();
}

namespace corpus {
const char* const kA1 = "[<nonempty>([:pedestrian:] &\n[:bicycle:])]*";
const char* const kA2 =
    "[<nonempty>([:pedestrian:] & [:car:])]{1,} [[:pedestrian:] & ~<nonempty>([:pedestrian:] & "
    "[:car:])]{1,}[<nonempty>([:pedestrian:] & [:car:])]{1,}";
const char* const kA3 =
    "[<exists>(p := [:pedestrian:])(<exists>(q := [:truck:])(<y>(p) < <y>(q) & <dist>(p, q) < 2.0 & "
    "<x>(p) > <x>([:ego:]))))]*";
const char* const kB1 = "[<nonempty>([:pedestrian:]&[:vehicle])]";
const char* const kB2 = "[[:sign:]]{1,200} [<nonempty>(([:vehicle:] | [:pedestrian:]) & [:sign:])]";
const char* const kB3 =
    "[<exists>(v := [:cyclist:])(<x>(v) > <x>([:ego:]) & <y>(v) < <y>([:ego:]) & <dist>(v, [:ego:]) < "
    "1.0]{300}";
const char* const kA3Sugar =
    "[<exists>(p := [:pedestrian:])(<exists>(q := [:truck:])(<leftof>(p, q) & <dist>(p, q) < 2.0 & "
    "<frontof>(p, [:ego:])))]*";
const char* const kExample = "[<nonempty>([:car:] & [:ped:])]* ([[:truck:]] | [[:car:]]) [[:car:] & [:bus:]] [[:bus:]]";
}  // namespace corpus

}  // namespace spre::testing

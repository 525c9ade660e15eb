// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/ingest.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace spre {

namespace {

using nlohmann::json;

class RecordParser {
public:
  RecordParser(const IngestConfig& config, std::size_t line) : config_(config), line_(line) {}

  Frame parse(std::string_view text) {
    json doc;
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw IngestError(std::string("malformed record: ") + e.what(), line_,
                        e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!doc.is_object()) fail("record", "expected a JSON object");

    Frame frame;
    if (auto it = doc.find("index"); it != doc.end()) {
      if (!it->is_number_integer() || it->get<long long>() < 0) {
        fail("index", "expected a nonnegative integer");
      }
      frame.index = it->get<std::size_t>();
    }

    const json& channels = require(doc, "channels", "channels");
    if (!channels.is_array()) fail("channels", "expected an array");
    if (channels.empty()) fail("channels", "a frame needs at least one channel");

    std::set<std::string> names;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      std::string where = "channels[" + std::to_string(c) + "]";
      frame.channels.push_back(parse_channel(channels[c], where));
      if (!names.insert(frame.channels.back().info.name).second) {
        fail(where + ".name", "duplicate channel name '" + frame.channels.back().info.name + "'");
      }
    }
    return frame;
  }

private:
  [[noreturn]] void fail(const std::string& field, const std::string& why) const {
    throw IngestError("schema violation in '" + field + "': " + why, line_, 0);
  }

  const json& require(const json& obj, const char* key, const std::string& where) const {
    auto it = obj.find(key);
    if (it == obj.end()) {
      throw IngestError("schema violation: missing field '" + where + "'", line_, 0);
    }
    return *it;
  }

  double number(const json& v, const std::string& where) const {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
  }

  BoundingRegionSpec parse_box(const json& v, const std::string& where) const {
    if (!v.is_array() || v.size() != 2 || !v[0].is_array() || !v[1].is_array()) {
      fail(where, "expected [[min...],[max...]]");
    }
    const json& lo = v[0];
    const json& hi = v[1];
    if (lo.size() != hi.size() || (lo.size() != 2 && lo.size() != 3)) {
      fail(where, "corners must both have 2 or 3 coordinates");
    }
    BoundingRegionSpec spec;
    spec.kind = lo.size() == 2 ? BoxKind::Box2d : BoxKind::Box3d;
    for (std::size_t d = 0; d < lo.size(); ++d) {
      spec.box.lo[d] = number(lo[d], where);
      spec.box.hi[d] = number(hi[d], where);
      if (spec.box.lo[d] > spec.box.hi[d]) {
        fail(where, "min exceeds max along axis " + std::to_string(d));
      }
    }
    return spec;
  }

  ChannelFrame parse_channel(const json& v, const std::string& where) const {
    if (!v.is_object()) fail(where, "expected an object");
    ChannelFrame channel;
    const json& name = require(v, "name", where + ".name");
    if (!name.is_string()) fail(where + ".name", "expected a string");
    channel.info.name = name.get<std::string>();
    channel.info.timestamp = number(require(v, "timestamp", where + ".timestamp"), where + ".timestamp");
    channel.info.environment_bounds = parse_box(require(v, "bounds", where + ".bounds"), where + ".bounds");

    const auto& env = channel.info.environment_bounds;
    for (int d = 0; d < env.dims(); ++d) {
      if (!(env.box.lo[d] < env.box.hi[d])) {
        fail(where + ".bounds", "environment must have positive extent on every axis");
      }
    }

    if (auto it = v.find("objects"); it != v.end()) {
      if (!it->is_array()) fail(where + ".objects", "expected an array");
      for (std::size_t o = 0; o < it->size(); ++o) {
        channel.objects.push_back(
            parse_object((*it)[o], channel.info, where + ".objects[" + std::to_string(o) + "]", o));
      }
    }
    return channel;
  }

  ObjectAnnotation parse_object(const json& v, const ChannelInfo& channel, const std::string& where,
                                std::size_t position) const {
    if (!v.is_object()) fail(where, "expected an object");
    ObjectAnnotation object;

    if (auto it = v.find("id"); it != v.end()) {
      if (it->is_string()) {
        object.id = it->get<std::string>();
      } else if (it->is_number_integer()) {
        object.id = std::to_string(it->get<long long>());
      } else {
        fail(where + ".id", "expected a string or integer");
      }
    } else {
      object.id = std::to_string(position);
    }

    if (auto it = v.find("attributes"); it != v.end()) {
      if (!it->is_object()) fail(where + ".attributes", "expected an object");
      for (const auto& [key, value] : it->items()) {
        if (key.empty()) fail(where + ".attributes", "attribute keys must be non-empty");
        if (!value.is_string()) fail(where + ".attributes." + key, "expected a string");
        object.attributes[key] = value.get<std::string>();
      }
    }

    const json& cls = require(v, "class", where + ".class");
    if (!cls.is_string()) fail(where + ".class", "expected a string");
    object.attributes[config_.classification_key] = cls.get<std::string>();

    object.region = parse_box(require(v, "bbox", where + ".bbox"), where + ".bbox");
    if (object.region.dims() != channel.environment_bounds.dims()) {
      fail(where + ".bbox", "dimension differs from the channel bounds");
    }
    if (auto it = v.find("rotation"); it != v.end()) {
      if (object.region.kind != BoxKind::Box3d) fail(where + ".rotation", "only 3D boxes may be rotated");
      object.region.rotation = number(*it, where + ".rotation");
    }
    if (auto it = v.find("confidence"); it != v.end()) {
      double c = number(*it, where + ".confidence");
      if (c < 0.0 || c > 1.0) fail(where + ".confidence", "expected a value in [0, 1]");
      object.confidence = c;
    }

    if (config_.clip_to_environment && !object.region.rotation) {
      const auto& env = channel.environment_bounds.box;
      for (int d = 0; d < object.region.dims(); ++d) {
        object.region.box.lo[d] = std::clamp(object.region.box.lo[d], env.lo[d], env.hi[d]);
        object.region.box.hi[d] = std::clamp(object.region.box.hi[d], env.lo[d], env.hi[d]);
      }
    }
    return object;
  }

  const IngestConfig& config_;
  std::size_t line_;
};

nlohmann::ordered_json box_json(const BoundingRegionSpec& spec) {
  nlohmann::ordered_json lo = nlohmann::ordered_json::array();
  nlohmann::ordered_json hi = nlohmann::ordered_json::array();
  for (int d = 0; d < spec.dims(); ++d) {
    lo.push_back(spec.box.lo[d]);
    hi.push_back(spec.box.hi[d]);
  }
  return nlohmann::ordered_json::array({lo, hi});
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; });
}

}  // namespace

Frame parse_frame_record(std::string_view line, const IngestConfig& config, std::size_t line_number) {
  return RecordParser(config, line_number).parse(line);
}

bool validate_key_frame(const Frame& frame, const IngestConfig& config) {
  if (frame.channels.size() < 2) return true;
  auto [lo, hi] = std::minmax_element(
      frame.channels.begin(), frame.channels.end(),
      [](const ChannelFrame& a, const ChannelFrame& b) { return a.info.timestamp < b.info.timestamp; });
  return hi->info.timestamp - lo->info.timestamp <= config.keyframe_threshold;
}

std::string write_frame_record(const Frame& frame, const IngestConfig& config) {
  nlohmann::ordered_json doc;
  doc["index"] = frame.index;
  auto& channels = doc["channels"] = nlohmann::ordered_json::array();
  for (const auto& ch : frame.channels) {
    nlohmann::ordered_json c;
    c["name"] = ch.info.name;
    c["timestamp"] = ch.info.timestamp;
    c["bounds"] = box_json(ch.info.environment_bounds);
    auto& objects = c["objects"] = nlohmann::ordered_json::array();
    for (const auto& o : ch.objects) {
      nlohmann::ordered_json obj;
      obj["id"] = o.id;
      auto cls = o.attributes.find(config.classification_key);
      obj["class"] = cls != o.attributes.end() ? cls->second : std::string();
      nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
      for (const auto& [k, val] : o.attributes) {
        if (k != config.classification_key) attrs[k] = val;
      }
      obj["attributes"] = std::move(attrs);
      obj["bbox"] = box_json(o.region);
      if (o.region.rotation) obj["rotation"] = *o.region.rotation;
      if (o.confidence) obj["confidence"] = *o.confidence;
      objects.push_back(std::move(obj));
    }
    channels.push_back(std::move(c));
  }
  return doc.dump();
}

StreamReader::StreamReader(std::istream& in, IngestConfig config, WarningSink warn)
  : in_(in), config_(std::move(config)), warn_(std::move(warn)) {}

std::optional<Frame> StreamReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (blank(line)) continue;

    Frame frame = parse_frame_record(line, config_, line_number_);
    if (!validate_key_frame(frame, config_)) {
      if (!config_.drop_misaligned) {
        throw IngestError("channel timestamps differ by more than " +
                              std::to_string(config_.keyframe_threshold) + "s (not a key-frame)",
                          line_number_, 0);
      }
      ++dropped_;
      if (warn_) warn_("line " + std::to_string(line_number_) + ": dropped misaligned frame");
      continue;
    }
    if (frame.index != next_index_ && warn_) {
      warn_("line " + std::to_string(line_number_) + ": declared index " + std::to_string(frame.index) +
            " reassigned to " + std::to_string(next_index_));
    }
    frame.index = next_index_++;
    return frame;
  }
  return std::nullopt;
}

PerceptionStream load_stream(std::istream& in, const IngestConfig& config, StreamReader::WarningSink warn) {
  PerceptionStream stream;
  StreamReader reader(in, config, std::move(warn));
  while (auto frame = reader.next()) stream.frames.push_back(std::move(*frame));
  return stream;
}

}  // namespace spre

/* Copyright 2026 The archsynth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "archsynth/config.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "archsynth/error.hpp"
#include "archsynth/json_text.hpp"
#include "archsynth/scene_io.hpp"
#include "archsynth/scenegen.hpp"

namespace archsynth {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct RealField {
  const char* name;
  RealInterval RoomRanges::*member;
};
struct CountField {
  const char* name;
  CountInterval RoomRanges::*member;
};

constexpr std::array kRealFields{
    RealField{"width_m", &RoomRanges::width_m},
    RealField{"depth_m", &RoomRanges::depth_m},
    RealField{"height_m", &RoomRanges::height_m},
    RealField{"window_width_m", &RoomRanges::window_width_m},
    RealField{"window_height_m", &RoomRanges::window_height_m},
    RealField{"window_sill_m", &RoomRanges::window_sill_m},
    RealField{"door_width_m", &RoomRanges::door_width_m},
    RealField{"door_height_m", &RoomRanges::door_height_m},
    RealField{"blackboard_width_m", &RoomRanges::blackboard_width_m},
    RealField{"blackboard_height_m", &RoomRanges::blackboard_height_m},
    RealField{"blackboard_bottom_m", &RoomRanges::blackboard_bottom_m},
    RealField{"chair_scale", &RoomRanges::chair_scale},
    RealField{"box_width_m", &RoomRanges::box_width_m},
    RealField{"box_height_m", &RoomRanges::box_height_m},
    RealField{"box_depth_m", &RoomRanges::box_depth_m},
    RealField{"clutter_saturation", &RoomRanges::clutter_saturation},
    RealField{"clutter_value", &RoomRanges::clutter_value},
    RealField{"wall_value", &RoomRanges::wall_value},
    RealField{"floor_value", &RoomRanges::floor_value},
    RealField{"ceiling_value", &RoomRanges::ceiling_value},
    RealField{"architecture_saturation", &RoomRanges::architecture_saturation},
    RealField{"ambient", &RoomRanges::ambient},
    RealField{"sky_radiance", &RoomRanges::sky_radiance},
};

constexpr std::array kCountFields{
    CountField{"window_count", &RoomRanges::window_count},
    CountField{"door_count", &RoomRanges::door_count},
    CountField{"chair_count", &RoomRanges::chair_count},
    CountField{"clutter_floor_count", &RoomRanges::clutter_floor_count},
    CountField{"clutter_ceiling_count", &RoomRanges::clutter_ceiling_count},
    CountField{"clutter_wall_count", &RoomRanges::clutter_wall_count},
};

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field, message);
}

double as_real(const Json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::int64_t as_integer(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::nearbyint(v) == v && std::abs(v) < 9.0e15) {
      return static_cast<std::int64_t>(v);
    }
  }
  fail(field, "expected an integer");
}

std::uint64_t as_unsigned(const Json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const std::int64_t v = as_integer(j, field);
  if (v < 0) fail(field, "must be non-negative");
  return static_cast<std::uint64_t>(v);
}

int as_int(const Json& j, const std::string& field) {
  const std::int64_t v = as_integer(j, field);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(field, "out of range");
  }
  return static_cast<int>(v);
}

std::string as_string(const Json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

const Json& pair_array(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected [min, max]");
  return j;
}

void require_object(const Json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
}

void apply_ranges(RoomRanges& r, const Json& j) {
  require_object(j, "ranges");
  for (const auto& [key, value] : j.items()) {
    const std::string field = "ranges." + key;
    bool known = false;
    for (const auto& f : kRealFields) {
      if (key == f.name) {
        const Json& a = pair_array(value, field);
        r.*f.member = {as_real(a[0], field), as_real(a[1], field)};
        known = true;
      }
    }
    for (const auto& f : kCountFields) {
      if (key == f.name) {
        const Json& a = pair_array(value, field);
        r.*f.member = {as_int(a[0], field), as_int(a[1], field)};
        known = true;
      }
    }
    if (key == "min_pier_m") {
      r.min_pier_m = as_real(value, field);
      known = true;
    } else if (key == "camera_vfov_deg") {
      r.camera_vfov_deg = as_real(value, field);
      known = true;
    }
    if (!known) fail(field, "unknown key");
  }
}

void apply_render(RenderSettings& s, const Json& j) {
  require_object(j, "render");
  for (const auto& [key, value] : j.items()) {
    const std::string field = "render." + key;
    if (key == "resolution") {
      s.resolution = as_int(value, field);
    } else if (key == "samples_per_pixel") {
      s.samples_per_pixel = as_int(value, field);
    } else if (key == "shadow_samples") {
      s.shadow_samples = as_int(value, field);
    } else if (key == "depth_max_m") {
      s.depth_max_m = as_real(value, field);
    } else if (key == "exposure") {
      s.exposure = as_real(value, field);
    } else if (key == "render_seed") {
      s.render_seed = as_unsigned(value, field);
    } else if (key == "door_label") {
      const std::string v = as_string(value, field);
      if (v == "magenta") {
        s.door_label = DoorLabel::magenta;
      } else if (v == "wall") {
        s.door_label = DoorLabel::wall;
      } else {
        fail(field, "expected \"magenta\" or \"wall\"");
      }
    } else {
      fail(field, "unknown key");
    }
  }
}

void apply_split(RunConfig& c, const Json& j) {
  require_object(j, "split");
  for (const auto& [key, value] : j.items()) {
    const std::string field = "split." + key;
    if (key == "seed") {
      c.split_seed = as_unsigned(value, field);
    } else if (key == "counts") {
      if (value.is_null()) {
        c.split_counts.reset();
        continue;
      }
      if (!value.is_array() || value.size() != 3) {
        fail(field, "expected [train, val, test] or null");
      }
      c.split_counts = SplitCounts{as_unsigned(value[0], field),
                                   as_unsigned(value[1], field),
                                   as_unsigned(value[2], field)};
    } else {
      fail(field, "unknown key");
    }
  }
}

void apply_eval(RunConfig& c, const Json& j) {
  require_object(j, "eval");
  for (const auto& [key, value] : j.items()) {
    const std::string field = "eval." + key;
    if (key == "threshold") {
      c.eval.threshold = as_int(value, field);
    } else if (key == "mode") {
      const std::string v = as_string(value, field);
      if (v == "per_channel") {
        c.eval.mode = ErrorMode::per_channel;
      } else if (v == "summed") {
        c.eval.mode = ErrorMode::summed;
      } else {
        fail(field, "expected \"per_channel\" or \"summed\"");
      }
    } else if (key == "target") {
      if (value.is_null()) {
        c.eval_target.reset();
        continue;
      }
      const std::string v = as_string(value, field);
      if (v == "label") {
        c.eval_target = TargetKind::label;
      } else if (v == "depth") {
        c.eval_target = TargetKind::depth;
      } else {
        fail(field, "expected \"label\", \"depth\" or null");
      }
    } else if (key == "gt_source") {
      const std::string v = as_string(value, field);
      if (v == "image") {
        c.gt_source = GtSource::image;
      } else if (v == "pair_right_half") {
        c.gt_source = GtSource::pair_right_half;
      } else {
        fail(field, "expected \"image\" or \"pair_right_half\"");
      }
    } else {
      fail(field, "unknown key");
    }
  }
}

void apply_json(RunConfig& c, const Json& j) {
  require_object(j, "config");
  // Work on a copy so a failed overlay leaves the target untouched.
  RunConfig next = c;
  for (const auto& [key, value] : j.items()) {
    if (key == "ranges") {
      apply_ranges(next.ranges, value);
    } else if (key == "render") {
      apply_render(next.settings, value);
    } else if (key == "split") {
      apply_split(next, value);
    } else if (key == "eval") {
      apply_eval(next, value);
    } else if (key == "output_root") {
      next.output_root = as_string(value, key);
    } else if (key == "seed_start") {
      next.seed_start = as_unsigned(value, key);
    } else if (key == "seed_count") {
      next.seed_count = as_unsigned(value, key);
    } else if (key == "workers") {
      const std::uint64_t w = as_unsigned(value, key);
      if (w > 1024) fail(key, "must lie in [0, 1024]");
      next.workers = static_cast<unsigned>(w);
    } else {
      fail(key, "unknown key");
    }
  }
  c = std::move(next);
}

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    fail(what, std::string("malformed structured text: ") + e.what());
  }
}

}  // namespace

void apply_config_text(RunConfig& config, std::string_view text) {
  apply_json(config, parse_json(text, "config"));
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    fail("config", e.what());
  }
  apply_config_text(config, text);
}

void set_config_value(RunConfig& config, std::string_view key,
                      std::string_view value_text) {
  const std::string name(key);
  if (name.empty()) fail("config", "empty key");
  Json value = parse_json(value_text, name);
  Json patch = Json::object();
  Json* node = &patch;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = name.find('.', start);
    const std::string part = name.substr(start, dot - start);
    if (part.empty()) fail(name, "malformed key");
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      break;
    }
    node = &(*node)[part];
    *node = Json::object();
    start = dot + 1;
  }
  apply_json(config, patch);
}

std::string config_to_text(const RunConfig& c) {
  OrderedJson doc;
  doc["output_root"] = c.output_root.generic_string();
  doc["seed_start"] = c.seed_start;
  doc["seed_count"] = c.seed_count;
  doc["workers"] = c.workers;

  OrderedJson ranges;
  for (const auto& f : kRealFields) {
    const RealInterval& iv = c.ranges.*f.member;
    ranges[f.name] = OrderedJson::array({iv.min, iv.max});
  }
  for (const auto& f : kCountFields) {
    const CountInterval& iv = c.ranges.*f.member;
    ranges[f.name] = OrderedJson::array({iv.min, iv.max});
  }
  ranges["min_pier_m"] = c.ranges.min_pier_m;
  ranges["camera_vfov_deg"] = c.ranges.camera_vfov_deg;
  doc["ranges"] = ranges;

  const RenderSettings& s = c.settings;
  OrderedJson render;
  render["resolution"] = s.resolution;
  render["samples_per_pixel"] = s.samples_per_pixel;
  render["shadow_samples"] = s.shadow_samples;
  render["depth_max_m"] = s.depth_max_m;
  render["exposure"] = s.exposure;
  render["render_seed"] = s.render_seed;
  render["door_label"] = s.door_label == DoorLabel::magenta ? "magenta" : "wall";
  doc["render"] = render;

  OrderedJson split;
  split["seed"] = c.split_seed;
  if (c.split_counts) {
    split["counts"] = OrderedJson::array(
        {c.split_counts->train, c.split_counts->val, c.split_counts->test});
  } else {
    split["counts"] = nullptr;
  }
  doc["split"] = split;

  OrderedJson eval;
  eval["threshold"] = c.eval.threshold;
  eval["mode"] = c.eval.mode == ErrorMode::per_channel ? "per_channel" : "summed";
  if (c.eval_target) {
    eval["target"] = std::string(to_string(*c.eval_target));
  } else {
    eval["target"] = nullptr;
  }
  eval["gt_source"] =
      c.gt_source == GtSource::image ? "image" : "pair_right_half";
  doc["eval"] = eval;
  return to_fixed_text(doc);
}

std::string get_config_value(const RunConfig& config, std::string_view key,
                             bool raw_string) {
  const std::string name(key);
  const Json doc = Json::parse(config_to_text(config));
  const Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = name.find('.', start);
    const std::string part = name.substr(start, dot - start);
    if (!node->is_object() || !node->contains(part)) fail(name, "unknown key");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (raw_string && node->is_string()) return node->get<std::string>();
  return node->dump();
}

void validate_config(const RunConfig& c) {
  validate_ranges(c.ranges);
  validate_settings(c.settings);
  if (c.eval.threshold < 0 || c.eval.threshold > 255 * 2) {
    fail("eval.threshold", "must lie in [0, 510]");
  }
  if (c.seed_count == 0) fail("seed_count", "must be positive");
  if (c.seed_start > std::numeric_limits<std::uint64_t>::max() - c.seed_count) {
    fail("seed_count", "seed range overflows");
  }
  if (c.split_counts && c.split_counts->total() != c.seed_count) {
    fail("split.counts", "must sum to seed_count (" +
                             std::to_string(c.seed_count) + ")");
  }
  if (c.settings.resolution % 2 != 0) {
    fail("render.resolution", "must be even for paired images");
  }
}

}  // namespace archsynth

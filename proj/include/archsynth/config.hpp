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

// Run configuration shared by the C API and the command-line tool.
//
// Structured-text form (every key optional; missing keys keep their current
// value, unknown keys are rejected):
//
//   {
//     "output_root": "out", "seed_start": 0, "seed_count": 10, "workers": 1,
//     "ranges": { "width_m": [6, 12], "window_count": [1, 4], ... },
//     "render": { "resolution": 512, "samples_per_pixel": 8, ... },
//     "split":  { "seed": 0, "counts": [750, 200, 50] },
//     "eval":   { "threshold": 10, "mode": "per_channel", "target": "label",
//                 "gt_source": "image" }
//   }
//
// Intervals are two-element [min, max] arrays. "split.counts" may be null for
// 75/20/5 proportions of the seed count; "eval.target" may be null to match
// ground truth by seed alone.

#ifndef ARCHSYNTH_CONFIG_HPP_
#define ARCHSYNTH_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "archsynth/dataset.hpp"
#include "archsynth/evalmetrics.hpp"
#include "archsynth/render.hpp"
#include "archsynth/scene.hpp"

namespace archsynth {

struct RunConfig {
  RoomRanges ranges;
  RenderSettings settings;
  std::optional<SplitCounts> split_counts;
  std::uint64_t split_seed = 0;
  EvalConfig eval;
  std::optional<TargetKind> eval_target;
  GtSource gt_source = GtSource::image;
  std::filesystem::path output_root = ".";
  std::uint64_t seed_start = 0;
  std::uint64_t seed_count = 10;
  unsigned workers = 1;  // 0 = hardware concurrency

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Overlays the keys present in `text` onto `config`. Throws ConfigError naming
// the offending key on syntax, type or unknown-key errors. Values are not
// range-checked here; see validate_config().
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// Sets one dotted key ("render.resolution", "ranges.width_m") from a
// structured-text value ("64", "[6, 8]", "\"depth\"").
void set_config_value(RunConfig& config, std::string_view key,
                      std::string_view value_text);

// Value of one dotted key as structured text; string values are returned
// unquoted when `raw_string` is set. Throws ConfigError for unknown keys.
std::string get_config_value(const RunConfig& config, std::string_view key,
                             bool raw_string = false);

// Full configuration in the documented form; parsing it back yields `config`.
std::string config_to_text(const RunConfig& config);

// Throws ConfigError naming the first invalid field.
void validate_config(const RunConfig& config);

}  // namespace archsynth

#endif  // ARCHSYNTH_CONFIG_HPP_

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

// Paired-image datasets.
//
// Layout under the output root:
//   dataset_manifest.json
//   <split>/scene_<seed>.json
//   <split>/<seed>_photo.png, <seed>_label.png, <seed>_depth.png
//   <split>/<seed>_meta.json             provenance marker, written last
//   pairs/label/<split>/<seed>.png       photo | label
//   pairs/depth/<split>/<seed>.png       photo | depth (gray in all 3 channels)
// where <split> is train, val or test and <seed> is zero-padded to 8 digits.
// A pair is an RGB image of width N and height N/2 for N x N renders: the
// downscaled photo on the left, the downscaled target on the right.

#ifndef ARCHSYNTH_DATASET_HPP_
#define ARCHSYNTH_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "archsynth/image.hpp"
#include "archsynth/render.hpp"
#include "archsynth/scene.hpp"

namespace archsynth {

enum class Split { train, val, test };
enum class TargetKind { label, depth };

std::string_view to_string(Split split);
std::string_view to_string(TargetKind kind);
Split parse_split(std::string_view name);

inline constexpr int kManifestFormatVersion = 1;
inline constexpr std::string_view kManifestFileName = "dataset_manifest.json";

struct SplitCounts {
  std::size_t train = 750;
  std::size_t val = 200;
  std::size_t test = 50;

  std::size_t total() const { return train + val + test; }
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

// 75/20/5 proportions for n entries, rounded half up for train and test
// (test keeps at least one entry once n >= 3); val takes the rest.
// (750, 200, 50) when n == 1000, (8, 1, 1) when n == 10.
SplitCounts proportional_counts(std::size_t n);

struct ManifestEntry {
  std::uint64_t seed = 0;
  Split split = Split::train;
  std::uint64_t provenance = 0;
  // Relative to the dataset root, '/'-separated.
  std::string scene;
  std::string photo;
  std::string label;
  std::string depth;
  std::string pair_label;
  std::string pair_depth;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  int format_version = kManifestFormatVersion;
  std::uint64_t split_seed = 0;
  std::uint64_t settings_hash = 0;
  SplitCounts counts;
  std::vector<ManifestEntry> entries;  // ascending seed
  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

// 2x2 box filter with round-half-up; requires even dimensions.
Image downscale_area(const Image& image);
// Keeps the top-left pixel of each 2x2 block.
Image downscale_nearest(const Image& image);

// Both inputs must be N x N with N even; the input must be RGB. Label targets
// must be RGB, depth targets single-channel.
Image compose_pair(const Image& input, const Image& target, TargetKind kind);

// Splits a pair back into its (input, target) halves.
std::pair<Image, Image> split_pair(const Image& pair);

// Deterministic shuffled partition. Entries come back sorted by seed with
// their split tags. Throws InputError if counts do not sum to seeds.size().
DatasetManifest split_manifest(std::span<const std::uint64_t> seeds,
                               SplitCounts counts, std::uint64_t split_seed);

std::string serialize_manifest(const DatasetManifest& manifest);
DatasetManifest parse_manifest(std::string_view text);

// Provenance of one scene's outputs: hash of the scene text and settings.
std::uint64_t scene_provenance(const SceneSpec& scene,
                               const RenderSettings& settings);

struct BuildOptions {
  std::uint64_t seed_start = 0;
  std::size_t seed_count = 10;
  RoomRanges ranges;
  RenderSettings settings;
  std::optional<SplitCounts> counts;  // proportional when unset
  std::uint64_t split_seed = 0;
  std::filesystem::path root;
  unsigned workers = 1;
};

struct BuildResult {
  DatasetManifest manifest;
  std::vector<std::uint64_t> rendered;  // seeds rendered in this run
  std::size_t skipped = 0;
};

// Renders and packages every seed, skipping scenes whose outputs already
// exist with matching provenance. Throws IoError carrying the failing seed.
BuildResult build_dataset(const BuildOptions& options);

}  // namespace archsynth

#endif  // ARCHSYNTH_DATASET_HPP_

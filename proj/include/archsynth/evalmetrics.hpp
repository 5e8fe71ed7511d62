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

// Pixel-accuracy scoring of predicted images against ground truth.

#ifndef ARCHSYNTH_EVALMETRICS_HPP_
#define ARCHSYNTH_EVALMETRICS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "archsynth/dataset.hpp"
#include "archsynth/image.hpp"

namespace archsynth {

enum class ErrorMode {
  per_channel,  // every channel must satisfy (p - g)^2 <= t^2
  summed,       // sum over channels of (p - g)^2 <= t^2
};

struct EvalConfig {
  int threshold = 10;
  ErrorMode mode = ErrorMode::per_channel;
  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

inline constexpr std::size_t kHistogramBins = 20;

struct ImageScore {
  std::uint64_t seed = 0;
  std::string pred_file;
  std::string gt_file;
  double score = 0.0;
};

struct EvalReport {
  std::vector<ImageScore> images;  // empty when built from bare scores
  std::vector<double> scores;
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  // Bin k counts scores in [k/20, (k+1)/20); 1.0 lands in the last bin.
  std::array<std::size_t, kHistogramBins> histogram{};
  EvalConfig config;
};

// Fraction of pixels equal in every channel.
double exact_accuracy(const Image& pred, const Image& gt);

// Fraction of pixels within the squared-error threshold. threshold == 0 is
// the exact metric.
double thresh_accuracy(const Image& pred, const Image& gt,
                       const EvalConfig& config = {});

// Scores are summed in the given order. Throws InputError for an empty list
// or any score outside [0, 1].
EvalReport aggregate(std::span<const double> scores,
                     const EvalConfig& config = {});

enum class GtSource {
  image,            // ground-truth files are compared whole
  pair_right_half,  // ground-truth files are pairs; use the target half
};

struct DirectoryEvalOptions {
  EvalConfig config;
  // Selects ground-truth files named <seed>_<target>.png when set.
  std::optional<TargetKind> target;
  GtSource gt_source = GtSource::image;
};

// Pairs prediction and ground-truth PNGs by the first run of digits in their
// file names and scores them in ascending seed order. Throws InputError
// listing every prediction without a ground-truth counterpart.
EvalReport evaluate_directory(const std::filesystem::path& pred_dir,
                              const std::filesystem::path& gt_dir,
                              const DirectoryEvalOptions& options = {});

// Scene seed embedded in a file name: the first run of decimal digits.
std::optional<std::uint64_t> seed_from_file_name(const std::string& name);

std::string serialize_report(const EvalReport& report);
std::string report_csv(const EvalReport& report);
std::string report_table(const EvalReport& report);

}  // namespace archsynth

#endif  // ARCHSYNTH_EVALMETRICS_HPP_

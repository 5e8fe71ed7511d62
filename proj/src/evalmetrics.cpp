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

#include "archsynth/evalmetrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "archsynth/error.hpp"
#include "archsynth/json_text.hpp"

namespace archsynth {

namespace fs = std::filesystem;

namespace {

void require_same_shape(const Image& pred, const Image& gt) {
  if (!pred.same_shape(gt)) {
    throw InputError("image shape mismatch: " + std::to_string(pred.width) +
                     "x" + std::to_string(pred.height) + "x" +
                     std::to_string(pred.channels) + " vs " +
                     std::to_string(gt.width) + "x" + std::to_string(gt.height) +
                     "x" + std::to_string(gt.channels));
  }
  if (pred.pixel_count() == 0) throw InputError("empty image");
}

}  // namespace

double exact_accuracy(const Image& pred, const Image& gt) {
  require_same_shape(pred, gt);
  const auto c = static_cast<std::size_t>(pred.channels);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
    correct += std::equal(pred.pixels.begin() + i * c,
                          pred.pixels.begin() + (i + 1) * c,
                          gt.pixels.begin() + i * c);
  }
  return static_cast<double>(correct) / static_cast<double>(pred.pixel_count());
}

double thresh_accuracy(const Image& pred, const Image& gt,
                       const EvalConfig& config) {
  require_same_shape(pred, gt);
  if (config.threshold < 0) throw InputError("threshold must be non-negative");
  const long limit = static_cast<long>(config.threshold) * config.threshold;
  const auto c = static_cast<std::size_t>(pred.channels);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
    const std::uint8_t* p = pred.pixels.data() + i * c;
    const std::uint8_t* g = gt.pixels.data() + i * c;
    bool ok = true;
    long sum = 0;
    for (std::size_t k = 0; k < c; ++k) {
      const long diff = static_cast<long>(p[k]) - g[k];
      if (config.mode == ErrorMode::per_channel) {
        ok = ok && diff * diff <= limit;
      } else {
        sum += diff * diff;
      }
    }
    if (config.mode == ErrorMode::summed) ok = sum <= limit;
    correct += ok;
  }
  return static_cast<double>(correct) / static_cast<double>(pred.pixel_count());
}

EvalReport aggregate(std::span<const double> scores, const EvalConfig& config) {
  if (scores.empty()) throw InputError("aggregate: no scores");
  EvalReport report;
  report.config = config;
  report.scores.assign(scores.begin(), scores.end());
  report.count = scores.size();
  report.min = scores[0];
  report.max = scores[0];
  double sum = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw InputError("aggregate: score " + std::to_string(s) +
                       " outside [0, 1]");
    }
    sum += s;
    report.min = std::min(report.min, s);
    report.max = std::max(report.max, s);
    const auto bin = std::min<std::size_t>(
        kHistogramBins - 1,
        static_cast<std::size_t>(std::floor(s * static_cast<double>(kHistogramBins))));
    ++report.histogram[bin];
  }
  // Clamp guards the invariant min <= mean <= max against rounding.
  report.mean = std::clamp(sum / static_cast<double>(scores.size()), report.min,
                           report.max);
  return report;
}

std::optional<std::uint64_t> seed_from_file_name(const std::string& name) {
  auto it = std::find_if(name.begin(), name.end(),
                         [](unsigned char ch) { return std::isdigit(ch); });
  if (it == name.end()) return std::nullopt;
  std::uint64_t value = 0;
  for (; it != name.end() && std::isdigit(static_cast<unsigned char>(*it)); ++it) {
    const auto digit = static_cast<std::uint64_t>(*it - '0');
    if (value > (UINT64_MAX - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
  }
  return value;
}

namespace {

std::vector<fs::path> list_pngs(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool has_target_suffix(const fs::path& file, TargetKind target) {
  const std::string stem = file.stem().string();
  const std::string suffix = "_" + std::string(to_string(target));
  return stem.size() >= suffix.size() &&
         stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

EvalReport evaluate_directory(const fs::path& pred_dir, const fs::path& gt_dir,
                              const DirectoryEvalOptions& options) {
  std::map<std::uint64_t, fs::path> gt_by_seed;
  for (const auto& file : list_pngs(gt_dir)) {
    if (options.target && !has_target_suffix(file, *options.target)) continue;
    const auto seed = seed_from_file_name(file.filename().string());
    if (!seed) continue;
    auto [it, inserted] = gt_by_seed.emplace(*seed, file);
    if (!inserted) {
      throw InputError("ambiguous ground truth for seed " + std::to_string(*seed) +
                       ": " + it->second.filename().string() + " and " +
                       file.filename().string() +
                       " (select one with a target kind)");
    }
  }

  std::map<std::uint64_t, fs::path> pred_by_seed;
  std::vector<std::string> orphans;
  for (const auto& file : list_pngs(pred_dir)) {
    const auto seed = seed_from_file_name(file.filename().string());
    if (!seed || !gt_by_seed.count(*seed) || pred_by_seed.count(*seed)) {
      orphans.push_back(file.filename().string());
      continue;
    }
    pred_by_seed.emplace(*seed, file);
  }
  if (!orphans.empty()) {
    std::string message = "predictions without ground truth:";
    for (const auto& name : orphans) message += " " + name;
    throw InputError(message);
  }
  if (pred_by_seed.empty()) {
    throw InputError("no predictions found in " + pred_dir.string());
  }

  std::vector<ImageScore> images;
  std::vector<double> scores;
  for (const auto& [seed, pred_file] : pred_by_seed) {
    const fs::path& gt_file = gt_by_seed.at(seed);
    const Image pred = read_png(pred_file);
    Image gt = read_png(gt_file);
    if (options.gt_source == GtSource::pair_right_half) {
      gt = split_pair(gt).second;
    }
    double score = 0.0;
    try {
      score = thresh_accuracy(pred, gt, options.config);
    } catch (const InputError& e) {
      throw InputError(pred_file.filename().string() + ": " + e.what());
    }
    images.push_back({seed, pred_file.filename().string(),
                      gt_file.filename().string(), score});
    scores.push_back(score);
  }
  EvalReport report = aggregate(scores, options.config);
  report.images = std::move(images);
  return report;
}

std::string serialize_report(const EvalReport& r) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config;
  config["threshold"] = r.config.threshold;
  config["mode"] =
      r.config.mode == ErrorMode::per_channel ? "per_channel" : "summed";
  doc["config"] = config;
  doc["count"] = r.count;
  doc["mean"] = r.mean;
  doc["min"] = r.min;
  doc["max"] = r.max;
  doc["histogram"] = nlohmann::ordered_json(r.histogram);
  doc["images"] = nlohmann::ordered_json::array();
  for (const auto& image : r.images) {
    nlohmann::ordered_json j;
    j["seed"] = image.seed;
    j["pred"] = image.pred_file;
    j["gt"] = image.gt_file;
    j["score"] = image.score;
    doc["images"].push_back(j);
  }
  return to_fixed_text(doc);
}

std::string report_csv(const EvalReport& r) {
  std::string out = "seed,score\n";
  char buf[64];
  if (!r.images.empty()) {
    for (const auto& image : r.images) {
      std::snprintf(buf, sizeof buf, "%llu,%.6f\n",
                    static_cast<unsigned long long>(image.seed), image.score);
      out += buf;
    }
  } else {
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.6f\n", i, r.scores[i]);
      out += buf;
    }
  }
  return out;
}

std::string report_table(const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "threshold  mode         images  mean   min    max\n"
                "%-9d  %-11s  %-6zu  %.3f  %.3f  %.3f\n",
                r.config.threshold,
                r.config.mode == ErrorMode::per_channel ? "per_channel"
                                                        : "summed",
                r.count, r.mean, r.min, r.max);
  return buf;
}

}  // namespace archsynth

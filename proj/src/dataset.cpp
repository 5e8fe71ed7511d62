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

#include "archsynth/dataset.hpp"

#include <algorithm>
#include <numeric>

#include "archsynth/error.hpp"
#include "archsynth/json_text.hpp"
#include "archsynth/rng.hpp"
#include "archsynth/scene_io.hpp"
#include "archsynth/scenegen.hpp"
#include "log.hpp"

namespace archsynth {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "?";
}

std::string_view to_string(TargetKind kind) {
  return kind == TargetKind::label ? "label" : "depth";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "val") return Split::val;
  if (name == "test") return Split::test;
  throw InputError("unknown split '" + std::string(name) + "'");
}

SplitCounts proportional_counts(std::size_t n) {
  SplitCounts c;
  c.train = (n * 75 + 50) / 100;
  c.test = (n * 5 + 50) / 100;
  if (c.test == 0 && n >= 3) c.test = 1;
  c.test = std::min(c.test, n - c.train);
  c.val = n - c.train - c.test;
  return c;
}

namespace {

void require_even(const Image& image, const char* what) {
  if (image.width % 2 != 0 || image.height % 2 != 0 || image.width == 0 ||
      image.height == 0) {
    throw InputError(std::string(what) + ": dimensions must be positive and even");
  }
}

}  // namespace

Image downscale_area(const Image& image) {
  require_even(image, "downscale_area");
  Image out(image.width / 2, image.height / 2, image.channels);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const std::uint8_t* a = image.at(2 * x, 2 * y);
      const std::uint8_t* b = image.at(2 * x + 1, 2 * y);
      const std::uint8_t* c = image.at(2 * x, 2 * y + 1);
      const std::uint8_t* d = image.at(2 * x + 1, 2 * y + 1);
      std::uint8_t* o = out.at(x, y);
      for (int k = 0; k < image.channels; ++k) {
        o[k] = static_cast<std::uint8_t>((a[k] + b[k] + c[k] + d[k] + 2) / 4);
      }
    }
  }
  return out;
}

Image downscale_nearest(const Image& image) {
  require_even(image, "downscale_nearest");
  Image out(image.width / 2, image.height / 2, image.channels);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      std::copy_n(image.at(2 * x, 2 * y), image.channels, out.at(x, y));
    }
  }
  return out;
}

Image compose_pair(const Image& input, const Image& target, TargetKind kind) {
  if (input.width != input.height || target.width != input.width ||
      target.height != input.height) {
    throw InputError("compose_pair: input and target must be equal N x N images");
  }
  if (input.channels != 3) {
    throw InputError("compose_pair: input must be RGB");
  }
  const int want = kind == TargetKind::label ? 3 : 1;
  if (target.channels != want) {
    throw InputError(std::string("compose_pair: ") +
                     std::string(to_string(kind)) + " target must have " +
                     std::to_string(want) + " channel(s)");
  }
  const Image left = downscale_area(input);
  const Image right = downscale_nearest(target);
  const int half = left.width;
  Image pair(2 * half, half, 3);
  for (int y = 0; y < half; ++y) {
    for (int x = 0; x < half; ++x) {
      std::copy_n(left.at(x, y), 3, pair.at(x, y));
      std::uint8_t* dst = pair.at(half + x, y);
      const std::uint8_t* src = right.at(x, y);
      if (kind == TargetKind::label) {
        std::copy_n(src, 3, dst);
      } else {
        dst[0] = dst[1] = dst[2] = src[0];
      }
    }
  }
  return pair;
}

std::pair<Image, Image> split_pair(const Image& pair) {
  if (pair.width != 2 * pair.height || pair.channels != 3) {
    throw InputError("split_pair: expected an RGB image twice as wide as tall");
  }
  const int half = pair.height;
  Image left(half, half, 3);
  Image right(half, half, 3);
  for (int y = 0; y < half; ++y) {
    std::copy_n(pair.at(0, y), 3 * half, left.at(0, y));
    std::copy_n(pair.at(half, y), 3 * half, right.at(0, y));
  }
  return {std::move(left), std::move(right)};
}

DatasetManifest split_manifest(std::span<const std::uint64_t> seeds,
                               SplitCounts counts, std::uint64_t split_seed) {
  if (counts.total() != seeds.size()) {
    throw InputError("split counts (" + std::to_string(counts.train) + ", " +
                     std::to_string(counts.val) + ", " +
                     std::to_string(counts.test) + ") do not sum to " +
                     std::to_string(seeds.size()) + " entries");
  }
  std::vector<std::uint64_t> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("split_manifest: duplicate seeds");
  }
  std::vector<std::size_t> order(sorted.size());
  std::iota(order.begin(), order.end(), 0);
  RandomStream rng = RandomStream::derive(split_seed, "split");
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i - 1)));
    std::swap(order[i - 1], order[j]);
  }
  DatasetManifest manifest;
  manifest.split_seed = split_seed;
  manifest.counts = counts;
  manifest.entries.resize(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    manifest.entries[i].seed = sorted[i];
  }
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Split split = rank < counts.train ? Split::train
                        : rank < counts.train + counts.val ? Split::val
                                                           : Split::test;
    manifest.entries[order[rank]].split = split;
  }
  return manifest;
}

std::string serialize_manifest(const DatasetManifest& m) {
  Json doc;
  doc["format_version"] = m.format_version;
  doc["split_seed"] = m.split_seed;
  doc["settings_hash"] = hex64(m.settings_hash);
  Json counts;
  counts["train"] = m.counts.train;
  counts["val"] = m.counts.val;
  counts["test"] = m.counts.test;
  doc["counts"] = counts;
  doc["entries"] = Json::array();
  for (const auto& e : m.entries) {
    Json j;
    j["seed"] = e.seed;
    j["split"] = std::string(to_string(e.split));
    j["provenance"] = hex64(e.provenance);
    j["scene"] = e.scene;
    j["photo"] = e.photo;
    j["label"] = e.label;
    j["depth"] = e.depth;
    j["pair_label"] = e.pair_label;
    j["pair_depth"] = e.pair_depth;
    doc["entries"].push_back(j);
  }
  return to_fixed_text(doc);
}

namespace {

const Json& member(const Json& node, const char* key) {
  auto it = node.find(key);
  if (it == node.end()) {
    throw InputError(std::string("manifest: missing key '") + key + "'");
  }
  return *it;
}

std::string member_text(const Json& node, const char* key) {
  const Json& v = member(node, key);
  if (!v.is_string()) {
    throw InputError(std::string("manifest: '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t member_uint(const Json& node, const char* key) {
  const Json& v = member(node, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v >= 0)) {
    throw InputError(std::string("manifest: '") + key +
                     "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

DatasetManifest parse_manifest(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("manifest: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("manifest: expected an object");
  DatasetManifest m;
  m.format_version = static_cast<int>(member_uint(doc, "format_version"));
  if (m.format_version != kManifestFormatVersion) {
    throw InputError("manifest: unsupported format_version " +
                     std::to_string(m.format_version));
  }
  m.split_seed = member_uint(doc, "split_seed");
  m.settings_hash = parse_hex64(member_text(doc, "settings_hash"));
  const Json& counts = member(doc, "counts");
  m.counts.train = member_uint(counts, "train");
  m.counts.val = member_uint(counts, "val");
  m.counts.test = member_uint(counts, "test");
  const Json& entries = member(doc, "entries");
  if (!entries.is_array()) throw InputError("manifest: 'entries' must be an array");
  for (const auto& j : entries) {
    ManifestEntry e;
    e.seed = member_uint(j, "seed");
    e.split = parse_split(member_text(j, "split"));
    e.provenance = parse_hex64(member_text(j, "provenance"));
    e.scene = member_text(j, "scene");
    e.photo = member_text(j, "photo");
    e.label = member_text(j, "label");
    e.depth = member_text(j, "depth");
    e.pair_label = member_text(j, "pair_label");
    e.pair_depth = member_text(j, "pair_depth");
    m.entries.push_back(std::move(e));
  }
  return m;
}

std::uint64_t scene_provenance(const SceneSpec& scene,
                               const RenderSettings& settings) {
  return fnv1a64(settings_text(settings), fnv1a64(serialize_scene(scene)));
}

namespace {

void assign_paths(ManifestEntry& e) {
  const std::string split(to_string(e.split));
  const std::string stem = seed_stem(e.seed);
  e.scene = split + "/" + scene_file_name(e.seed);
  e.photo = split + "/" + stem + "_photo.png";
  e.label = split + "/" + stem + "_label.png";
  e.depth = split + "/" + stem + "_depth.png";
  e.pair_label = "pairs/label/" + split + "/" + stem + ".png";
  e.pair_depth = "pairs/depth/" + split + "/" + stem + ".png";
}

std::string meta_path(const ManifestEntry& e) {
  return std::string(to_string(e.split)) + "/" + seed_stem(e.seed) +
         "_meta.json";
}

bool up_to_date(const fs::path& root, const ManifestEntry& e) {
  const fs::path meta = root / meta_path(e);
  std::error_code ec;
  if (!fs::exists(meta, ec)) return false;
  for (const std::string* rel : {&e.scene, &e.photo, &e.label, &e.depth,
                                 &e.pair_label, &e.pair_depth}) {
    if (!fs::exists(root / *rel, ec)) return false;
  }
  try {
    const Json doc = Json::parse(read_text_file(meta));
    return doc.at("seed").get<std::uint64_t>() == e.seed &&
           parse_hex64(doc.at("provenance").get<std::string>()) == e.provenance;
  } catch (const std::exception&) {
    return false;
  }
}

void write_scene_outputs(const fs::path& root, const ManifestEntry& e,
                         const SceneSpec& scene, const RenderSettings& settings,
                         unsigned workers) {
  const RenderTriple triple = render_triple(scene, settings, workers);
  write_text_file(root / e.scene, serialize_scene(scene));
  write_png(root / e.photo, triple.photo);
  write_png(root / e.label, triple.label);
  write_png(root / e.depth, triple.depth);
  write_png(root / e.pair_label,
            compose_pair(triple.photo, triple.label, TargetKind::label));
  write_png(root / e.pair_depth,
            compose_pair(triple.photo, triple.depth, TargetKind::depth));
  Json meta;
  meta["seed"] = e.seed;
  meta["provenance"] = hex64(e.provenance);
  write_text_file(root / meta_path(e), to_fixed_text(meta));
}

}  // namespace

BuildResult build_dataset(const BuildOptions& options) {
  validate_ranges(options.ranges);
  validate_settings(options.settings);
  if (options.seed_count == 0) throw InputError("build_dataset: no seeds");

  std::vector<std::uint64_t> seeds(options.seed_count);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = options.seed_start + i;
  }
  const SplitCounts counts =
      options.counts.value_or(proportional_counts(seeds.size()));

  BuildResult result;
  result.manifest = split_manifest(seeds, counts, options.split_seed);
  result.manifest.settings_hash = settings_hash(options.settings);

  const fs::path& root = options.root;
  try {
    for (Split split : {Split::train, Split::val, Split::test}) {
      const std::string name(to_string(split));
      fs::create_directories(root / name);
      fs::create_directories(root / "pairs" / "label" / name);
      fs::create_directories(root / "pairs" / "depth" / name);
    }
  } catch (const fs::filesystem_error& e) {
    throw IoError(std::string("cannot create dataset directories: ") + e.what());
  }

  for (ManifestEntry& entry : result.manifest.entries) {
    try {
      const SceneSpec scene = sample_scene(entry.seed, options.ranges);
      entry.provenance = scene_provenance(scene, options.settings);
      assign_paths(entry);
      if (up_to_date(root, entry)) {
        ++result.skipped;
        logger().debug("scene {}: up to date", entry.seed);
        continue;
      }
      write_scene_outputs(root, entry, scene, options.settings, options.workers);
      result.rendered.push_back(entry.seed);
      logger().info("scene {}: rendered ({})", entry.seed, to_string(entry.split));
    } catch (const IoError& e) {
      if (e.seed()) throw;
      throw IoError(e.what(), entry.seed);
    } catch (const fs::filesystem_error& e) {
      throw IoError(e.what(), entry.seed);
    }
  }

  write_text_file(root / kManifestFileName, serialize_manifest(result.manifest));
  return result;
}

}  // namespace archsynth

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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include "archsynth/error.hpp"
#include "archsynth/rng.hpp"
#include "archsynth/scene_io.hpp"

namespace archsynth {
namespace {

namespace fs = std::filesystem;

Image uniform(int n, int channels, std::initializer_list<std::uint8_t> value) {
  Image img(n, n, channels);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    std::copy(value.begin(), value.end(),
              img.pixels.begin() + static_cast<std::ptrdiff_t>(i * channels));
  }
  return img;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("archsynth_" + name);
  fs::remove_all(dir);
  return dir;
}

BuildOptions small_build(const fs::path& root) {
  BuildOptions o;
  o.seed_start = 0;
  o.seed_count = 10;
  o.settings.resolution = 32;
  o.settings.samples_per_pixel = 1;
  o.root = root;
  return o;
}

TEST(ComposePair, UniformHalves) {
  const Image a = uniform(8, 3, {10, 20, 30});
  const Image b = uniform(8, 3, {200, 100, 0});
  const Image pair = compose_pair(a, b, TargetKind::label);
  ASSERT_EQ(pair.width, 8);
  ASSERT_EQ(pair.height, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 8; ++x) {
      const auto* p = pair.at(x, y);
      if (x < 4) {
        EXPECT_EQ(std::make_tuple(p[0], p[1], p[2]), std::make_tuple(10, 20, 30));
      } else {
        EXPECT_EQ(std::make_tuple(p[0], p[1], p[2]), std::make_tuple(200, 100, 0));
      }
    }
  }
}

TEST(ComposePair, DefaultResolutionGives512By256) {
  const Image a = uniform(512, 3, {1, 2, 3});
  const Image d = uniform(512, 1, {77});
  const Image pair = compose_pair(a, d, TargetKind::depth);
  EXPECT_EQ(pair.width, 512);
  EXPECT_EQ(pair.height, 256);
  const auto* p = pair.at(300, 100);
  EXPECT_EQ(std::make_tuple(p[0], p[1], p[2]), std::make_tuple(77, 77, 77));
}

TEST(ComposePair, AreaAverageOfTwoByTwoBlock) {
  Image photo(2, 2, 3);
  photo.at(0, 0)[0] = 0;
  photo.at(1, 0)[0] = 0;
  photo.at(0, 1)[0] = 100;
  photo.at(1, 1)[0] = 100;
  const Image pair = compose_pair(photo, Image(2, 2, 3), TargetKind::label);
  EXPECT_EQ(pair.at(0, 0)[0], 50);
}

TEST(ComposePair, RejectsMismatchedShapes) {
  EXPECT_THROW(compose_pair(Image(8, 8, 3), Image(6, 6, 3), TargetKind::label),
               InputError);
  EXPECT_THROW(compose_pair(Image(8, 8, 3), Image(8, 8, 3), TargetKind::depth),
               InputError);
  EXPECT_THROW(compose_pair(Image(8, 8, 1), Image(8, 8, 1), TargetKind::depth),
               InputError);
  EXPECT_THROW(compose_pair(Image(7, 7, 3), Image(7, 7, 3), TargetKind::label),
               InputError);
  EXPECT_THROW(compose_pair(Image(8, 4, 3), Image(8, 4, 3), TargetKind::label),
               InputError);
}

TEST(ComposePair, LabelDownscaleKeepsPaletteAndUpscalesBack) {
  const std::set<std::tuple<int, int, int>> palette{
      {255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 0}, {255, 0, 255}};
  const std::tuple<int, int, int> colors[] = {
      {255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 0}, {255, 0, 255}};
  RandomStream rng(4);
  Image label(64, 64, 3);
  for (std::size_t i = 0; i < label.pixel_count(); ++i) {
    const auto& c = colors[rng.uniform_int(0, 4)];
    label.pixels[3 * i] = static_cast<std::uint8_t>(std::get<0>(c));
    label.pixels[3 * i + 1] = static_cast<std::uint8_t>(std::get<1>(c));
    label.pixels[3 * i + 2] = static_cast<std::uint8_t>(std::get<2>(c));
  }
  const Image pair = compose_pair(Image(64, 64, 3), label, TargetKind::label);
  const Image right = split_pair(pair).second;
  // Nearest-neighbour x2 upscale of the target half.
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const auto* p = right.at(x / 2, y / 2);
      ASSERT_TRUE(palette.count({p[0], p[1], p[2]}));
    }
  }
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      ASSERT_EQ(0, std::memcmp(right.at(x, y), label.at(2 * x, 2 * y), 3));
    }
  }
}

TEST(SplitManifest, ThousandEntriesGivesConfiguredSizes) {
  std::vector<std::uint64_t> seeds(1000);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = 5000 - i;
  const auto m = split_manifest(seeds, SplitCounts{}, 42);
  std::map<Split, std::size_t> sizes;
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    ++sizes[m.entries[i].split];
    seen.insert(m.entries[i].seed);
    if (i > 0) {
      ASSERT_LT(m.entries[i - 1].seed, m.entries[i].seed);
    }
  }
  EXPECT_EQ(sizes[Split::train], 750u);
  EXPECT_EQ(sizes[Split::val], 200u);
  EXPECT_EQ(sizes[Split::test], 50u);
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(proportional_counts(1000), SplitCounts{});
  EXPECT_EQ(proportional_counts(10), (SplitCounts{8, 1, 1}));
}

TEST(SplitManifest, SingleEntryTrain) {
  const std::vector<std::uint64_t> seeds{9};
  const auto m = split_manifest(seeds, {1, 0, 0}, 0);
  ASSERT_EQ(m.entries.size(), 1u);
  EXPECT_EQ(m.entries[0].split, Split::train);
}

TEST(SplitManifest, DeterministicAndSeedSensitive) {
  std::vector<std::uint64_t> seeds(100);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
  const auto a = split_manifest(seeds, proportional_counts(100), 7);
  const auto b = split_manifest(seeds, proportional_counts(100), 7);
  const auto c = split_manifest(seeds, proportional_counts(100), 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(SplitManifest, CountMismatchAndDuplicates) {
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  EXPECT_THROW(split_manifest(seeds, {1, 1, 0}, 0), InputError);
  const std::vector<std::uint64_t> dup{1, 1, 3};
  EXPECT_THROW(split_manifest(dup, {3, 0, 0}, 0), InputError);
}

TEST(Manifest, RoundTripIsByteIdentical) {
  std::vector<std::uint64_t> seeds{3, 1, 2, 10};
  auto m = split_manifest(seeds, {2, 1, 1}, 5);
  m.settings_hash = 0xDEADBEEFCAFEF00Dull;
  for (auto& e : m.entries) {
    e.provenance = e.seed * 977;
    e.photo = "train/x.png";
  }
  const std::string text = serialize_manifest(m);
  const DatasetManifest back = parse_manifest(text);
  EXPECT_EQ(back, m);
  EXPECT_EQ(serialize_manifest(back), text);
  EXPECT_THROW(parse_manifest("{}"), InputError);
}

std::size_t count_files(const fs::path& dir, const std::string& suffix) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      ++n;
    }
  }
  return n;
}

TEST(BuildDataset, CensusRerunAndRepair) {
  const fs::path root = fresh_dir("build_census");
  BuildOptions options = small_build(root);
  options.counts = SplitCounts{8, 1, 1};
  const BuildResult first = build_dataset(options);
  EXPECT_EQ(first.rendered.size(), 10u);
  EXPECT_EQ(first.skipped, 0u);
  EXPECT_EQ(count_files(root, "_photo.png"), 10u);
  EXPECT_EQ(count_files(root, "_label.png"), 10u);
  EXPECT_EQ(count_files(root, "_depth.png"), 10u);
  EXPECT_EQ(count_files(root / "pairs" / "label", ".png"), 10u);
  EXPECT_EQ(count_files(root / "pairs" / "depth", ".png"), 10u);
  ASSERT_TRUE(fs::exists(root / "dataset_manifest.json"));

  const DatasetManifest m =
      parse_manifest(read_text_file(root / "dataset_manifest.json"));
  EXPECT_EQ(m, first.manifest);
  std::map<Split, int> sizes;
  for (const auto& e : m.entries) {
    ++sizes[e.split];
    for (const auto* rel : {&e.scene, &e.photo, &e.label, &e.depth,
                            &e.pair_label, &e.pair_depth}) {
      EXPECT_TRUE(fs::exists(root / *rel)) << *rel;
    }
    const Image pair = read_png(root / e.pair_label);
    EXPECT_EQ(pair.width, 32);
    EXPECT_EQ(pair.height, 16);
    EXPECT_EQ(read_png(root / e.depth).channels, 1);
  }
  EXPECT_EQ(sizes[Split::train], 8);
  EXPECT_EQ(sizes[Split::val], 1);
  EXPECT_EQ(sizes[Split::test], 1);

  const BuildResult again = build_dataset(options);
  EXPECT_TRUE(again.rendered.empty());
  EXPECT_EQ(again.skipped, 10u);
  EXPECT_EQ(again.manifest, first.manifest);

  const ManifestEntry& victim = m.entries[3];
  const Image before = read_png(root / victim.photo);
  fs::remove(root / victim.photo);
  const BuildResult repaired = build_dataset(options);
  EXPECT_EQ(repaired.rendered, std::vector<std::uint64_t>{victim.seed});
  EXPECT_EQ(repaired.skipped, 9u);
  EXPECT_EQ(read_png(root / victim.photo), before);

  // Changing render settings invalidates every scene.
  options.settings.render_seed = 3;
  const BuildResult changed = build_dataset(options);
  EXPECT_EQ(changed.rendered.size(), 10u);
  fs::remove_all(root);
}

TEST(BuildDataset, WorkerCountDoesNotChangeBytes) {
  const fs::path a = fresh_dir("build_w1");
  const fs::path b = fresh_dir("build_w4");
  BuildOptions oa = small_build(a);
  oa.seed_count = 4;
  oa.workers = 1;
  BuildOptions ob = oa;
  ob.root = b;
  ob.workers = 4;
  build_dataset(oa);
  build_dataset(ob);
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    EXPECT_EQ(read_text_file(e.path()), read_text_file(b / rel)) << rel;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(BuildDataset, IoFailureCarriesSeed) {
  const fs::path root = fresh_dir("build_blocked");
  fs::create_directories(root / "train");
  BuildOptions options = small_build(root);
  options.seed_start = 40;
  options.seed_count = 1;
  options.counts = SplitCounts{1, 0, 0};
  // A directory where the photo file should go blocks the write.
  fs::create_directories(root / "train" / "00000040_photo.png");
  try {
    build_dataset(options);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    ASSERT_TRUE(e.seed().has_value());
    EXPECT_EQ(*e.seed(), 40u);
  }
  fs::remove_all(root);
}

}  // namespace
}  // namespace archsynth

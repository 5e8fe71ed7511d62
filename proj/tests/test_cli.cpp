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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "archsynth/dataset.hpp"
#include "archsynth/evalmetrics.hpp"
#include "archsynth/image.hpp"
#include "archsynth/scene_io.hpp"

namespace archsynth {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("archsynth_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string("'") + ARCHSYNTH_CLI_PATH + "' " + args +
                            " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }

  fs::path dir_;
};

constexpr const char* kSmall = " --resolution 32 --spp 1";

TEST_F(Cli, GenerateWritesSceneFiles) {
  const CliResult r = run("generate --seed-start 3 --seed-count 4 --out '" + path("gen") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  for (int seed = 3; seed < 7; ++seed) {
    EXPECT_TRUE(fs::exists(dir_ / "gen" / scene_file_name(static_cast<std::uint64_t>(seed))));
  }
  EXPECT_FALSE(fs::exists(dir_ / "gen" / scene_file_name(7)));
}

TEST_F(Cli, GenerateIsByteReproducible) {
  ASSERT_EQ(run("generate --seed-count 3 --out '" + path("a") + "'").code, 0);
  ASSERT_EQ(run("generate --seed-count 3 --out '" + path("b") + "'").code, 0);
  for (int seed = 0; seed < 3; ++seed) {
    const auto name = scene_file_name(static_cast<std::uint64_t>(seed));
    EXPECT_EQ(slurp(dir_ / "a" / name), slurp(dir_ / "b" / name));
  }
}

TEST_F(Cli, InvalidIntervalExitsOneNamingField) {
  std::ofstream(dir_ / "bad.json") << R"({"ranges": {"height_m": [4.0, 3.0]}})";
  const CliResult r = run("generate --config '" + path("bad.json") + "' --out '" + path("g") + "'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ranges.height_m"), std::string::npos) << r.err;
}

TEST_F(Cli, UnknownConfigKeyAndBadUsageExitOne) {
  std::ofstream(dir_ / "bad.json") << R"({"render": {"sppx": 4}})";
  EXPECT_EQ(run("render --config '" + path("bad.json") + "'").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("evaluate only_one_dir").code, 1);
  EXPECT_EQ(run("generate --seed-count notanumber").code, 1);
  EXPECT_EQ(run("generate --set nonsense").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, FlagsOverrideConfigFile) {
  std::ofstream(dir_ / "cfg.json")
      << R"({"seed_start": 100, "seed_count": 5, "output_root": ")" << path("from_cfg")
      << R"("})";
  const CliResult r = run("generate --config '" + path("cfg.json") + "' --seed-count 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "from_cfg" / scene_file_name(101)));
  EXPECT_FALSE(fs::exists(dir_ / "from_cfg" / scene_file_name(102)));
}

TEST_F(Cli, RenderSeedRangeAndSceneFile) {
  CliResult r = run(std::string("render --seed-start 7 --seed-count 1") + kSmall + " --out '" +
              path("r") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* kind : {"photo", "label", "depth"}) {
    EXPECT_TRUE(fs::exists(dir_ / "r" / (std::string("00000007_") + kind + ".png")));
  }
  // --scene is resolved against --out.
  r = run(std::string("render --scene scene_00000007.json") + kSmall + " --out '" +
          path("r") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  r = run(std::string("render --scene missing.json") + kSmall + " --out '" + path("r") + "'");
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, BuildTenSeedsAndWorkerInvariance) {
  CliResult r = run(std::string("build --seed-count 10 --workers 1") + kSmall + " --out '" +
              path("w1") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  r = run(std::string("dataset --seed-count 10 --workers 8") + kSmall + " --out '" +
          path("w8") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const DatasetManifest m = parse_manifest(slurp(dir_ / "w1" / "dataset_manifest.json"));
  EXPECT_EQ(m.entries.size(), 10u);
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir_ / "w1")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const fs::path rel = fs::relative(e.path(), dir_ / "w1");
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "w8" / rel)) << rel;
  }
  EXPECT_EQ(files, 10u * 7 + 1);  // scene, 3 passes, meta, 2 pairs + manifest
}

TEST_F(Cli, EvaluateThresholdZeroMatchesExactAndOrphanFails) {
  ASSERT_EQ(run(std::string("render --seed-count 2") + kSmall + " --out '" + path("gt") + "'")
                .code,
            0);
  fs::create_directories(dir_ / "pred");
  // Prediction = ground-truth label with a few pixels nudged by 3.
  for (int seed = 0; seed < 2; ++seed) {
    const std::string stem = seed_stem(static_cast<std::uint64_t>(seed));
    Image img = read_png(dir_ / "gt" / (stem + "_label.png"));
    for (int k = 0; k < 20 * (seed + 1); ++k) img.pixels[static_cast<std::size_t>(k * 7)] ^= 3;
    write_png(dir_ / "pred" / (stem + ".png"), img);
  }
  CliResult r = run("evaluate pred gt --target label --threshold 0 --out '" + path("") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string report = slurp(dir_ / "eval_report.json");
  DirectoryEvalOptions options;
  options.target = TargetKind::label;
  options.config.threshold = 0;
  const EvalReport expected = evaluate_directory(dir_ / "pred", dir_ / "gt", options);
  double exact_sum = 0.0;
  for (const auto& img : expected.images) {
    exact_sum += exact_accuracy(read_png(dir_ / "pred" / img.pred_file),
                                read_png(dir_ / "gt" / img.gt_file));
  }
  EXPECT_EQ(report, serialize_report(expected));
  EXPECT_NEAR(expected.mean, exact_sum / 2, 1e-15);
  EXPECT_NE(r.out.find("images"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "eval_scores.csv"));

  r = run("evaluate pred gt --target label --threshold 10 --out '" + path("") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1.000"), std::string::npos) << r.out;

  write_png(dir_ / "pred" / "00000042.png", Image(32, 32, 3));
  r = run("evaluate pred gt --target label --out '" + path("") + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("00000042.png"), std::string::npos) << r.err;
  EXPECT_EQ(run("evaluate pred gt --target sideways --out '" + path("") + "'").code, 1);
}

TEST_F(Cli, UnwritableOutputExitsTwo) {
  std::ofstream(dir_ / "blocker") << "x";
  const CliResult r = run("generate --seed-count 1 --out '" + path("blocker/sub") + "'");
  EXPECT_EQ(r.code, 2);
}

}  // namespace
}  // namespace archsynth

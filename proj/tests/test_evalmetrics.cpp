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

#include <gtest/gtest.h>

#include <filesystem>
#include <vector>

#include "archsynth/error.hpp"
#include "archsynth/rng.hpp"
#include "support/oracles.hpp"

namespace archsynth {
namespace {

namespace fs = std::filesystem;

Image random_image(RandomStream& rng, int w, int h, int c) {
  Image img(w, h, c);
  for (auto& v : img.pixels) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return img;
}

Image constant(int w, int h, int c, std::uint8_t v) {
  Image img(w, h, c);
  std::fill(img.pixels.begin(), img.pixels.end(), v);
  return img;
}

TEST(Metrics, IdenticalImagesScoreOne) {
  RandomStream rng(1);
  const Image a = random_image(rng, 16, 16, 3);
  EXPECT_EQ(exact_accuracy(a, a), 1.0);
  EXPECT_EQ(thresh_accuracy(a, a), 1.0);
}

TEST(Metrics, OnePixelChanged) {
  const Image a = constant(256, 256, 3, 100);
  Image b = a;
  b.at(17, 201)[1] = 101;
  EXPECT_EQ(exact_accuracy(a, b), 1.0 - 1.0 / 65536.0);
  EXPECT_EQ(thresh_accuracy(a, b, {0}), 1.0 - 1.0 / 65536.0);
  EXPECT_EQ(thresh_accuracy(a, b, {1}), 1.0);
}

TEST(Metrics, RandomAgainstUniformIsNearZero) {
  RandomStream rng(2);
  const Image pred = random_image(rng, 128, 128, 3);
  const Image gt = constant(128, 128, 3, 128);
  const double score = exact_accuracy(pred, gt);
  EXPECT_EQ(score, oracle::recount_accuracy(pred, gt, 0));
  EXPECT_LT(score, 0.001);
}

TEST(Metrics, ThresholdBoundaryIsInclusive) {
  const Image gt = constant(32, 32, 3, 100);
  const Image plus10 = constant(32, 32, 3, 110);
  const Image plus11 = constant(32, 32, 3, 111);
  const Image minus10 = constant(32, 32, 3, 90);
  EXPECT_EQ(thresh_accuracy(plus10, gt, {10}), 1.0);
  EXPECT_EQ(thresh_accuracy(minus10, gt, {10}), 1.0);
  EXPECT_EQ(thresh_accuracy(plus11, gt, {10}), 0.0);
}

TEST(Metrics, QuarterOffsetByFifty) {
  const Image gt = constant(40, 40, 3, 60);
  Image pred = gt;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 40; ++x) {
      for (int c = 0; c < 3; ++c) pred.at(x, y)[c] = 110;
    }
  }
  EXPECT_EQ(thresh_accuracy(pred, gt), 0.75);
  EXPECT_EQ(oracle::recount_accuracy(pred, gt, 10), 0.75);
}

TEST(Metrics, SingleChannelFailureFailsPixel) {
  const Image gt = constant(4, 4, 3, 0);
  Image pred = gt;
  pred.at(0, 0)[2] = 11;
  EXPECT_EQ(thresh_accuracy(pred, gt), 15.0 / 16.0);
}

TEST(Metrics, SummedModeIsStricter) {
  const Image gt = constant(4, 4, 3, 0);
  const Image pred = constant(4, 4, 3, 6);  // 3 * 36 = 108 > 100
  EXPECT_EQ(thresh_accuracy(pred, gt, {10, ErrorMode::per_channel}), 1.0);
  EXPECT_EQ(thresh_accuracy(pred, gt, {10, ErrorMode::summed}), 0.0);
  const Image five = constant(4, 4, 3, 5);  // 75 <= 100
  EXPECT_EQ(thresh_accuracy(five, gt, {10, ErrorMode::summed}), 1.0);
}

TEST(Metrics, ShapeMismatchIsInputError) {
  EXPECT_THROW(exact_accuracy(Image(4, 4, 3), Image(4, 4, 1)), InputError);
  EXPECT_THROW(thresh_accuracy(Image(4, 4, 3), Image(4, 5, 3)), InputError);
  EXPECT_THROW(thresh_accuracy(Image(4, 4, 3), Image(4, 4, 3), {-1}), InputError);
}

TEST(Metrics, MatchesBruteForceRecount) {
  RandomStream rng(3);
  for (int i = 0; i < 100; ++i) {
    const int channels = i % 2 == 0 ? 3 : 1;
    const Image gt = random_image(rng, 32, 32, channels);
    Image pred = gt;
    // Perturb by small offsets so scores spread over (0, 1).
    for (auto& v : pred.pixels) {
      v = static_cast<std::uint8_t>(
          std::clamp<std::int64_t>(v + rng.uniform_int(-30, 30), 0, 255));
    }
    for (int t : {0, 5, 10, 20, 50}) {
      ASSERT_EQ(thresh_accuracy(pred, gt, {t}), oracle::recount_accuracy(pred, gt, t));
    }
  }
}

TEST(Metrics, MonotoneOrderedAndSymmetric) {
  RandomStream rng(4);
  for (int i = 0; i < 30; ++i) {
    const Image a = random_image(rng, 24, 24, 3);
    Image b = a;
    for (auto& v : b.pixels) {
      v = static_cast<std::uint8_t>(
          std::clamp<std::int64_t>(v + rng.uniform_int(-60, 60), 0, 255));
    }
    double previous = -1.0;
    const double exact = exact_accuracy(a, b);
    for (int t : {0, 5, 10, 20, 50, 255}) {
      const double s = thresh_accuracy(a, b, {t});
      ASSERT_GE(s, previous);
      ASSERT_GE(s, exact);
      ASSERT_EQ(s, thresh_accuracy(b, a, {t}));
      previous = s;
    }
    ASSERT_EQ(thresh_accuracy(a, b, {0}), exact);
    ASSERT_EQ(exact, exact_accuracy(b, a));
  }
}

TEST(Aggregate, FixturesReproduceEndpoints) {
  const std::vector<double> m1{0.792, 0.956};
  const EvalReport r1 = aggregate(m1);
  EXPECT_EQ(r1.min, 0.792);
  EXPECT_EQ(r1.max, 0.956);
  EXPECT_EQ(r1.mean, 0.874);
  EXPECT_EQ(r1.count, 2u);
  const std::vector<double> m2{0.879, 0.959};
  const EvalReport r2 = aggregate(m2);
  EXPECT_EQ(r2.min, 0.879);
  EXPECT_EQ(r2.max, 0.959);
  EXPECT_EQ(r2.mean, 0.919);
}

TEST(Aggregate, SingleScoreAndErrors) {
  const std::vector<double> one{0.42};
  const EvalReport r = aggregate(one);
  EXPECT_EQ(r.mean, 0.42);
  EXPECT_EQ(r.min, 0.42);
  EXPECT_EQ(r.max, 0.42);
  EXPECT_THROW(aggregate(std::vector<double>{}), InputError);
  EXPECT_THROW(aggregate(std::vector<double>{0.30, 0.97, 1.10}), InputError);
  EXPECT_THROW(aggregate(std::vector<double>{-0.1}), InputError);
}

TEST(Aggregate, HistogramEdges) {
  const std::vector<double> scores{0.0, 0.05, 0.049999, 0.5, 0.975, 1.0};
  const EvalReport r = aggregate(scores);
  EXPECT_EQ(r.histogram[0], 2u);
  EXPECT_EQ(r.histogram[1], 1u);
  EXPECT_EQ(r.histogram[10], 1u);
  EXPECT_EQ(r.histogram[19], 2u);
  std::size_t total = 0;
  for (auto h : r.histogram) total += h;
  EXPECT_EQ(total, scores.size());
}

TEST(Aggregate, MeanBetweenMinAndMax) {
  RandomStream rng(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> s(static_cast<std::size_t>(rng.uniform_int(1, 50)));
    for (auto& v : s) v = rng.uniform01();
    const EvalReport r = aggregate(s);
    ASSERT_LE(r.min, r.mean);
    ASSERT_LE(r.mean, r.max);
  }
}

TEST(SeedFromName, FirstDigitRun) {
  EXPECT_EQ(seed_from_file_name("00000042_label.png"), 42u);
  EXPECT_EQ(seed_from_file_name("pred_7_v2.png"), 7u);
  EXPECT_FALSE(seed_from_file_name("label.png").has_value());
}

class DirectoryEval : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / "archsynth_direval";
    fs::remove_all(root_);
    fs::create_directories(root_ / "gt");
    fs::create_directories(root_ / "pred");
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path root_;
};

TEST_F(DirectoryEval, CopiesScoreOne) {
  RandomStream rng(5);
  for (int seed = 0; seed < 50; ++seed) {
    const Image gt = random_image(rng, 16, 16, 3);
    char name[32];
    std::snprintf(name, sizeof name, "%08d_label.png", seed);
    write_png(root_ / "gt" / name, gt);
    write_png(root_ / "pred" / name, gt);
  }
  const EvalReport r = evaluate_directory(root_ / "pred", root_ / "gt");
  EXPECT_EQ(r.count, 50u);
  EXPECT_EQ(r.mean, 1.0);
  ASSERT_EQ(r.images.size(), 50u);
  for (std::size_t i = 0; i < r.images.size(); ++i) {
    EXPECT_EQ(r.images[i].seed, i);
  }
}

TEST_F(DirectoryEval, TenPercentCorruptionGivesPointNine) {
  RandomStream rng(6);
  for (int seed = 0; seed < 12; ++seed) {
    const Image gt = constant(20, 20, 3, 40);
    Image pred = gt;
    // 40 of 400 pixels offset by +50.
    for (int k = 0; k < 40; ++k) {
      for (int c = 0; c < 3; ++c) pred.pixels[static_cast<std::size_t>(k * 10 * 3 + c)] = 90;
    }
    const std::string name = std::to_string(1000 + seed) + ".png";
    write_png(root_ / "gt" / name, gt);
    write_png(root_ / "pred" / name, pred);
  }
  const EvalReport r = evaluate_directory(root_ / "pred", root_ / "gt");
  EXPECT_EQ(r.count, 12u);
  EXPECT_EQ(r.mean, 0.9);
  EXPECT_EQ(r.min, 0.9);
  EXPECT_EQ(r.max, 0.9);
}

TEST_F(DirectoryEval, OrphanPredictionIsNamed) {
  const Image img = constant(8, 8, 3, 1);
  write_png(root_ / "gt" / "00000001_label.png", img);
  write_png(root_ / "pred" / "00000001_label.png", img);
  write_png(root_ / "pred" / "00000002_label.png", img);
  try {
    evaluate_directory(root_ / "pred", root_ / "gt");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("00000002_label.png"), std::string::npos);
  }
}

TEST_F(DirectoryEval, TargetFilterAndPairSource) {
  RandomStream rng(7);
  const Image photo = random_image(rng, 8, 8, 3);
  const Image label = random_image(rng, 8, 8, 3);
  Image depth(8, 8, 1);
  for (auto& v : depth.pixels) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  write_png(root_ / "gt" / "00000003_label.png", label);
  write_png(root_ / "gt" / "00000003_depth.png", depth);
  write_png(root_ / "pred" / "00000003.png", label);
  EXPECT_THROW(evaluate_directory(root_ / "pred", root_ / "gt"), InputError);
  DirectoryEvalOptions options;
  options.target = TargetKind::label;
  EXPECT_EQ(evaluate_directory(root_ / "pred", root_ / "gt", options).mean, 1.0);

  fs::create_directories(root_ / "pairs");
  const Image pair = compose_pair(photo, label, TargetKind::label);
  write_png(root_ / "pairs" / "00000003.png", pair);
  write_png(root_ / "pred" / "00000003.png", split_pair(pair).second);
  DirectoryEvalOptions pairs;
  pairs.gt_source = GtSource::pair_right_half;
  EXPECT_EQ(evaluate_directory(root_ / "pred", root_ / "pairs", pairs).mean, 1.0);
}

TEST(Report, TextOutputs) {
  const std::vector<double> scores{0.5, 1.0};
  const EvalReport r = aggregate(scores);
  const std::string json = serialize_report(r);
  EXPECT_NE(json.find("\"mean\": 0.750000"), std::string::npos);
  EXPECT_NE(json.find("\"threshold\": 10"), std::string::npos);
  EXPECT_EQ(report_csv(r), "seed,score\n0,0.500000\n1,1.000000\n");
  EXPECT_NE(report_table(r).find("0.750"), std::string::npos);
}

}  // namespace
}  // namespace archsynth

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

#include "archsynth/archsynth.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include <json.hpp>

#include "archsynth/config.hpp"
#include "archsynth/dataset.hpp"
#include "archsynth/error.hpp"
#include "archsynth/evalmetrics.hpp"
#include "archsynth/render.hpp"
#include "archsynth/scene_io.hpp"
#include "archsynth/scenegen.hpp"
#include "log.hpp"

struct as_config {
  archsynth::RunConfig run;
};

struct as_eval_report {
  archsynth::EvalReport report;
};

namespace {

namespace fs = std::filesystem;
using archsynth::RunConfig;

thread_local std::string g_last_error;
thread_local std::string g_last_field;

as_status set_error(as_status status, std::string message,
                    std::string field = {}) {
  g_last_error = std::move(message);
  g_last_field = std::move(field);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
as_status guarded(F&& body) {
  g_last_error.clear();
  g_last_field.clear();
  try {
    body();
    return AS_OK;
  } catch (const archsynth::ConfigError& e) {
    return set_error(AS_ERR_CONFIG, e.what(), e.field());
  } catch (const archsynth::InputError& e) {
    return set_error(AS_ERR_INPUT, e.what());
  } catch (const archsynth::IoError& e) {
    return set_error(AS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(AS_ERR_INTERNAL, "out of memory");
  } catch (const fs::filesystem_error& e) {
    return set_error(AS_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(AS_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(AS_ERR_INTERNAL, "unknown error");
  }
}

as_status null_argument(const char* name) {
  return set_error(AS_ERR_INVALID_ARGUMENT, std::string(name) + " is null");
}

as_status copy_out(const std::string& text, char* buffer, std::size_t capacity,
                   std::size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buffer || capacity < text.size() + 1) {
    return set_error(AS_ERR_BUFFER_TOO_SMALL,
                     "buffer needs " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return AS_OK;
}

fs::path out_root(const RunConfig& run, const char* out_dir) {
  return out_dir ? fs::path(out_dir) : run.output_root;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw archsynth::IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_triple(const archsynth::SceneSpec& scene, const RunConfig& run,
                  const fs::path& dir) {
  const auto triple = archsynth::render_triple(scene, run.settings, run.workers);
  const std::string stem = archsynth::seed_stem(scene.seed);
  try {
    archsynth::write_png(dir / (stem + "_photo.png"), triple.photo);
    archsynth::write_png(dir / (stem + "_label.png"), triple.label);
    archsynth::write_png(dir / (stem + "_depth.png"), triple.depth);
  } catch (const archsynth::IoError& e) {
    throw archsynth::IoError(e.what(), scene.seed);
  }
}

}  // namespace

extern "C" {

const char* as_version(void) { return "1.0.0"; }

const char* as_status_name(as_status status) {
  switch (status) {
    case AS_OK: return "ok";
    case AS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case AS_ERR_CONFIG: return "config_error";
    case AS_ERR_INPUT: return "input_error";
    case AS_ERR_IO: return "io_error";
    case AS_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case AS_ERR_INTERNAL: return "internal_error";
  }
  return "unknown_status";
}

const char* as_last_error(void) { return g_last_error.c_str(); }
const char* as_last_error_field(void) { return g_last_field.c_str(); }

as_status as_config_create(as_config** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new as_config{}; });
}

void as_config_destroy(as_config* config) { delete config; }

as_status as_config_load_file(as_config* config, const char* path) {
  if (!config) return null_argument("config");
  if (!path) return null_argument("path");
  return guarded([&] { archsynth::apply_config_file(config->run, path); });
}

as_status as_config_load_text(as_config* config, const char* text) {
  if (!config) return null_argument("config");
  if (!text) return null_argument("text");
  return guarded([&] { archsynth::apply_config_text(config->run, text); });
}

as_status as_config_set(as_config* config, const char* key, const char* value) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  if (!value) return null_argument("value");
  return guarded([&] { archsynth::set_config_value(config->run, key, value); });
}

as_status as_config_set_int(as_config* config, const char* key, int64_t value) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  return guarded([&] {
    archsynth::set_config_value(config->run, key, std::to_string(value));
  });
}

as_status as_config_set_string(as_config* config, const char* key,
                               const char* value) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  if (!value) return null_argument("value");
  return guarded([&] {
    archsynth::set_config_value(config->run, key,
                                nlohmann::json(std::string(value)).dump());
  });
}

as_status as_config_get(const as_config* config, const char* key, char* buffer,
                        size_t capacity, size_t* needed) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  std::string text;
  const as_status status = guarded(
      [&] { text = archsynth::get_config_value(config->run, key, true); });
  if (status != AS_OK) return status;
  return copy_out(text, buffer, capacity, needed);
}

as_status as_config_validate(const as_config* config) {
  if (!config) return null_argument("config");
  return guarded([&] { archsynth::validate_config(config->run); });
}

as_status as_config_to_text(const as_config* config, char* buffer,
                            size_t capacity, size_t* needed) {
  if (!config) return null_argument("config");
  std::string text;
  const as_status status =
      guarded([&] { text = archsynth::config_to_text(config->run); });
  if (status != AS_OK) return status;
  return copy_out(text, buffer, capacity, needed);
}

as_status as_generate(const as_config* config, const char* out_dir,
                      size_t* scenes_written) {
  if (!config) return null_argument("config");
  if (scenes_written) *scenes_written = 0;
  return guarded([&] {
    const RunConfig& run = config->run;
    archsynth::validate_config(run);
    const fs::path dir = out_root(run, out_dir);
    ensure_directory(dir);
    for (std::uint64_t i = 0; i < run.seed_count; ++i) {
      const std::uint64_t seed = run.seed_start + i;
      const auto scene = archsynth::sample_scene(seed, run.ranges);
      try {
        archsynth::write_text_file(dir / archsynth::scene_file_name(seed),
                                   archsynth::serialize_scene(scene));
      } catch (const archsynth::IoError& e) {
        throw archsynth::IoError(e.what(), seed);
      }
      archsynth::logger().debug("generated scene {}", seed);
      if (scenes_written) ++*scenes_written;
    }
  });
}

as_status as_render(const as_config* config, const char* out_dir,
                    size_t* scenes_rendered) {
  if (!config) return null_argument("config");
  if (scenes_rendered) *scenes_rendered = 0;
  return guarded([&] {
    const RunConfig& run = config->run;
    archsynth::validate_config(run);
    const fs::path dir = out_root(run, out_dir);
    ensure_directory(dir);
    for (std::uint64_t i = 0; i < run.seed_count; ++i) {
      const std::uint64_t seed = run.seed_start + i;
      const auto scene = archsynth::sample_scene(seed, run.ranges);
      try {
        archsynth::write_text_file(dir / archsynth::scene_file_name(seed),
                                   archsynth::serialize_scene(scene));
      } catch (const archsynth::IoError& e) {
        throw archsynth::IoError(e.what(), seed);
      }
      write_triple(scene, run, dir);
      archsynth::logger().info("rendered scene {}", seed);
      if (scenes_rendered) ++*scenes_rendered;
    }
  });
}

as_status as_render_scene_file(const as_config* config, const char* scene_path,
                               const char* out_dir) {
  if (!config) return null_argument("config");
  if (!scene_path) return null_argument("scene_path");
  return guarded([&] {
    const RunConfig& run = config->run;
    archsynth::validate_settings(run.settings);
    const auto scene =
        archsynth::parse_scene(archsynth::read_text_file(scene_path));
    archsynth::validate_scene(scene);
    const fs::path dir = out_root(run, out_dir);
    ensure_directory(dir);
    write_triple(scene, run, dir);
  });
}

as_status as_build_dataset(const as_config* config, const char* root,
                           as_build_summary* summary) {
  if (!config) return null_argument("config");
  return guarded([&] {
    const RunConfig& run = config->run;
    archsynth::validate_config(run);
    archsynth::BuildOptions options;
    options.seed_start = run.seed_start;
    options.seed_count = static_cast<std::size_t>(run.seed_count);
    options.ranges = run.ranges;
    options.settings = run.settings;
    options.counts = run.split_counts;
    options.split_seed = run.split_seed;
    options.root = out_root(run, root);
    options.workers = run.workers;
    const auto result = archsynth::build_dataset(options);
    if (summary) {
      *summary = {};
      summary->entries = result.manifest.entries.size();
      summary->rendered = result.rendered.size();
      summary->skipped = result.skipped;
      summary->train = result.manifest.counts.train;
      summary->val = result.manifest.counts.val;
      summary->test = result.manifest.counts.test;
    }
  });
}

as_status as_evaluate(const as_config* config, const char* pred_dir,
                      const char* gt_dir, as_eval_report** out) {
  if (!config) return null_argument("config");
  if (!pred_dir) return null_argument("pred_dir");
  if (!gt_dir) return null_argument("gt_dir");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const RunConfig& run = config->run;
    archsynth::DirectoryEvalOptions options;
    options.config = run.eval;
    options.target = run.eval_target;
    options.gt_source = run.gt_source;
    auto report = archsynth::evaluate_directory(pred_dir, gt_dir, options);
    *out = new as_eval_report{std::move(report)};
  });
}

void as_eval_report_destroy(as_eval_report* report) { delete report; }

size_t as_eval_report_count(const as_eval_report* report) {
  return report ? report->report.count : 0;
}
double as_eval_report_mean(const as_eval_report* report) {
  return report ? report->report.mean : 0.0;
}
double as_eval_report_min(const as_eval_report* report) {
  return report ? report->report.min : 0.0;
}
double as_eval_report_max(const as_eval_report* report) {
  return report ? report->report.max : 0.0;
}

as_status as_eval_report_image(const as_eval_report* report, size_t index,
                               uint64_t* seed, double* score) {
  if (!report) return null_argument("report");
  const auto& images = report->report.images;
  if (index >= images.size()) {
    return set_error(AS_ERR_INVALID_ARGUMENT, "image index out of range");
  }
  if (seed) *seed = images[index].seed;
  if (score) *score = images[index].score;
  return AS_OK;
}

as_status as_eval_report_write(const as_eval_report* report, const char* dir) {
  if (!report) return null_argument("report");
  if (!dir) return null_argument("dir");
  return guarded([&] {
    const fs::path root(dir);
    ensure_directory(root);
    archsynth::write_text_file(root / "eval_report.json",
                               archsynth::serialize_report(report->report));
    archsynth::write_text_file(root / "eval_scores.csv",
                               archsynth::report_csv(report->report));
  });
}

as_status as_eval_report_table(const as_eval_report* report, char* buffer,
                               size_t capacity, size_t* needed) {
  if (!report) return null_argument("report");
  return copy_out(archsynth::report_table(report->report), buffer, capacity,
                  needed);
}

as_status as_score_images(const as_image_view* pred, const as_image_view* gt,
                          int32_t threshold, int32_t summed, double* score) {
  if (!pred) return null_argument("pred");
  if (!gt) return null_argument("gt");
  if (!score) return null_argument("score");
  auto to_image = [](const as_image_view& view) {
    if (view.width <= 0 || view.height <= 0 ||
        (view.channels != 1 && view.channels != 3) || !view.pixels) {
      throw archsynth::InputError("invalid image view");
    }
    archsynth::Image image(view.width, view.height, view.channels);
    std::memcpy(image.pixels.data(), view.pixels, image.pixels.size());
    return image;
  };
  return guarded([&] {
    const archsynth::EvalConfig config{
        threshold, summed ? archsynth::ErrorMode::summed
                          : archsynth::ErrorMode::per_channel};
    *score = archsynth::thresh_accuracy(to_image(*pred), to_image(*gt), config);
  });
}

as_status as_aggregate_scores(const double* scores, size_t count, double* mean,
                              double* min, double* max) {
  if (!scores && count > 0) return null_argument("scores");
  return guarded([&] {
    const auto report = archsynth::aggregate({scores, count});
    if (mean) *mean = report.mean;
    if (min) *min = report.min;
    if (max) *max = report.max;
  });
}

}  // extern "C"

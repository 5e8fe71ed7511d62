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

// archsynth command-line tool.
//
//   archsynth generate [--config F] [--seed-start N] [--seed-count N] [--out D]
//   archsynth render   [...] [--scene FILE]
//   archsynth build    [...]                       (alias: dataset)
//   archsynth evaluate PRED GT [--threshold T] [--target label|depth]
//
// Flags override the config file. Paths other than --config and --out are
// resolved against the output root unless absolute. Exit codes: 0 success,
// 1 usage or configuration error, 2 runtime or I/O error. Log verbosity comes
// from ARCHSYNTH_LOG_LEVEL (trace, debug, info, warn, error, off).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "archsynth/archsynth.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed_start;
  std::optional<std::uint64_t> seed_count;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<int> threshold;
  std::optional<std::string> target;
  bool gt_pairs = false;
  std::optional<int> resolution;
  std::optional<int> spp;
  std::vector<std::string> overrides;
  std::string scene;
  std::string pred;
  std::string gt;
  std::string report_dir;
};

int exit_code(as_status status) {
  switch (status) {
    case AS_OK: return kExitOk;
    case AS_ERR_CONFIG:
    case AS_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitRuntime;
  }
}

int report(as_status status) {
  if (status != AS_OK) {
    std::fprintf(stderr, "archsynth: %s: %s\n", as_status_name(status),
                 as_last_error());
  }
  return exit_code(status);
}

class ConfigHandle {
 public:
  ConfigHandle() {
    if (as_config_create(&config_) != AS_OK) config_ = nullptr;
  }
  ~ConfigHandle() { as_config_destroy(config_); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
  as_config* get() const { return config_; }

 private:
  as_config* config_ = nullptr;
};

std::string configured_output_root(const as_config* config) {
  std::size_t needed = 0;
  as_config_get(config, "output_root", nullptr, 0, &needed);
  std::string text(needed, '\0');
  if (as_config_get(config, "output_root", text.data(), text.size(), &needed) !=
      AS_OK) {
    return ".";
  }
  text.resize(needed - 1);
  return text;
}

// Applies the config file and flag overrides, then validates.
as_status configure(const ConfigHandle& handle, const Options& o) {
  as_config* config = handle.get();
  if (!config) return AS_ERR_INTERNAL;
  as_status s = AS_OK;
  auto apply = [&](as_status next) {
    if (s == AS_OK) s = next;
  };
  if (!o.config_path.empty()) apply(as_config_load_file(config, o.config_path.c_str()));
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "archsynth: --set expects KEY=VALUE, got '%s'\n",
                   kv.c_str());
      return AS_ERR_INVALID_ARGUMENT;
    }
    apply(as_config_set(config, kv.substr(0, eq).c_str(),
                        kv.substr(eq + 1).c_str()));
  }
  if (o.seed_start) apply(as_config_set(config, "seed_start",
                                        std::to_string(*o.seed_start).c_str()));
  if (o.seed_count) apply(as_config_set(config, "seed_count",
                                        std::to_string(*o.seed_count).c_str()));
  if (o.workers) apply(as_config_set_int(config, "workers", *o.workers));
  if (o.out) apply(as_config_set_string(config, "output_root", o.out->c_str()));
  if (o.threshold) apply(as_config_set_int(config, "eval.threshold", *o.threshold));
  if (o.target) apply(as_config_set_string(config, "eval.target", o.target->c_str()));
  if (o.gt_pairs) apply(as_config_set_string(config, "eval.gt_source", "pair_right_half"));
  if (o.resolution) apply(as_config_set_int(config, "render.resolution", *o.resolution));
  if (o.spp) apply(as_config_set_int(config, "render.samples_per_pixel", *o.spp));
  if (s == AS_OK) s = as_config_validate(config);
  return s;
}

std::string resolve(const std::string& root, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (fs::path(root) / p).string();
}

int run_generate(const Options& o) {
  ConfigHandle config;
  if (as_status s = configure(config, o); s != AS_OK) return report(s);
  std::size_t written = 0;
  const as_status s = as_generate(config.get(), nullptr, &written);
  if (s == AS_OK) {
    std::printf("wrote %zu scene files to %s\n", written,
                configured_output_root(config.get()).c_str());
  }
  return report(s);
}

int run_render(const Options& o) {
  ConfigHandle config;
  if (as_status s = configure(config, o); s != AS_OK) return report(s);
  const std::string root = configured_output_root(config.get());
  if (!o.scene.empty()) {
    const std::string scene = resolve(root, o.scene);
    const as_status s = as_render_scene_file(config.get(), scene.c_str(), nullptr);
    if (s == AS_OK) std::printf("rendered %s into %s\n", scene.c_str(), root.c_str());
    return report(s);
  }
  std::size_t rendered = 0;
  const as_status s = as_render(config.get(), nullptr, &rendered);
  if (s == AS_OK) std::printf("rendered %zu scenes into %s\n", rendered, root.c_str());
  return report(s);
}

int run_build(const Options& o) {
  ConfigHandle config;
  if (as_status s = configure(config, o); s != AS_OK) return report(s);
  as_build_summary summary{};
  const as_status s = as_build_dataset(config.get(), nullptr, &summary);
  if (s == AS_OK) {
    std::printf(
        "dataset %s: %zu entries (train %zu, val %zu, test %zu); rendered %zu, "
        "skipped %zu\n",
        configured_output_root(config.get()).c_str(), summary.entries,
        summary.train, summary.val, summary.test, summary.rendered,
        summary.skipped);
  }
  return report(s);
}

int run_evaluate(const Options& o) {
  ConfigHandle config;
  if (as_status s = configure(config, o); s != AS_OK) return report(s);
  const std::string root = configured_output_root(config.get());
  const std::string pred = resolve(root, o.pred);
  const std::string gt = resolve(root, o.gt);
  as_eval_report* raw = nullptr;
  as_status s = as_evaluate(config.get(), pred.c_str(), gt.c_str(), &raw);
  if (s != AS_OK) return report(s);
  std::unique_ptr<as_eval_report, decltype(&as_eval_report_destroy)> result(
      raw, &as_eval_report_destroy);
  const std::string report_dir =
      o.report_dir.empty() ? root : resolve(root, o.report_dir);
  s = as_eval_report_write(result.get(), report_dir.c_str());
  if (s != AS_OK) return report(s);
  std::size_t needed = 0;
  as_eval_report_table(result.get(), nullptr, 0, &needed);
  std::string table(needed, '\0');
  s = as_eval_report_table(result.get(), table.data(), table.size(), &needed);
  if (s != AS_OK) return report(s);
  std::fputs(table.c_str(), stdout);
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "Config file (structured text)");
  cmd->add_option("--seed-start", o.seed_start, "First scene seed");
  cmd->add_option("--seed-count", o.seed_count, "Number of consecutive seeds");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "Output root directory");
  cmd->add_option("--resolution", o.resolution, "Image side length in pixels");
  cmd->add_option("--spp", o.spp, "Photo samples per pixel");
  cmd->add_option("--set", o.overrides, "Config override KEY=VALUE")
      ->type_name("KEY=VALUE");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic classroom scenes, renders, paired datasets and "
               "pixel-accuracy evaluation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(as_version()));
  Options o;

  auto* generate = app.add_subcommand("generate", "Sample scene files");
  add_common(generate, o);

  auto* render = app.add_subcommand("render", "Render photo, label and depth");
  add_common(render, o);
  render->add_option("--scene", o.scene, "Render one scene file");

  auto* build = app.add_subcommand("build", "Build a paired dataset");
  build->alias("dataset");
  add_common(build, o);

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions");
  add_common(evaluate, o);
  evaluate->add_option("pred", o.pred, "Prediction directory")->required();
  evaluate->add_option("gt", o.gt, "Ground-truth directory")->required();
  evaluate->add_option("--threshold", o.threshold, "Squared-error threshold root");
  evaluate->add_option("--target", o.target, "Ground-truth kind")
      ->check(CLI::IsMember({"label", "depth"}));
  evaluate->add_flag("--gt-pairs", o.gt_pairs,
                     "Ground truth is paired images; score the right half");
  evaluate->add_option("--report-dir", o.report_dir,
                       "Directory for eval_report.json and eval_scores.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*generate) return run_generate(o);
  if (*render) return run_render(o);
  if (*build) return run_build(o);
  return run_evaluate(o);
}

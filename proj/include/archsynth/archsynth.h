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

/* C interface to the archsynth library.
 *
 * Every function returns an as_status. On failure a thread-local message is
 * available from as_last_error() until the next call on the same thread; for
 * AS_ERR_CONFIG, as_last_error_field() names the offending configuration key.
 * Handles are opaque and must be released with their destroy function.
 * Output strings are copied into caller buffers: pass a buffer of `capacity`
 * bytes; `*needed` receives the full length including the terminator and
 * AS_ERR_BUFFER_TOO_SMALL is returned if it does not fit.
 */

#ifndef ARCHSYNTH_ARCHSYNTH_H_
#define ARCHSYNTH_ARCHSYNTH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ARCHSYNTH_BUILDING_LIBRARY)
#define AS_API __declspec(dllexport)
#else
#define AS_API __declspec(dllimport)
#endif
#else
#define AS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum as_status {
  AS_OK = 0,
  AS_ERR_INVALID_ARGUMENT = 1, /* null handle, null pointer, bad enum */
  AS_ERR_CONFIG = 2,           /* invalid configuration value or key */
  AS_ERR_INPUT = 3,            /* malformed scene, image or directory data */
  AS_ERR_IO = 4,               /* file system failure */
  AS_ERR_BUFFER_TOO_SMALL = 5,
  AS_ERR_INTERNAL = 6
} as_status;

typedef struct as_config as_config;
typedef struct as_eval_report as_eval_report;

typedef struct as_build_summary {
  size_t entries;
  size_t rendered;
  size_t skipped;
  size_t train;
  size_t val;
  size_t test;
} as_build_summary;

typedef struct as_image_view {
  int32_t width;
  int32_t height;
  int32_t channels; /* 1 or 3, interleaved, row-major */
  const uint8_t* pixels;
} as_image_view;

AS_API const char* as_version(void);
AS_API const char* as_status_name(as_status status);
AS_API const char* as_last_error(void);
AS_API const char* as_last_error_field(void);

/* Configuration. Keys are dotted paths such as "render.resolution". */
AS_API as_status as_config_create(as_config** out);
AS_API void as_config_destroy(as_config* config);
AS_API as_status as_config_load_file(as_config* config, const char* path);
AS_API as_status as_config_load_text(as_config* config, const char* text);
/* `value` is structured text: 64, [6, 8], "depth", null. */
AS_API as_status as_config_set(as_config* config, const char* key,
                               const char* value);
AS_API as_status as_config_set_int(as_config* config, const char* key,
                                   int64_t value);
AS_API as_status as_config_set_string(as_config* config, const char* key,
                                      const char* value);
/* Current value of `key` as structured text; strings come back unquoted. */
AS_API as_status as_config_get(const as_config* config, const char* key,
                               char* buffer, size_t capacity, size_t* needed);
AS_API as_status as_config_validate(const as_config* config);
AS_API as_status as_config_to_text(const as_config* config, char* buffer,
                                   size_t capacity, size_t* needed);

/* Commands. A null `out_dir` uses the configured output root. */
AS_API as_status as_generate(const as_config* config, const char* out_dir,
                             size_t* scenes_written);
AS_API as_status as_render(const as_config* config, const char* out_dir,
                           size_t* scenes_rendered);
AS_API as_status as_render_scene_file(const as_config* config,
                                      const char* scene_path,
                                      const char* out_dir);
AS_API as_status as_build_dataset(const as_config* config, const char* root,
                                  as_build_summary* summary);

/* Evaluation. */
AS_API as_status as_evaluate(const as_config* config, const char* pred_dir,
                             const char* gt_dir, as_eval_report** out);
AS_API void as_eval_report_destroy(as_eval_report* report);
AS_API size_t as_eval_report_count(const as_eval_report* report);
AS_API double as_eval_report_mean(const as_eval_report* report);
AS_API double as_eval_report_min(const as_eval_report* report);
AS_API double as_eval_report_max(const as_eval_report* report);
AS_API as_status as_eval_report_image(const as_eval_report* report,
                                      size_t index, uint64_t* seed,
                                      double* score);
/* Writes eval_report.json and eval_scores.csv into `dir`. */
AS_API as_status as_eval_report_write(const as_eval_report* report,
                                      const char* dir);
AS_API as_status as_eval_report_table(const as_eval_report* report,
                                      char* buffer, size_t capacity,
                                      size_t* needed);

/* Scores one image pair; `summed` selects the summed-channel error. */
AS_API as_status as_score_images(const as_image_view* pred,
                                 const as_image_view* gt, int32_t threshold,
                                 int32_t summed, double* score);
AS_API as_status as_aggregate_scores(const double* scores, size_t count,
                                     double* mean, double* min, double* max);

#ifdef __cplusplus
}
#endif

#endif /* ARCHSYNTH_ARCHSYNTH_H_ */

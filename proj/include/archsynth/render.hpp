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

// Photo, label and depth passes.
//
// The photo pass shades the full scene: Lambertian surfaces lit by a uniform
// ambient radiance plus sky light entering through the window openings
// (area-sampled, with shadow rays against boxes). Radiance is scaled by the
// exposure, clamped to [0, 1] and gamma-encoded with 1/2.2.
//
// Label and depth passes trace one ray through each pixel center against the
// architecture-only geometry (shell and openings), so clutter, chairs and the
// blackboard never appear in them.
//
// Every pixel draws from its own random stream keyed by (scene seed, render
// seed, pixel index); the worker count does not affect the output.

#ifndef ARCHSYNTH_RENDER_HPP_
#define ARCHSYNTH_RENDER_HPP_

#include <cstdint>
#include <string>

#include "archsynth/geometry.hpp"
#include "archsynth/image.hpp"
#include "archsynth/intersect.hpp"
#include "archsynth/scene.hpp"

namespace archsynth {

enum class DoorLabel { magenta, wall };

struct RenderSettings {
  int resolution = 512;
  int samples_per_pixel = 8;
  int shadow_samples = 1;  // per photo sample
  double depth_max_m = 20.0;
  double exposure = 1.0;
  std::uint64_t render_seed = 0;
  DoorLabel door_label = DoorLabel::magenta;

  friend bool operator==(const RenderSettings&, const RenderSettings&) = default;
};

inline constexpr double kDisplayGamma = 2.2;
inline constexpr Rgb kSkyColor{1.0, 0.98, 0.95};

// Throws ConfigError naming "render.<field>".
void validate_settings(const RenderSettings& settings);

// Canonical one-line description; its FNV-1a hash is the settings hash.
std::string settings_text(const RenderSettings& settings);
std::uint64_t settings_hash(const RenderSettings& settings);

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend constexpr bool operator==(const Rgb8&, const Rgb8&) = default;
};

namespace palette {
inline constexpr Rgb8 kWall{255, 0, 0};
inline constexpr Rgb8 kCeiling{0, 255, 0};
inline constexpr Rgb8 kFloor{0, 0, 255};
inline constexpr Rgb8 kWindow{255, 255, 0};
inline constexpr Rgb8 kDoor{255, 0, 255};
}  // namespace palette

// Palette color of an architectural class. Throws InternalError otherwise.
Rgb8 label_color(SurfaceClass cls, DoorLabel door_label = DoorLabel::magenta);

// Ray through image position (px, py) measured in pixels from the top-left
// corner; pixel (i, j) has its center at (i + 0.5, j + 0.5).
Ray primary_ray(const CameraSpec& camera, int resolution, double px, double py);

// round(255 * min(d, depth_max) / depth_max)
std::uint8_t encode_depth(double distance_m, double depth_max_m);

std::uint8_t tone_map(double radiance, double exposure);

// workers == 0 uses the hardware concurrency.
Image render_photo(const SceneSpec& scene, const RenderSettings& settings,
                   unsigned workers = 1);
Image render_label(const SceneSpec& scene, const RenderSettings& settings,
                   unsigned workers = 1);
Image render_depth(const SceneSpec& scene, const RenderSettings& settings,
                   unsigned workers = 1);

struct RenderTriple {
  Image photo;
  Image label;
  Image depth;
  std::uint64_t scene_seed = 0;
  std::uint64_t settings_hash = 0;
};

RenderTriple render_triple(const SceneSpec& scene,
                           const RenderSettings& settings, unsigned workers = 1);

unsigned resolve_workers(unsigned workers);

}  // namespace archsynth

#endif  // ARCHSYNTH_RENDER_HPP_

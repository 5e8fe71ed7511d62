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

#include "archsynth/render.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "archsynth/error.hpp"
#include "archsynth/rng.hpp"

namespace archsynth {

void validate_settings(const RenderSettings& s) {
  auto require = [](bool ok, const char* field, const char* message) {
    if (!ok) throw ConfigError(std::string("render.") + field, message);
  };
  require(s.resolution > 0 && s.resolution <= 8192, "resolution",
          "must lie in [1, 8192]");
  require(s.samples_per_pixel >= 1, "samples_per_pixel", "must be >= 1");
  require(s.shadow_samples >= 0, "shadow_samples", "must be >= 0");
  require(std::isfinite(s.depth_max_m) && s.depth_max_m > 0.0, "depth_max_m",
          "must be positive");
  require(std::isfinite(s.exposure) && s.exposure >= 0.0, "exposure",
          "must be non-negative");
}

std::string settings_text(const RenderSettings& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "resolution=%d spp=%d shadow=%d depth_max=%.6f exposure=%.6f "
                "gamma=%.1f render_seed=%llu door=%s",
                s.resolution, s.samples_per_pixel, s.shadow_samples,
                s.depth_max_m, s.exposure, kDisplayGamma,
                static_cast<unsigned long long>(s.render_seed),
                s.door_label == DoorLabel::magenta ? "magenta" : "wall");
  return buf;
}

std::uint64_t settings_hash(const RenderSettings& s) {
  return fnv1a64(settings_text(s));
}

Rgb8 label_color(SurfaceClass cls, DoorLabel door_label) {
  switch (cls) {
    case SurfaceClass::wall: return palette::kWall;
    case SurfaceClass::ceiling: return palette::kCeiling;
    case SurfaceClass::floor: return palette::kFloor;
    case SurfaceClass::window: return palette::kWindow;
    case SurfaceClass::door:
      return door_label == DoorLabel::magenta ? palette::kDoor : palette::kWall;
    default:
      throw InternalError("label pass hit a non-architectural surface: " +
                          std::string(to_string(cls)));
  }
}

Ray primary_ray(const CameraSpec& camera, int resolution, double px,
                double py) {
  const double tan_half = std::tan(deg_to_rad(camera.vfov_deg) * 0.5);
  const double sx = (2.0 * px / resolution - 1.0) * tan_half;
  const double sy = (1.0 - 2.0 * py / resolution) * tan_half;
  const double yaw = deg_to_rad(camera.yaw_deg);
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const Vec3 forward{s, 0.0, c};
  const Vec3 right{c, 0.0, -s};
  const Vec3 up{0.0, 1.0, 0.0};
  return {camera.position, normalize(forward + right * sx + up * sy)};
}

std::uint8_t encode_depth(double distance_m, double depth_max_m) {
  const double clamped = std::min(distance_m, depth_max_m);
  return static_cast<std::uint8_t>(std::lround(255.0 * clamped / depth_max_m));
}

std::uint8_t tone_map(double radiance, double exposure) {
  const double v = std::clamp(radiance * exposure, 0.0, 1.0);
  return static_cast<std::uint8_t>(
      std::lround(255.0 * std::pow(v, 1.0 / kDisplayGamma)));
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs row(y) for every image row. Rows are handed out dynamically; each row
// writes only its own pixels.
template <typename RowFn>
void for_each_row(int rows, unsigned workers, RowFn&& row) {
  const unsigned n = std::min<unsigned>(resolve_workers(workers),
                                        static_cast<unsigned>(rows));
  if (n <= 1) {
    for (int y = 0; y < rows; ++y) row(y);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
      pool.emplace_back([&] {
        try {
          for (int y = next.fetch_add(1); y < rows; y = next.fetch_add(1)) {
            row(y);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(rows);
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void check_camera(const CameraSpec& camera) {
  if (!(camera.vfov_deg > 0.0 && camera.vfov_deg < 180.0) ||
      !std::isfinite(camera.position.x) || !std::isfinite(camera.position.y) ||
      !std::isfinite(camera.position.z) || !std::isfinite(camera.yaw_deg)) {
    throw InternalError("degenerate camera");
  }
}

class PhotoShader {
 public:
  PhotoShader(const SceneSpec& scene, const RenderSettings& settings)
      : geometry_(SceneGeometry::build(scene, GeometryContent::full)),
        light_(scene.light),
        shadow_samples_(settings.shadow_samples) {
    for (int index : geometry_.window_indices()) {
      const auto& rect = std::get<PlaneRect>(
          geometry_.surfaces()[static_cast<std::size_t>(index)].shape);
      const double area = (rect.hi[0] - rect.lo[0]) * (rect.hi[1] - rect.lo[1]);
      total_window_area_ += area;
      windows_.push_back({rect, total_window_area_});
    }
  }

  Rgb shade(const Ray& ray, RandomStream& rng) const {
    const Hit hit = geometry_.intersect(ray);
    if (!hit.valid()) throw InternalError("primary ray left the room");
    if (hit.cls == SurfaceClass::window) {
      return {kSkyColor.r * light_.sky_radiance,
              kSkyColor.g * light_.sky_radiance,
              kSkyColor.b * light_.sky_radiance};
    }
    const Rgb& albedo =
        geometry_.surfaces()[static_cast<std::size_t>(hit.surface)].albedo;
    const double direct = sky_irradiance(ray.origin + ray.dir * hit.t,
                                         hit.normal, rng) /
                          kPi;
    return {albedo.r * (light_.ambient + direct * kSkyColor.r),
            albedo.g * (light_.ambient + direct * kSkyColor.g),
            albedo.b * (light_.ambient + direct * kSkyColor.b)};
  }

 private:
  struct WindowLight {
    PlaneRect rect;
    double cumulative_area;
  };

  // Monte Carlo estimate of the irradiance from all window openings, with
  // windows picked in proportion to their area.
  double sky_irradiance(const Vec3& p, const Vec3& n, RandomStream& rng) const {
    if (windows_.empty() || shadow_samples_ == 0 || light_.sky_radiance <= 0.0) {
      return 0.0;
    }
    const Vec3 origin = p + n * 1e-7;
    double sum = 0.0;
    for (int k = 0; k < shadow_samples_; ++k) {
      const double pick = rng.uniform01() * total_window_area_;
      const double su = rng.uniform01();
      const double sv = rng.uniform01();
      const WindowLight* w = &windows_.back();
      for (const auto& candidate : windows_) {
        if (pick < candidate.cumulative_area) {
          w = &candidate;
          break;
        }
      }
      const PlaneRect& r = w->rect;
      const auto axes = plane_axes(r.axis);
      Vec3 q;
      q[r.axis] = r.offset;
      q[axes[0]] = r.lo[0] + su * (r.hi[0] - r.lo[0]);
      q[axes[1]] = r.lo[1] + sv * (r.hi[1] - r.lo[1]);
      const Vec3 to_light = q - origin;
      const double dist2 = dot(to_light, to_light);
      const double dist = std::sqrt(dist2);
      const Vec3 omega = to_light * (1.0 / dist);
      const double cos_surface = dot(n, omega);
      const double cos_window = -omega[r.axis] * r.facing;
      if (cos_surface <= 0.0 || cos_window <= 0.0) continue;
      if (geometry_.occluded({origin, omega}, dist - 1e-6)) continue;
      sum += cos_surface * cos_window / dist2;
    }
    return sum * light_.sky_radiance * total_window_area_ / shadow_samples_;
  }

  SceneGeometry geometry_;
  LightSpec light_;
  int shadow_samples_;
  std::vector<WindowLight> windows_;
  double total_window_area_ = 0.0;
};

std::uint64_t pixel_key(const SceneSpec& scene, const RenderSettings& settings) {
  return mix64(scene.seed) ^ mix64(settings.render_seed + kGoldenGamma);
}

// Label color and encoded depth from the same primary ray and hit.
void trace_ground_truth(const SceneGeometry& arch, const SceneSpec& scene,
                        const RenderSettings& settings, int x, int y,
                        Rgb8* label, std::uint8_t* depth) {
  const Ray ray =
      primary_ray(scene.camera, settings.resolution, x + 0.5, y + 0.5);
  const Hit hit = arch.intersect(ray);
  if (!hit.valid()) throw InternalError("primary ray left the room");
  if (label) *label = label_color(hit.cls, settings.door_label);
  if (depth) *depth = encode_depth(hit.t, settings.depth_max_m);
}

void render_ground_truth(const SceneSpec& scene, const RenderSettings& settings,
                         unsigned workers, Image* label, Image* depth) {
  validate_settings(settings);
  check_camera(scene.camera);
  const SceneGeometry arch =
      SceneGeometry::build(scene, GeometryContent::architecture_only);
  const int n = settings.resolution;
  if (label) *label = Image(n, n, 3);
  if (depth) *depth = Image(n, n, 1);
  for_each_row(n, workers, [&](int y) {
    for (int x = 0; x < n; ++x) {
      Rgb8 color;
      std::uint8_t d = 0;
      trace_ground_truth(arch, scene, settings, x, y, label ? &color : nullptr,
                         depth ? &d : nullptr);
      if (label) {
        std::uint8_t* px = label->at(x, y);
        px[0] = color.r;
        px[1] = color.g;
        px[2] = color.b;
      }
      if (depth) *depth->at(x, y) = d;
    }
  });
}

}  // namespace

Image render_photo(const SceneSpec& scene, const RenderSettings& settings,
                   unsigned workers) {
  validate_settings(settings);
  check_camera(scene.camera);
  const PhotoShader shader(scene, settings);
  const int n = settings.resolution;
  const int spp = settings.samples_per_pixel;
  const std::uint64_t key = pixel_key(scene, settings);
  Image image(n, n, 3);
  for_each_row(n, workers, [&](int y) {
    for (int x = 0; x < n; ++x) {
      const auto index = static_cast<std::uint64_t>(y) * n + x;
      RandomStream rng = RandomStream::derive(key, "photo", index);
      Rgb sum;
      for (int s = 0; s < spp; ++s) {
        const double jx = rng.uniform01();
        const double jy = rng.uniform01();
        const Ray ray = primary_ray(scene.camera, n, x + jx, y + jy);
        const Rgb l = shader.shade(ray, rng);
        sum.r += l.r;
        sum.g += l.g;
        sum.b += l.b;
      }
      std::uint8_t* px = image.at(x, y);
      px[0] = tone_map(sum.r / spp, settings.exposure);
      px[1] = tone_map(sum.g / spp, settings.exposure);
      px[2] = tone_map(sum.b / spp, settings.exposure);
    }
  });
  return image;
}

Image render_label(const SceneSpec& scene, const RenderSettings& settings,
                   unsigned workers) {
  Image label;
  render_ground_truth(scene, settings, workers, &label, nullptr);
  return label;
}

Image render_depth(const SceneSpec& scene, const RenderSettings& settings,
                   unsigned workers) {
  Image depth;
  render_ground_truth(scene, settings, workers, nullptr, &depth);
  return depth;
}

RenderTriple render_triple(const SceneSpec& scene,
                           const RenderSettings& settings, unsigned workers) {
  RenderTriple triple;
  triple.photo = render_photo(scene, settings, workers);
  render_ground_truth(scene, settings, workers, &triple.label, &triple.depth);
  triple.scene_seed = scene.seed;
  triple.settings_hash = settings_hash(settings);
  return triple;
}

}  // namespace archsynth

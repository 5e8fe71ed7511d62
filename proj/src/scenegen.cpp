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

#include "archsynth/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "archsynth/error.hpp"
#include "archsynth/json_text.hpp"

namespace archsynth {

namespace {

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(std::string("ranges.") + field, message);
}

void check_interval(const RealInterval& iv, const char* field, bool positive) {
  require(std::isfinite(iv.min) && std::isfinite(iv.max), field,
          "bounds must be finite");
  require(iv.min <= iv.max, field, "min > max");
  if (positive) {
    require(iv.min > 0.0, field, "bounds must be positive");
  } else {
    require(iv.min >= 0.0, field, "bounds must be non-negative");
  }
}

void check_unit_interval(const RealInterval& iv, const char* field) {
  check_interval(iv, field, /*positive=*/false);
  require(iv.max <= 1.0, field, "bounds must lie in [0, 1]");
}

void check_count(const CountInterval& iv, const char* field) {
  require(iv.min <= iv.max, field, "min > max");
  require(iv.min >= 0, field, "counts must be non-negative");
}

// Room the given openings need on a wall: widths plus a pier on each side.
double row_length(int count, double width, double pier) {
  return count * width + (count + 1) * pier;
}

double q6(double value) { return quantize6(value); }

// Quantized draw in [0, 1).
double unit_draw(RandomStream& stream) {
  return std::min(q6(stream.uniform01()), 0.999999);
}

double draw(RandomStream& stream, const RealInterval& iv) {
  return q6(stream.uniform(iv.min, iv.max));
}

int draw(RandomStream& stream, const CountInterval& iv) {
  return static_cast<int>(stream.uniform_int(iv.min, iv.max));
}

Rgb draw_albedo(RandomStream& stream, const RealInterval& saturation,
                const RealInterval& value) {
  const Hsv hsv{stream.uniform01(), stream.uniform(saturation.min, saturation.max),
                stream.uniform(value.min, value.max)};
  const Rgb rgb = hsv_to_rgb(hsv);
  return {q6(rgb.r), q6(rgb.g), q6(rgb.b)};
}

// Spreads `count` openings of equal width along a wall. Gaps between
// neighbours and to the corners are at least `pier`; the remaining slack is
// split by random weights.
std::vector<double> layout_offsets(RandomStream& stream, double wall,
                                   int count, double width, double pier) {
  std::vector<double> offsets;
  if (count == 0) return offsets;
  const double slack = std::max(0.0, wall - row_length(count, width, pier));
  std::vector<double> weights(static_cast<std::size_t>(count) + 1);
  for (auto& w : weights) w = stream.uniform01();
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0.0) {
    std::fill(weights.begin(), weights.end(), 1.0);
    total = static_cast<double>(weights.size());
  }
  double cursor = 0.0;
  for (int i = 0; i < count; ++i) {
    cursor += pier + slack * weights[static_cast<std::size_t>(i)] / total;
    offsets.push_back(q6(cursor));
    cursor += width;
  }
  return offsets;
}

}  // namespace

void validate_ranges(const RoomRanges& r) {
  check_interval(r.width_m, "width_m", true);
  check_interval(r.depth_m, "depth_m", true);
  check_interval(r.height_m, "height_m", true);
  check_count(r.window_count, "window_count");
  check_interval(r.window_width_m, "window_width_m", true);
  check_interval(r.window_height_m, "window_height_m", true);
  check_interval(r.window_sill_m, "window_sill_m", false);
  check_count(r.door_count, "door_count");
  check_interval(r.door_width_m, "door_width_m", true);
  check_interval(r.door_height_m, "door_height_m", true);
  require(std::isfinite(r.min_pier_m) && r.min_pier_m >= 0.01, "min_pier_m",
          "must be at least 0.01 m");
  check_interval(r.blackboard_width_m, "blackboard_width_m", true);
  check_interval(r.blackboard_height_m, "blackboard_height_m", true);
  check_interval(r.blackboard_bottom_m, "blackboard_bottom_m", false);
  check_count(r.chair_count, "chair_count");
  check_interval(r.chair_scale, "chair_scale", true);
  require(r.chair_scale.max <= 2.0, "chair_scale", "max must be <= 2");
  check_count(r.clutter_floor_count, "clutter_floor_count");
  check_count(r.clutter_ceiling_count, "clutter_ceiling_count");
  check_count(r.clutter_wall_count, "clutter_wall_count");
  check_interval(r.box_width_m, "box_width_m", true);
  check_interval(r.box_height_m, "box_height_m", true);
  check_interval(r.box_depth_m, "box_depth_m", true);
  check_unit_interval(r.clutter_saturation, "clutter_saturation");
  check_unit_interval(r.clutter_value, "clutter_value");
  require(r.clutter_value.max <= kMaxClutterValue, "clutter_value",
          "max must not exceed 0.9 (reserved for window brightness)");
  check_unit_interval(r.wall_value, "wall_value");
  check_unit_interval(r.floor_value, "floor_value");
  check_unit_interval(r.ceiling_value, "ceiling_value");
  check_unit_interval(r.architecture_saturation, "architecture_saturation");
  check_interval(r.ambient, "ambient", false);
  check_interval(r.sky_radiance, "sky_radiance", false);
  require(r.camera_vfov_deg > 0.0 && r.camera_vfov_deg < 180.0,
          "camera_vfov_deg", "must lie in (0, 180)");

  // Cross-field feasibility, judged against the smallest admissible room.
  require(r.width_m.min > 2.0 * kCameraLateralMarginM, "width_m",
          "rooms must be wider than 1 m to place the camera");
  require(r.depth_m.min > kCameraBackOffsetM, "depth_m",
          "rooms must be deeper than the camera offset");
  require(r.height_m.min > kEyeHeightM, "height_m",
          "rooms must be taller than the 1.6 m eye height");
  const double smallest_dim =
      std::min({r.width_m.min, r.depth_m.min, r.height_m.min});
  require(r.box_width_m.max < smallest_dim, "box_width_m",
          "max must be smaller than the smallest room dimension");
  require(r.box_height_m.max < smallest_dim, "box_height_m",
          "max must be smaller than the smallest room dimension");
  require(r.box_depth_m.max < smallest_dim, "box_depth_m",
          "max must be smaller than the smallest room dimension");
  require(row_length(r.window_count.max, r.window_width_m.max, r.min_pier_m) <=
              r.depth_m.min,
          "window_width_m", "windows do not fit on the shortest side wall");
  require(r.window_sill_m.max + r.window_height_m.max <= r.height_m.min,
          "window_height_m", "windows taller than the lowest room");
  require(row_length(r.door_count.max, r.door_width_m.max, r.min_pier_m) <=
              r.depth_m.min,
          "door_width_m", "doors do not fit on the shortest side wall");
  require(r.door_height_m.max <= r.height_m.min, "door_height_m",
          "doors taller than the lowest room");
  require(row_length(1, r.blackboard_width_m.max, r.min_pier_m) <= r.width_m.min,
          "blackboard_width_m", "blackboard wider than the narrowest room");
  require(r.blackboard_bottom_m.max + r.blackboard_height_m.max <=
              r.height_m.min,
          "blackboard_height_m", "blackboard taller than the lowest room");
}

RoomSpec sample_room(RandomStream& stream, const RoomRanges& ranges) {
  validate_ranges(ranges);
  RoomSpec room;
  room.width_m = draw(stream, ranges.width_m);
  room.depth_m = draw(stream, ranges.depth_m);
  room.height_m = draw(stream, ranges.height_m);

  // Windows share one side wall; doors go on the opposite one.
  const bool windows_left = stream.uniform_int(0, 1) == 0;
  const Wall window_wall = windows_left ? Wall::left : Wall::right;
  const Wall door_wall = windows_left ? Wall::right : Wall::left;

  const int window_count = draw(stream, ranges.window_count);
  const double window_width = draw(stream, ranges.window_width_m);
  const double window_height = draw(stream, ranges.window_height_m);
  const double window_sill = draw(stream, ranges.window_sill_m);
  for (double offset :
       layout_offsets(stream, room.depth_m, window_count, window_width,
                      ranges.min_pier_m)) {
    room.windows.push_back({window_wall, offset, window_sill, window_width,
                            window_height, OpeningKind::window});
  }

  const int door_count = draw(stream, ranges.door_count);
  const double door_width = draw(stream, ranges.door_width_m);
  const double door_height = draw(stream, ranges.door_height_m);
  for (double offset : layout_offsets(stream, room.depth_m, door_count,
                                      door_width, ranges.min_pier_m)) {
    room.doors.push_back(
        {door_wall, offset, 0.0, door_width, door_height, OpeningKind::door});
  }

  WallRect& bb = room.blackboard;
  bb.wall = Wall::front;
  bb.width_m = draw(stream, ranges.blackboard_width_m);
  bb.height_m = draw(stream, ranges.blackboard_height_m);
  bb.bottom_m = draw(stream, ranges.blackboard_bottom_m);
  bb.u_offset = q6(stream.uniform(ranges.min_pier_m,
                                  room.width_m - ranges.min_pier_m - bb.width_m));

  room.wall_albedo =
      draw_albedo(stream, ranges.architecture_saturation, ranges.wall_value);
  room.floor_albedo =
      draw_albedo(stream, ranges.architecture_saturation, ranges.floor_value);
  room.ceiling_albedo =
      draw_albedo(stream, ranges.architecture_saturation, ranges.ceiling_value);
  room.door_albedo = {0.45, 0.3, 0.18};
  return room;
}

std::vector<ClutterBox> sample_clutter(RandomStream& stream,
                                       const RoomSpec& room,
                                       const RoomRanges& ranges) {
  (void)room;  // placement clamps against the room at render time
  std::vector<ClutterBox> boxes;
  auto draw_box = [&](HostSurface host) {
    ClutterBox box;
    box.host = host;
    box.u = unit_draw(stream);
    box.v = unit_draw(stream);
    box.dims = {draw(stream, ranges.box_width_m),
                draw(stream, ranges.box_height_m),
                draw(stream, ranges.box_depth_m)};
    box.albedo_hsv = {unit_draw(stream), draw(stream, ranges.clutter_saturation),
                      draw(stream, ranges.clutter_value)};
    boxes.push_back(box);
  };

  const int floor_count = draw(stream, ranges.clutter_floor_count);
  for (int i = 0; i < floor_count; ++i) draw_box(HostSurface::floor);
  const int ceiling_count = draw(stream, ranges.clutter_ceiling_count);
  for (int i = 0; i < ceiling_count; ++i) draw_box(HostSurface::ceiling);
  const int wall_count = draw(stream, ranges.clutter_wall_count);
  constexpr HostSurface kWalls[] = {HostSurface::front, HostSurface::back,
                                    HostSurface::left, HostSurface::right};
  for (int i = 0; i < wall_count; ++i) {
    draw_box(kWalls[stream.uniform_int(0, 3)]);
  }
  return boxes;
}

std::vector<ChairSpec> sample_chairs(RandomStream& stream, const RoomSpec& room,
                                     const RoomRanges& ranges) {
  constexpr double kSideMargin = 0.6;
  constexpr double kColumnPitch = 0.9;
  constexpr double kRowPitch = 1.1;
  constexpr double kFirstRowZ = 1.6;    // clear of the camera
  constexpr double kFrontClearance = 2.0;  // aisle before the blackboard
  constexpr double kJitter = 0.15;
  constexpr double kMaxYawJitter = 0.25;

  const int requested = draw(stream, ranges.chair_count);
  const int columns = static_cast<int>(
      std::floor((room.width_m - 2.0 * kSideMargin) / kColumnPitch));
  const int rows = static_cast<int>(
      std::floor((room.depth_m - kFirstRowZ - kFrontClearance) / kRowPitch));
  std::vector<ChairSpec> chairs;
  if (columns <= 0 || rows <= 0) return chairs;

  std::vector<int> cells(static_cast<std::size_t>(rows * columns));
  std::iota(cells.begin(), cells.end(), 0);
  for (std::size_t i = cells.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(
        stream.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(cells[i], cells[j]);
  }
  const auto count = std::min(cells.size(), static_cast<std::size_t>(requested));
  for (std::size_t k = 0; k < count; ++k) {
    const int row = cells[k] / columns;
    const int column = cells[k] % columns;
    const double x = kSideMargin + kColumnPitch * (column + 0.5) +
                     stream.uniform(-kJitter, kJitter);
    const double z = kFirstRowZ + kRowPitch * (row + 0.5) +
                     stream.uniform(-kJitter, kJitter);
    ChairSpec chair;
    chair.u = q6(x / room.width_m);
    chair.v = q6(z / room.depth_m);
    chair.yaw_rad = q6(stream.uniform(-kMaxYawJitter, kMaxYawJitter));
    chair.scale = draw(stream, ranges.chair_scale);
    chairs.push_back(chair);
  }
  return chairs;
}

CameraSpec sample_camera(RandomStream& stream, const RoomSpec& room,
                         double vfov_deg) {
  if (!(room.width_m > 2.0 * kCameraLateralMarginM)) {
    throw ConfigError("ranges.width_m",
                      "room too narrow for the 0.5 m lateral camera margin");
  }
  CameraSpec camera;
  camera.yaw_deg = q6(stream.uniform(-kMaxCameraYawDeg, kMaxCameraYawDeg));
  const double x = q6(stream.uniform(kCameraLateralMarginM,
                                     room.width_m - kCameraLateralMarginM));
  camera.position = {x, kEyeHeightM, kCameraBackOffsetM};
  camera.pitch_deg = 0.0;
  camera.roll_deg = 0.0;
  camera.vfov_deg = q6(vfov_deg);
  return camera;
}

LightSpec sample_light(RandomStream& stream, const RoomRanges& ranges) {
  LightSpec light;
  light.ambient = draw(stream, ranges.ambient);
  light.sky_radiance = draw(stream, ranges.sky_radiance);
  return light;
}

SceneSpec sample_scene(std::uint64_t seed, const RoomRanges& ranges) {
  validate_ranges(ranges);
  SceneSpec scene;
  scene.seed = seed;
  auto room_stream = RandomStream::derive(seed, "room");
  scene.room = sample_room(room_stream, ranges);
  auto clutter_stream = RandomStream::derive(seed, "clutter");
  scene.clutter = sample_clutter(clutter_stream, scene.room, ranges);
  auto chair_stream = RandomStream::derive(seed, "chairs");
  scene.chairs = sample_chairs(chair_stream, scene.room, ranges);
  auto camera_stream = RandomStream::derive(seed, "camera");
  scene.camera = sample_camera(camera_stream, scene.room, ranges.camera_vfov_deg);
  auto light_stream = RandomStream::derive(seed, "light");
  scene.light = sample_light(light_stream, ranges);
  return scene;
}

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw InputError("invalid scene: " + what);
}

void check_opening(const RoomSpec& room, const WallOpening& o,
                   const std::string& name) {
  const double length = wall_length(room, o.host_wall);
  check(o.u_offset >= 0.0 && o.width_m > 0.0 && o.height_m > 0.0 &&
            o.sill_height_m >= 0.0,
        name + " has negative or empty extent");
  check(o.u_offset + o.width_m <= length, name + " extends past its wall");
  check(o.sill_height_m + o.height_m <= room.height_m,
        name + " extends above the ceiling");
  if (o.kind == OpeningKind::door) {
    check(o.sill_height_m == 0.0, name + " must start at the floor");
  }
}

bool overlaps(double lo_a, double hi_a, double lo_b, double hi_b) {
  return lo_a < hi_b && lo_b < hi_a;
}

}  // namespace

void validate_scene(const SceneSpec& scene) {
  const RoomSpec& room = scene.room;
  check(room.width_m > 0.0 && room.depth_m > 0.0 && room.height_m > 0.0,
        "room dimensions must be positive");

  std::vector<const WallOpening*> openings;
  for (std::size_t i = 0; i < room.windows.size(); ++i) {
    check(room.windows[i].kind == OpeningKind::window,
          "windows[" + std::to_string(i) + "] has kind door");
    check_opening(room, room.windows[i], "windows[" + std::to_string(i) + "]");
    openings.push_back(&room.windows[i]);
  }
  for (std::size_t i = 0; i < room.doors.size(); ++i) {
    check(room.doors[i].kind == OpeningKind::door,
          "doors[" + std::to_string(i) + "] has kind window");
    check_opening(room, room.doors[i], "doors[" + std::to_string(i) + "]");
    openings.push_back(&room.doors[i]);
  }
  for (std::size_t i = 0; i < openings.size(); ++i) {
    for (std::size_t j = i + 1; j < openings.size(); ++j) {
      const WallOpening& a = *openings[i];
      const WallOpening& b = *openings[j];
      if (a.host_wall != b.host_wall) continue;
      check(!(overlaps(a.u_offset, a.u_offset + a.width_m, b.u_offset,
                       b.u_offset + b.width_m) &&
              overlaps(a.sill_height_m, a.sill_height_m + a.height_m,
                       b.sill_height_m, b.sill_height_m + b.height_m)),
            "openings overlap on the " + std::string(to_string(a.host_wall)) +
                " wall");
    }
  }

  const WallRect& bb = room.blackboard;
  check(bb.width_m > 0.0 && bb.height_m > 0.0 && bb.u_offset >= 0.0 &&
            bb.bottom_m >= 0.0 &&
            bb.u_offset + bb.width_m <= wall_length(room, bb.wall) &&
            bb.bottom_m + bb.height_m <= room.height_m,
        "blackboard must lie within its wall");
  for (const WallOpening* o : openings) {
    if (o->host_wall != bb.wall) continue;
    check(!(overlaps(bb.u_offset, bb.u_offset + bb.width_m, o->u_offset,
                     o->u_offset + o->width_m) &&
            overlaps(bb.bottom_m, bb.bottom_m + bb.height_m, o->sill_height_m,
                     o->sill_height_m + o->height_m)),
          "blackboard overlaps an opening");
  }

  const CameraSpec& cam = scene.camera;
  check(std::abs(cam.yaw_deg) <= kMaxCameraYawDeg, "camera yaw outside +-30");
  check(cam.pitch_deg == 0.0 && cam.roll_deg == 0.0,
        "camera pitch and roll must be zero");
  check(cam.position.x >= kCameraLateralMarginM &&
            cam.position.x <= room.width_m - kCameraLateralMarginM,
        "camera x outside the 0.5 m wall margin");
  check(cam.position.y > 0.0 && cam.position.y < room.height_m &&
            cam.position.z > 0.0 && cam.position.z < room.depth_m,
        "camera must be inside the room");
  check(cam.vfov_deg > 0.0 && cam.vfov_deg < 180.0, "camera fov out of range");

  for (std::size_t i = 0; i < scene.clutter.size(); ++i) {
    const ClutterBox& c = scene.clutter[i];
    const std::string name = "clutter[" + std::to_string(i) + "]";
    check(c.u >= 0.0 && c.u < 1.0 && c.v >= 0.0 && c.v < 1.0,
          name + " uv outside [0,1)");
    check(c.dims.w > 0.0 && c.dims.h > 0.0 && c.dims.d > 0.0,
          name + " has empty extent");
    const bool horizontal =
        c.host == HostSurface::floor || c.host == HostSurface::ceiling;
    const double span_v = horizontal ? c.dims.d : c.dims.h;
    const double normal_extent = horizontal ? c.dims.h : c.dims.d;
    check(c.dims.w <= surface_u_length(room, c.host) &&
              span_v <= surface_v_length(room, c.host),
          name + " larger than its host surface");
    const double room_normal = horizontal
                                   ? room.height_m
                                   : ((c.host == HostSurface::left ||
                                       c.host == HostSurface::right)
                                          ? room.width_m
                                          : room.depth_m);
    check(normal_extent <= room_normal, name + " deeper than the room");
    check(c.albedo_hsv.h >= 0.0 && c.albedo_hsv.h < 1.0 &&
              c.albedo_hsv.s >= 0.0 && c.albedo_hsv.s <= 1.0 &&
              c.albedo_hsv.v >= 0.0 && c.albedo_hsv.v <= 1.0,
          name + " color outside HSV ranges");
  }

  for (std::size_t i = 0; i < scene.chairs.size(); ++i) {
    const ChairSpec& ch = scene.chairs[i];
    const double r = chair_footprint_radius(ch.scale);
    const double x = ch.u * room.width_m;
    const double z = ch.v * room.depth_m;
    check(ch.scale > 0.0 && x - r >= 0.0 && x + r <= room.width_m &&
              z - r >= 0.0 && z + r <= room.depth_m &&
              ch.scale * 0.92 <= room.height_m,
          "chairs[" + std::to_string(i) + "] outside the room footprint");
  }

  check(scene.light.ambient >= 0.0 && scene.light.sky_radiance >= 0.0,
        "light intensities must be non-negative");
}

}  // namespace archsynth

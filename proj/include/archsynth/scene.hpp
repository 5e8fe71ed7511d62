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

// Parametric classroom description. A SceneSpec is self-describing: every
// world-space box and rectangle used by the renderer is derived from these
// fields by the placement functions at the bottom of this header.

#ifndef ARCHSYNTH_SCENE_HPP_
#define ARCHSYNTH_SCENE_HPP_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "archsynth/geometry.hpp"

namespace archsynth {

template <typename T>
struct Interval {
  T min{};
  T max{};

  constexpr bool contains(T value) const { return min <= value && value <= max; }
  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

using RealInterval = Interval<double>;
using CountInterval = Interval<int>;

enum class Wall : std::uint8_t { front, back, left, right };
enum class OpeningKind : std::uint8_t { window, door };
enum class HostSurface : std::uint8_t { floor, ceiling, front, back, left, right };

std::string_view to_string(Wall wall);
std::string_view to_string(OpeningKind kind);
std::string_view to_string(HostSurface surface);

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

// h in [0, 1) (fraction of a turn), s and v in [0, 1].
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
  friend constexpr bool operator==(const Hsv&, const Hsv&) = default;
};

Rgb hsv_to_rgb(Hsv hsv);

// Ranges every sampler draws from. All lengths in meters.
struct RoomRanges {
  RealInterval width_m{6.0, 12.0};
  RealInterval depth_m{7.0, 14.0};
  RealInterval height_m{2.8, 4.0};

  CountInterval window_count{1, 4};
  RealInterval window_width_m{0.8, 1.4};
  RealInterval window_height_m{1.2, 1.8};
  RealInterval window_sill_m{0.8, 1.0};

  CountInterval door_count{1, 2};
  RealInterval door_width_m{0.9, 1.2};
  RealInterval door_height_m{2.0, 2.3};

  // Minimum wall segment kept between neighbouring openings and corners.
  double min_pier_m = 0.2;

  RealInterval blackboard_width_m{2.5, 4.0};
  RealInterval blackboard_height_m{1.0, 1.3};
  RealInterval blackboard_bottom_m{0.8, 1.0};

  CountInterval chair_count{8, 24};
  RealInterval chair_scale{0.9, 1.1};

  CountInterval clutter_floor_count{3, 10};
  CountInterval clutter_ceiling_count{3, 10};
  CountInterval clutter_wall_count{3, 10};
  RealInterval box_width_m{0.1, 1.2};
  RealInterval box_height_m{0.1, 1.2};
  RealInterval box_depth_m{0.1, 1.2};
  RealInterval clutter_saturation{0.1, 0.9};
  RealInterval clutter_value{0.2, 0.9};

  RealInterval wall_value{0.6, 0.9};
  RealInterval floor_value{0.3, 0.6};
  RealInterval ceiling_value{0.8, 0.95};
  RealInterval architecture_saturation{0.0, 0.2};

  RealInterval ambient{0.15, 0.35};
  RealInterval sky_radiance{6.0, 10.0};

  double camera_vfov_deg = 60.0;

  friend bool operator==(const RoomRanges&, const RoomRanges&) = default;
};

struct WallOpening {
  Wall host_wall = Wall::left;
  double u_offset = 0.0;  // along the wall: z on side walls, x on front/back
  double sill_height_m = 0.0;
  double width_m = 0.0;
  double height_m = 0.0;
  OpeningKind kind = OpeningKind::window;
  friend bool operator==(const WallOpening&, const WallOpening&) = default;
};

struct WallRect {
  Wall wall = Wall::front;
  double u_offset = 0.0;
  double bottom_m = 0.0;
  double width_m = 0.0;
  double height_m = 0.0;
  friend bool operator==(const WallRect&, const WallRect&) = default;
};

struct RoomSpec {
  double width_m = 0.0;
  double depth_m = 0.0;
  double height_m = 0.0;
  std::vector<WallOpening> windows;
  std::vector<WallOpening> doors;
  WallRect blackboard;
  Rgb wall_albedo;
  Rgb floor_albedo;
  Rgb ceiling_albedo;
  Rgb door_albedo;
  friend bool operator==(const RoomSpec&, const RoomSpec&) = default;
};

// Box extents: w along the host surface's u axis, h vertical for floor and
// ceiling hosts (along v for walls), d along v for floor/ceiling hosts
// (protrusion into the room for walls).
struct BoxDims {
  double w = 0.0;
  double h = 0.0;
  double d = 0.0;
  friend bool operator==(const BoxDims&, const BoxDims&) = default;
};

struct ClutterBox {
  HostSurface host = HostSurface::floor;
  double u = 0.0;
  double v = 0.0;
  BoxDims dims;
  Hsv albedo_hsv;
  friend bool operator==(const ClutterBox&, const ClutterBox&) = default;
};

struct ChairSpec {
  double u = 0.0;  // floor position x / room width
  double v = 0.0;  // floor position z / room depth
  double yaw_rad = 0.0;
  double scale = 1.0;
  friend bool operator==(const ChairSpec&, const ChairSpec&) = default;
};

struct CameraSpec {
  Vec3 position;
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double vfov_deg = 60.0;
  friend bool operator==(const CameraSpec&, const CameraSpec&) = default;
};

struct LightSpec {
  double ambient = 0.0;       // uniform ambient radiance
  double sky_radiance = 0.0;  // radiance seen through window openings
  friend bool operator==(const LightSpec&, const LightSpec&) = default;
};

struct SceneSpec {
  std::uint64_t seed = 0;
  RoomSpec room;
  std::vector<ChairSpec> chairs;
  std::vector<ClutterBox> clutter;
  CameraSpec camera;
  LightSpec light;
  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

// ---------------------------------------------------------------------------
// Placement: raw fields -> world geometry.

struct AxisBox {
  Vec3 lo;
  Vec3 hi;
};

// Box rotated by `yaw_rad` about the vertical axis through its center.
struct OrientedBox {
  Vec3 center;
  Vec3 half;
  double yaw_rad = 0.0;
};

double wall_length(const RoomSpec& room, Wall wall);
double surface_u_length(const RoomSpec& room, HostSurface host);
double surface_v_length(const RoomSpec& room, HostSurface host);

// World bounds of a clutter box. (u, v) map affinely onto the host surface
// rectangle and the footprint is then clamped to stay inside it. Floor boxes
// rest on the floor, ceiling boxes hang flush, wall boxes sit flush against
// their wall.
AxisBox clutter_world_box(const RoomSpec& room, const ClutterBox& box);

// Chair model: seat, backrest and four legs, facing +z at yaw 0.
inline constexpr std::size_t kChairPartCount = 6;
std::array<OrientedBox, kChairPartCount> chair_parts(const RoomSpec& room,
                                                     const ChairSpec& chair);
// Radius of the chair's footprint around its floor position.
double chair_footprint_radius(double scale);

AxisBox blackboard_world_box(const RoomSpec& room);

inline constexpr double kBlackboardThicknessM = 0.02;

}  // namespace archsynth

#endif  // ARCHSYNTH_SCENE_HPP_

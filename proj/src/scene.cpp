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

#include "archsynth/scene.hpp"

#include <algorithm>
#include <cmath>

namespace archsynth {

std::string_view to_string(Wall wall) {
  switch (wall) {
    case Wall::front: return "front";
    case Wall::back: return "back";
    case Wall::left: return "left";
    case Wall::right: return "right";
  }
  return "?";
}

std::string_view to_string(OpeningKind kind) {
  return kind == OpeningKind::window ? "window" : "door";
}

std::string_view to_string(HostSurface surface) {
  switch (surface) {
    case HostSurface::floor: return "floor";
    case HostSurface::ceiling: return "ceiling";
    case HostSurface::front: return "front";
    case HostSurface::back: return "back";
    case HostSurface::left: return "left";
    case HostSurface::right: return "right";
  }
  return "?";
}

Rgb hsv_to_rgb(Hsv hsv) {
  const double h6 = (hsv.h - std::floor(hsv.h)) * 6.0;
  const int sector = std::min(5, static_cast<int>(h6));
  const double f = h6 - sector;
  const double v = hsv.v;
  const double p = v * (1.0 - hsv.s);
  const double q = v * (1.0 - hsv.s * f);
  const double t = v * (1.0 - hsv.s * (1.0 - f));
  switch (sector) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

double wall_length(const RoomSpec& room, Wall wall) {
  return (wall == Wall::left || wall == Wall::right) ? room.depth_m
                                                     : room.width_m;
}

double surface_u_length(const RoomSpec& room, HostSurface host) {
  switch (host) {
    case HostSurface::floor:
    case HostSurface::ceiling:
    case HostSurface::front:
    case HostSurface::back:
      return room.width_m;
    case HostSurface::left:
    case HostSurface::right:
      return room.depth_m;
  }
  return 0.0;
}

double surface_v_length(const RoomSpec& room, HostSurface host) {
  if (host == HostSurface::floor || host == HostSurface::ceiling) {
    return room.depth_m;
  }
  return room.height_m;
}

namespace {

// Center of an interval of `extent` placed at `t * span`, clamped so the
// interval stays inside [0, span].
double clamped_center(double t, double span, double extent) {
  const double half = 0.5 * extent;
  return std::clamp(t * span, half, span - half);
}

}  // namespace

AxisBox clutter_world_box(const RoomSpec& room, const ClutterBox& box) {
  const double W = room.width_m;
  const double D = room.depth_m;
  const double H = room.height_m;
  const BoxDims& s = box.dims;
  const double cu = clamped_center(box.u, surface_u_length(room, box.host), s.w);
  const double cv = clamped_center(box.v, surface_v_length(room, box.host), s.h);
  const double cfloor_v = clamped_center(box.v, D, s.d);
  switch (box.host) {
    case HostSurface::floor:
      return {{cu - 0.5 * s.w, 0.0, cfloor_v - 0.5 * s.d},
              {cu + 0.5 * s.w, s.h, cfloor_v + 0.5 * s.d}};
    case HostSurface::ceiling:
      return {{cu - 0.5 * s.w, H - s.h, cfloor_v - 0.5 * s.d},
              {cu + 0.5 * s.w, H, cfloor_v + 0.5 * s.d}};
    case HostSurface::front:
      return {{cu - 0.5 * s.w, cv - 0.5 * s.h, D - s.d},
              {cu + 0.5 * s.w, cv + 0.5 * s.h, D}};
    case HostSurface::back:
      return {{cu - 0.5 * s.w, cv - 0.5 * s.h, 0.0},
              {cu + 0.5 * s.w, cv + 0.5 * s.h, s.d}};
    case HostSurface::left:
      return {{0.0, cv - 0.5 * s.h, cu - 0.5 * s.w},
              {s.d, cv + 0.5 * s.h, cu + 0.5 * s.w}};
    case HostSurface::right:
      return {{W - s.d, cv - 0.5 * s.h, cu - 0.5 * s.w},
              {W, cv + 0.5 * s.h, cu + 0.5 * s.w}};
  }
  return {};
}

namespace {

struct ChairPartTemplate {
  Vec3 center;
  Vec3 half;
};

constexpr std::array<ChairPartTemplate, kChairPartCount> kChairTemplate{{
    {{0.0, 0.45, 0.0}, {0.22, 0.02, 0.21}},       // seat
    {{0.0, 0.695, -0.19}, {0.22, 0.225, 0.02}},   // backrest
    {{-0.19, 0.215, -0.18}, {0.02, 0.215, 0.02}},  // legs
    {{0.19, 0.215, -0.18}, {0.02, 0.215, 0.02}},
    {{-0.19, 0.215, 0.18}, {0.02, 0.215, 0.02}},
    {{0.19, 0.215, 0.18}, {0.02, 0.215, 0.02}},
}};

}  // namespace

std::array<OrientedBox, kChairPartCount> chair_parts(const RoomSpec& room,
                                                     const ChairSpec& chair) {
  const Vec3 base{chair.u * room.width_m, 0.0, chair.v * room.depth_m};
  const double c = std::cos(chair.yaw_rad);
  const double s = std::sin(chair.yaw_rad);
  std::array<OrientedBox, kChairPartCount> parts;
  for (std::size_t i = 0; i < kChairPartCount; ++i) {
    const auto& tpl = kChairTemplate[i];
    parts[i].center = base + rotate_yaw(tpl.center * chair.scale, c, s);
    parts[i].half = tpl.half * chair.scale;
    parts[i].yaw_rad = chair.yaw_rad;
  }
  return parts;
}

double chair_footprint_radius(double scale) {
  return scale * std::sqrt(0.22 * 0.22 + 0.21 * 0.21);
}

AxisBox blackboard_world_box(const RoomSpec& room) {
  const WallRect& bb = room.blackboard;
  const double lo_u = bb.u_offset;
  const double hi_u = bb.u_offset + bb.width_m;
  const double lo_y = bb.bottom_m;
  const double hi_y = bb.bottom_m + bb.height_m;
  const double t = kBlackboardThicknessM;
  switch (bb.wall) {
    case Wall::front:
      return {{lo_u, lo_y, room.depth_m - t}, {hi_u, hi_y, room.depth_m}};
    case Wall::back:
      return {{lo_u, lo_y, 0.0}, {hi_u, hi_y, t}};
    case Wall::left:
      return {{0.0, lo_y, lo_u}, {t, hi_y, hi_u}};
    case Wall::right:
      return {{room.width_m - t, lo_y, lo_u}, {room.width_m, hi_y, hi_u}};
  }
  return {};
}

}  // namespace archsynth

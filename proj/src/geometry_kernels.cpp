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

#include <algorithm>
#include <cmath>

#include "archsynth/intersect.hpp"

namespace archsynth {

std::string_view to_string(SurfaceClass cls) {
  switch (cls) {
    case SurfaceClass::wall: return "wall";
    case SurfaceClass::ceiling: return "ceiling";
    case SurfaceClass::floor: return "floor";
    case SurfaceClass::window: return "window";
    case SurfaceClass::door: return "door";
    case SurfaceClass::blackboard: return "blackboard";
    case SurfaceClass::clutter: return "clutter";
    case SurfaceClass::chair: return "chair";
  }
  return "?";
}

bool intersect_plane_rect(const Ray& ray, const PlaneRect& rect, double& t) {
  const int a = rect.axis;
  const double d = ray.dir[a];
  // Visible side only: the ray must travel against the normal.
  if (!(d * rect.facing < 0.0)) return false;
  const double candidate = (rect.offset - ray.origin[a]) / d;
  if (!(candidate > kRayEpsilon)) return false;
  const auto axes = plane_axes(a);
  for (int k = 0; k < 2; ++k) {
    const double p = ray.origin[axes[k]] + candidate * ray.dir[axes[k]];
    if (p < rect.lo[k] || p > rect.hi[k]) return false;
  }
  t = candidate;
  return true;
}

namespace {

bool slab_box(const Vec3& origin, const Vec3& dir, const Vec3& half, double& t,
              int& axis, double& sign) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  axis = -1;
  for (int a = 0; a < 3; ++a) {
    const double o = origin[a];
    const double d = dir[a];
    const double h = half[a];
    if (d == 0.0) {
      if (o < -h || o > h) return false;
      continue;
    }
    const double inv = 1.0 / d;
    const double t_lo = (-h - o) * inv;
    const double t_hi = (h - o) * inv;
    const double enter = d > 0.0 ? t_lo : t_hi;
    const double leave = d > 0.0 ? t_hi : t_lo;
    if (enter > t_near) {
      t_near = enter;
      axis = a;
      sign = d > 0.0 ? -1.0 : 1.0;
    }
    t_far = std::min(t_far, leave);
  }
  if (axis < 0 || t_near > t_far || !(t_near > kRayEpsilon)) return false;
  t = t_near;
  return true;
}

bool slab_box_oriented(const Ray& ray, const OrientedBox& box, double c,
                       double s, double& t, Vec3* normal) {
  Vec3 origin = ray.origin - box.center;
  Vec3 dir = ray.dir;
  const bool rotated = box.yaw_rad != 0.0;
  if (rotated) {
    origin = rotate_yaw(origin, c, -s);
    dir = rotate_yaw(dir, c, -s);
  }
  int axis = -1;
  double sign = 0.0;
  if (!slab_box(origin, dir, box.half, t, axis, sign)) return false;
  if (normal) {
    Vec3 n;
    n[axis] = sign;
    *normal = rotated ? rotate_yaw(n, c, s) : n;
  }
  return true;
}

// Entry distance of the ray into an axis-aligned box, or +inf.
double aabb_entry(const Ray& ray, const Vec3& inv_dir, const AxisBox& box) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (ray.dir[a] == 0.0) {
      if (ray.origin[a] < box.lo[a] || ray.origin[a] > box.hi[a]) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    double t0 = (box.lo[a] - ray.origin[a]) * inv_dir[a];
    double t1 = (box.hi[a] - ray.origin[a]) * inv_dir[a];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far || t_far < 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(t_near, 0.0);
}

AxisBox world_bounds(const OrientedBox& box) {
  const double c = std::abs(std::cos(box.yaw_rad));
  const double s = std::abs(std::sin(box.yaw_rad));
  const Vec3 h = box.yaw_rad == 0.0
                     ? box.half
                     : Vec3{c * box.half.x + s * box.half.z, box.half.y,
                            s * box.half.x + c * box.half.z};
  // Pad so rounding in the rotated slab test can never fall outside.
  const Vec3 pad{1e-9, 1e-9, 1e-9};
  return {box.center - h - pad, box.center + h + pad};
}

AxisBox merge(const AxisBox& a, const AxisBox& b) {
  return {{std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y),
           std::min(a.lo.z, b.lo.z)},
          {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y),
           std::max(a.hi.z, b.hi.z)}};
}

OrientedBox from_axis_box(const AxisBox& b) {
  return {(b.lo + b.hi) * 0.5, (b.hi - b.lo) * 0.5, 0.0};
}

PlaneRect shell_rect(ShellFace face, const Vec3& ext) {
  PlaneRect r;
  switch (face) {
    case ShellFace::floor:
      r = {1, 0.0, 1.0, {0.0, 0.0}, {ext.x, ext.z}};
      break;
    case ShellFace::ceiling:
      r = {1, ext.y, -1.0, {0.0, 0.0}, {ext.x, ext.z}};
      break;
    case ShellFace::front:
      r = {2, ext.z, -1.0, {0.0, 0.0}, {ext.x, ext.y}};
      break;
    case ShellFace::back:
      r = {2, 0.0, 1.0, {0.0, 0.0}, {ext.x, ext.y}};
      break;
    case ShellFace::left:
      r = {0, 0.0, 1.0, {0.0, 0.0}, {ext.y, ext.z}};
      break;
    case ShellFace::right:
      r = {0, ext.x, -1.0, {0.0, 0.0}, {ext.y, ext.z}};
      break;
  }
  return r;
}

ShellFace face_of(Wall wall) {
  switch (wall) {
    case Wall::front: return ShellFace::front;
    case Wall::back: return ShellFace::back;
    case Wall::left: return ShellFace::left;
    case Wall::right: return ShellFace::right;
  }
  return ShellFace::front;
}

PlaneRect opening_rect(const WallOpening& o, const Vec3& ext) {
  PlaneRect r = shell_rect(face_of(o.host_wall), ext);
  const double y0 = o.sill_height_m;
  const double y1 = o.sill_height_m + o.height_m;
  const double u0 = o.u_offset;
  const double u1 = o.u_offset + o.width_m;
  if (r.axis == 0) {  // side wall: axes (y, z)
    r.lo = {y0, u0};
    r.hi = {y1, u1};
  } else {  // front/back: axes (x, y)
    r.lo = {u0, y0};
    r.hi = {u1, y1};
  }
  return r;
}

Vec3 rect_normal(const PlaneRect& r) {
  Vec3 n;
  n[r.axis] = r.facing;
  return n;
}

}  // namespace

bool intersect_box(const Ray& ray, const OrientedBox& box, double& t,
                   Vec3* normal) {
  return slab_box_oriented(ray, box, std::cos(box.yaw_rad),
                           std::sin(box.yaw_rad), t, normal);
}

SceneGeometry SceneGeometry::build(const SceneSpec& scene,
                                   GeometryContent content) {
  const RoomSpec& room = scene.room;
  SceneGeometry g;
  g.extent_ = {room.width_m, room.height_m, room.depth_m};

  auto add_opening = [&](const WallOpening& o) {
    const PlaneRect rect = opening_rect(o, g.extent_);
    const bool window = o.kind == OpeningKind::window;
    const int index = static_cast<int>(g.surfaces_.size());
    g.surfaces_.push_back({window ? SurfaceClass::window : SurfaceClass::door,
                           window ? Rgb{} : room.door_albedo, rect});
    g.openings_on_face_[static_cast<std::size_t>(face_of(o.host_wall))]
        .push_back(index);
    if (window) g.windows_.push_back(index);
  };
  for (const auto& w : room.windows) add_opening(w);
  for (const auto& d : room.doors) add_opening(d);

  g.first_shell_ = static_cast<int>(g.surfaces_.size());
  g.surfaces_.push_back({SurfaceClass::floor, room.floor_albedo,
                         shell_rect(ShellFace::floor, g.extent_)});
  g.surfaces_.push_back({SurfaceClass::ceiling, room.ceiling_albedo,
                         shell_rect(ShellFace::ceiling, g.extent_)});
  for (ShellFace f : {ShellFace::front, ShellFace::back, ShellFace::left,
                      ShellFace::right}) {
    g.surfaces_.push_back(
        {SurfaceClass::wall, room.wall_albedo, shell_rect(f, g.extent_)});
  }

  if (content == GeometryContent::full) {
    g.add_box(SurfaceClass::blackboard, Rgb{},
              from_axis_box(blackboard_world_box(room)));
    for (const auto& c : scene.clutter) {
      g.add_box(SurfaceClass::clutter, hsv_to_rgb(c.albedo_hsv),
                from_axis_box(clutter_world_box(room, c)));
    }
    constexpr Rgb kChairAlbedo{0.22, 0.2, 0.19};
    for (const auto& chair : scene.chairs) {
      const auto parts = chair_parts(room, chair);
      const int first = static_cast<int>(g.surfaces_.size());
      AxisBox bounds = world_bounds(parts[0]);
      for (const auto& part : parts) {
        g.surfaces_.push_back({SurfaceClass::chair, kChairAlbedo, part});
        g.boxes_.push_back({part, std::cos(part.yaw_rad), std::sin(part.yaw_rad)});
        bounds = merge(bounds, world_bounds(part));
      }
      g.groups_.push_back({bounds, first, static_cast<int>(parts.size())});
    }
  }
  g.build_bvh();
  return g;
}

void SceneGeometry::add_box(SurfaceClass cls, Rgb albedo,
                            const OrientedBox& box) {
  const int index = static_cast<int>(surfaces_.size());
  surfaces_.push_back({cls, albedo, box});
  boxes_.push_back({box, std::cos(box.yaw_rad), std::sin(box.yaw_rad)});
  groups_.push_back({world_bounds(box), index, 1});
}

void SceneGeometry::build_bvh() {
  nodes_.clear();
  group_order_.resize(groups_.size());
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    group_order_[i] = static_cast<int>(i);
  }
  if (!groups_.empty()) build_node(0, static_cast<int>(groups_.size()));
}

int SceneGeometry::build_node(int first, int count) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  AxisBox bounds = groups_[static_cast<std::size_t>(group_order_[first])].bounds;
  AxisBox centroids{bounds.lo + (bounds.hi - bounds.lo) * 0.5,
                    bounds.lo + (bounds.hi - bounds.lo) * 0.5};
  for (int i = first; i < first + count; ++i) {
    const AxisBox& b = groups_[static_cast<std::size_t>(group_order_[i])].bounds;
    bounds = merge(bounds, b);
    const Vec3 c = (b.lo + b.hi) * 0.5;
    centroids = merge(centroids, AxisBox{c, c});
  }
  nodes_[static_cast<std::size_t>(index)].bounds = bounds;
  if (count <= 2) {
    nodes_[static_cast<std::size_t>(index)].first = first;
    nodes_[static_cast<std::size_t>(index)].count = count;
    return index;
  }
  const Vec3 span = centroids.hi - centroids.lo;
  const int axis = span.x >= span.y && span.x >= span.z ? 0
                   : (span.y >= span.z ? 1 : 2);
  const int mid = first + count / 2;
  auto center = [&](int g) {
    const AxisBox& b = groups_[static_cast<std::size_t>(g)].bounds;
    return b.lo[axis] + b.hi[axis];
  };
  // Stable ordering on equal centers keeps the tree independent of the
  // standard library's nth_element implementation.
  std::sort(group_order_.begin() + first, group_order_.begin() + first + count,
            [&](int a, int b) {
              const double ca = center(a);
              const double cb = center(b);
              return ca < cb || (ca == cb && a < b);
            });
  const int left = build_node(first, mid - first);
  const int right = build_node(mid, first + count - mid);
  nodes_[static_cast<std::size_t>(index)].left = left;
  nodes_[static_cast<std::size_t>(index)].right = right;
  return index;
}

void SceneGeometry::intersect_shell(const Ray& ray, Hit& best) const {
  const Vec3& o = ray.origin;
  const bool inside = o.x >= 0.0 && o.x <= extent_.x && o.y >= 0.0 &&
                      o.y <= extent_.y && o.z >= 0.0 && o.z <= extent_.z;
  if (inside) {
    // Exit face of the room box, then the openings cut into it.
    constexpr ShellFace kMinFace[3] = {ShellFace::left, ShellFace::floor,
                                       ShellFace::back};
    constexpr ShellFace kMaxFace[3] = {ShellFace::right, ShellFace::ceiling,
                                       ShellFace::front};
    double t_exit = std::numeric_limits<double>::infinity();
    int face = -1;
    for (int a = 0; a < 3; ++a) {
      const double d = ray.dir[a];
      if (d == 0.0) continue;
      const ShellFace f = d > 0.0 ? kMaxFace[a] : kMinFace[a];
      const double offset = d > 0.0 ? extent_[a] : 0.0;
      const double t = (offset - o[a]) / d;
      const int fi = static_cast<int>(f);
      if (t < t_exit || (t == t_exit && fi < face)) {
        t_exit = t;
        face = fi;
      }
    }
    if (face >= 0 && t_exit > kRayEpsilon) {
      int surface = first_shell_ + face;
      const auto& rect = std::get<PlaneRect>(surfaces_[static_cast<std::size_t>(surface)].shape);
      const auto axes = plane_axes(rect.axis);
      const double p0 = o[axes[0]] + t_exit * ray.dir[axes[0]];
      const double p1 = o[axes[1]] + t_exit * ray.dir[axes[1]];
      for (int opening : openings_on_face_[static_cast<std::size_t>(face)]) {
        const auto& r = std::get<PlaneRect>(surfaces_[static_cast<std::size_t>(opening)].shape);
        if (p0 >= r.lo[0] && p0 <= r.hi[0] && p1 >= r.lo[1] && p1 <= r.hi[1]) {
          surface = opening;
          break;
        }
      }
      const Surface& s = surfaces_[static_cast<std::size_t>(surface)];
      best.t = t_exit;
      best.surface = surface;
      best.cls = s.cls;
      best.normal = rect_normal(rect);
      return;
    }
  }
  // Origin outside the room box: test every shell rectangle directly.
  for (int i = 0; i < first_shell_ + 6; ++i) {
    const Surface& s = surfaces_[static_cast<std::size_t>(i)];
    const auto& rect = std::get<PlaneRect>(s.shape);
    double t = 0.0;
    if (intersect_plane_rect(ray, rect, t) && t < best.t) {
      best.t = t;
      best.surface = i;
      best.cls = s.cls;
      best.normal = rect_normal(rect);
    }
  }
}

bool SceneGeometry::hit_box(const Ray& ray, int surface, double& t,
                            Vec3* normal) const {
  const BoxRecord& rec =
      boxes_[static_cast<std::size_t>(surface - first_box_index())];
  return slab_box_oriented(ray, rec.box, rec.cos_yaw, rec.sin_yaw, t, normal);
}

Hit SceneGeometry::intersect(const Ray& ray) const {
  Hit best;
  intersect_shell(ray, best);
  if (nodes_.empty()) return best;

  const Vec3 inv{1.0 / ray.dir.x, 1.0 / ray.dir.y, 1.0 / ray.dir.z};
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
    if (aabb_entry(ray, inv, node.bounds) > best.t) continue;
    if (node.left < 0) {
      for (int k = node.first; k < node.first + node.count; ++k) {
        const Group& group = groups_[static_cast<std::size_t>(group_order_[static_cast<std::size_t>(k)])];
        if (group.count > 1 && aabb_entry(ray, inv, group.bounds) > best.t) {
          continue;
        }
        for (int s = group.first; s < group.first + group.count; ++s) {
          double t = 0.0;
          Vec3 n;
          if (hit_box(ray, s, t, &n) &&
              (t < best.t || (t == best.t && s < best.surface))) {
            best.t = t;
            best.surface = s;
            best.cls = surfaces_[static_cast<std::size_t>(s)].cls;
            best.normal = n;
          }
        }
      }
      continue;
    }
    const double t_left =
        aabb_entry(ray, inv, nodes_[static_cast<std::size_t>(node.left)].bounds);
    const double t_right =
        aabb_entry(ray, inv, nodes_[static_cast<std::size_t>(node.right)].bounds);
    // Near child on top of the stack.
    if (t_left <= t_right) {
      if (t_right <= best.t) stack[top++] = node.right;
      if (t_left <= best.t) stack[top++] = node.left;
    } else {
      if (t_left <= best.t) stack[top++] = node.left;
      if (t_right <= best.t) stack[top++] = node.right;
    }
  }
  return best;
}

bool SceneGeometry::occluded(const Ray& ray, double max_t) const {
  if (nodes_.empty()) return false;
  const Vec3 inv{1.0 / ray.dir.x, 1.0 / ray.dir.y, 1.0 / ray.dir.z};
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
    if (aabb_entry(ray, inv, node.bounds) >= max_t) continue;
    if (node.left >= 0) {
      stack[top++] = node.left;
      stack[top++] = node.right;
      continue;
    }
    for (int k = node.first; k < node.first + node.count; ++k) {
      const Group& group = groups_[static_cast<std::size_t>(group_order_[static_cast<std::size_t>(k)])];
      if (group.count > 1 && aabb_entry(ray, inv, group.bounds) >= max_t) {
        continue;
      }
      for (int s = group.first; s < group.first + group.count; ++s) {
        double t = 0.0;
        if (hit_box(ray, s, t, nullptr) && t < max_t) return true;
      }
    }
  }
  return false;
}

}  // namespace archsynth

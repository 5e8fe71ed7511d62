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

// Ray queries against a scene.
//
// Surface order is part of the contract: openings (windows, then doors),
// the six shell rectangles (floor, ceiling, front, back, left, right), then
// boxes (blackboard, clutter, chair parts). intersect() returns the nearest
// hit with t > kRayEpsilon; equal distances resolve to the lower index, so an
// opening always wins over the wall it is cut into.
//
// All surfaces are one-sided: shell rectangles are visible from inside the
// room, boxes only from outside (a ray starting inside a box ignores it).

#ifndef ARCHSYNTH_INTERSECT_HPP_
#define ARCHSYNTH_INTERSECT_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "archsynth/geometry.hpp"
#include "archsynth/scene.hpp"

namespace archsynth {

enum class SurfaceClass : std::uint8_t {
  wall,
  ceiling,
  floor,
  window,
  door,
  blackboard,
  clutter,
  chair,
};

std::string_view to_string(SurfaceClass cls);

constexpr bool is_architectural(SurfaceClass cls) {
  return cls <= SurfaceClass::door;
}

// Rectangle in the plane {p : p[axis] == offset}. The visible side is the one
// the normal `facing * e_axis` points to. `lo`/`hi` bound the two remaining
// axes, taken in increasing axis order.
struct PlaneRect {
  int axis = 0;
  double offset = 0.0;
  double facing = 1.0;
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
};

// The two axes spanning a plane with normal `axis`, in increasing order.
constexpr std::array<int, 2> plane_axes(int axis) {
  return axis == 0 ? std::array<int, 2>{1, 2}
                   : (axis == 1 ? std::array<int, 2>{0, 2}
                                : std::array<int, 2>{0, 1});
}

struct Surface {
  SurfaceClass cls = SurfaceClass::wall;
  Rgb albedo;
  std::variant<PlaneRect, OrientedBox> shape;
};

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  int surface = -1;
  SurfaceClass cls = SurfaceClass::wall;
  Vec3 normal;  // unit, facing the ray origin

  bool valid() const { return surface >= 0; }
};

inline constexpr double kRayEpsilon = 1e-9;

// One-sided ray/rectangle test. On a hit stores t (> kRayEpsilon).
bool intersect_plane_rect(const Ray& ray, const PlaneRect& rect, double& t);

// Slab test in the box frame; reports entering hits only.
bool intersect_box(const Ray& ray, const OrientedBox& box, double& t,
                   Vec3* normal = nullptr);

enum class GeometryContent { full, architecture_only };

enum class ShellFace : int { floor, ceiling, front, back, left, right };

class SceneGeometry {
 public:
  static SceneGeometry build(const SceneSpec& scene, GeometryContent content);

  const std::vector<Surface>& surfaces() const { return surfaces_; }
  int shell_index(ShellFace face) const {
    return first_shell_ + static_cast<int>(face);
  }
  int first_box_index() const { return first_shell_ + 6; }
  const std::vector<int>& window_indices() const { return windows_; }
  // (width, height, depth) of the room box [0,W] x [0,H] x [0,D].
  Vec3 extent() const { return extent_; }

  Hit intersect(const Ray& ray) const;

  // True if any box blocks the ray before `max_t`. The shell is convex and
  // never blocks a segment between two interior points.
  bool occluded(const Ray& ray, double max_t) const;

 private:
  struct BoxRecord {
    OrientedBox box;
    double cos_yaw = 1.0;
    double sin_yaw = 0.0;
  };
  struct Group {
    AxisBox bounds;
    int first = 0;  // surface index of the first part
    int count = 0;
  };
  struct Node {
    AxisBox bounds;
    int left = -1;
    int right = -1;
    int first = 0;  // into group_order_ for leaves
    int count = 0;
  };

  void add_box(SurfaceClass cls, Rgb albedo, const OrientedBox& box);
  void build_bvh();
  int build_node(int first, int count);
  void intersect_shell(const Ray& ray, Hit& best) const;
  bool hit_box(const Ray& ray, int surface, double& t, Vec3* normal) const;

  Vec3 extent_;
  int first_shell_ = 0;
  std::vector<Surface> surfaces_;
  std::vector<BoxRecord> boxes_;  // indexed by surface - first_box_index()
  std::array<std::vector<int>, 6> openings_on_face_;
  std::vector<int> windows_;
  std::vector<Group> groups_;
  std::vector<int> group_order_;
  std::vector<Node> nodes_;
};

}  // namespace archsynth

#endif  // ARCHSYNTH_INTERSECT_HPP_

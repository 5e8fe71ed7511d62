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

#ifndef ARCHSYNTH_GEOMETRY_HPP_
#define ARCHSYNTH_GEOMETRY_HPP_

#include <cmath>

namespace archsynth {

// Room frame: x lateral (0 at the left wall), y up (0 at the floor), z depth
// (0 at the back wall, the blackboard wall is at z = room depth).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int axis) const {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }
  constexpr double& operator[](int axis) {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) {
    return {a.x * s, a.y * s, a.z * s};
  }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a * s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalize(Vec3 a) { return a * (1.0 / length(a)); }

struct Ray {
  Vec3 origin;
  Vec3 dir;  // unit length
};

// Rotation about +y by `angle` radians, applied as
// (x, z) -> (x cos + z sin, -x sin + z cos). A yaw of +a turns +z toward +x.
inline Vec3 rotate_yaw(Vec3 v, double cos_a, double sin_a) {
  return {v.x * cos_a + v.z * sin_a, v.y, -v.x * sin_a + v.z * cos_a};
}

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }

}  // namespace archsynth

#endif  // ARCHSYNTH_GEOMETRY_HPP_

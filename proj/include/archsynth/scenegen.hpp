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

#ifndef ARCHSYNTH_SCENEGEN_HPP_
#define ARCHSYNTH_SCENEGEN_HPP_

#include <cstdint>
#include <vector>

#include "archsynth/rng.hpp"
#include "archsynth/scene.hpp"

namespace archsynth {

inline constexpr double kEyeHeightM = 1.6;
inline constexpr double kCameraBackOffsetM = 0.5;
inline constexpr double kCameraLateralMarginM = 0.5;
inline constexpr double kMaxCameraYawDeg = 30.0;
inline constexpr double kMaxClutterValue = 0.9;

// Throws ConfigError naming the first offending field ("ranges.<name>").
void validate_ranges(const RoomRanges& ranges);

RoomSpec sample_room(RandomStream& stream, const RoomRanges& ranges);
std::vector<ClutterBox> sample_clutter(RandomStream& stream,
                                       const RoomSpec& room,
                                       const RoomRanges& ranges);
std::vector<ChairSpec> sample_chairs(RandomStream& stream, const RoomSpec& room,
                                     const RoomRanges& ranges);
CameraSpec sample_camera(RandomStream& stream, const RoomSpec& room,
                         double vfov_deg = 60.0);
LightSpec sample_light(RandomStream& stream, const RoomRanges& ranges);

// Each sampler gets its own sub-stream derived from (seed, purpose tag):
// "room", "clutter", "chairs", "camera", "light".
SceneSpec sample_scene(std::uint64_t seed, const RoomRanges& ranges);

// Structural invariants of a (possibly hand-written) scene. Throws InputError.
void validate_scene(const SceneSpec& scene);

}  // namespace archsynth

#endif  // ARCHSYNTH_SCENEGEN_HPP_

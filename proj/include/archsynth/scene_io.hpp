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

// SceneSpec text format.
//
// One JSON document per scene, keys in the fixed order written by
// serialize_scene(), reals with exactly six fractional digits. Files are named
// scene_<seed as 8+ zero-padded decimal digits>.json, e.g. scene_00000007.json.

#ifndef ARCHSYNTH_SCENE_IO_HPP_
#define ARCHSYNTH_SCENE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "archsynth/scene.hpp"

namespace archsynth {

inline constexpr std::string_view kSceneFormat = "archsynth.scene/1";

std::string serialize_scene(const SceneSpec& scene);
SceneSpec parse_scene(std::string_view text);  // throws InputError

std::string scene_file_name(std::uint64_t seed);
// Zero-padded seed used in every per-scene file name.
std::string seed_stem(std::uint64_t seed);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace archsynth

#endif  // ARCHSYNTH_SCENE_IO_HPP_

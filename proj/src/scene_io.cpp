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

#include "archsynth/scene_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "archsynth/error.hpp"
#include "archsynth/json_text.hpp"

namespace archsynth {

namespace {

using Json = nlohmann::ordered_json;

Json triple(double a, double b, double c) {
  return Json::array({quantize6(a), quantize6(b), quantize6(c)});
}

Json opening_json(const WallOpening& o) {
  Json j;
  j["wall"] = std::string(to_string(o.host_wall));
  j["u_offset"] = quantize6(o.u_offset);
  j["sill_height_m"] = quantize6(o.sill_height_m);
  j["width_m"] = quantize6(o.width_m);
  j["height_m"] = quantize6(o.height_m);
  return j;
}

// Strict reader: every expected key must be present and no others.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("expected an object");
  }
  ~Reader() = default;

  const Json& at(const char* key) {
    seen_.insert(key);
    auto it = node_.find(key);
    if (it == node_.end()) fail(std::string("missing key '") + key + "'");
    return *it;
  }

  double real(const char* key) {
    const Json& v = at(key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    return v.get<double>();
  }

  std::string text(const char* key) {
    const Json& v = at(key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  }

  std::array<double, 3> real3(const char* key) {
    const Json& v = at(key);
    if (!v.is_array() || v.size() != 3) {
      fail(std::string("'") + key + "' must be an array of 3 numbers");
    }
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number()) fail(std::string("'") + key + "' must be numeric");
      out[i] = v[i].get<double>();
    }
    return out;
  }

  const Json& array(const char* key) {
    const Json& v = at(key);
    if (!v.is_array()) fail(std::string("'") + key + "' must be an array");
    return v;
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) fail("unknown key '" + it.key() + "'");
    }
  }

  std::string child(const char* key) const { return path_ + "." + key; }

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError("scene " + path_ + ": " + message);
  }

 private:
  const Json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

Wall parse_wall(const std::string& name, const Reader& r) {
  if (name == "front") return Wall::front;
  if (name == "back") return Wall::back;
  if (name == "left") return Wall::left;
  if (name == "right") return Wall::right;
  r.fail("unknown wall '" + name + "'");
}

HostSurface parse_host(const std::string& name, const Reader& r) {
  if (name == "floor") return HostSurface::floor;
  if (name == "ceiling") return HostSurface::ceiling;
  if (name == "front") return HostSurface::front;
  if (name == "back") return HostSurface::back;
  if (name == "left") return HostSurface::left;
  if (name == "right") return HostSurface::right;
  r.fail("unknown host surface '" + name + "'");
}

Rgb parse_rgb(Reader& r, const char* key) {
  const auto v = r.real3(key);
  return {v[0], v[1], v[2]};
}

WallOpening parse_opening(const Json& node, const std::string& path,
                          OpeningKind kind) {
  Reader r(node, path);
  WallOpening o;
  o.kind = kind;
  o.host_wall = parse_wall(r.text("wall"), r);
  o.u_offset = r.real("u_offset");
  o.sill_height_m = r.real("sill_height_m");
  o.width_m = r.real("width_m");
  o.height_m = r.real("height_m");
  r.finish();
  return o;
}

}  // namespace

std::string serialize_scene(const SceneSpec& scene) {
  const RoomSpec& room = scene.room;
  Json doc;
  doc["format"] = std::string(kSceneFormat);
  doc["seed"] = scene.seed;

  Json jroom;
  jroom["width_m"] = quantize6(room.width_m);
  jroom["depth_m"] = quantize6(room.depth_m);
  jroom["height_m"] = quantize6(room.height_m);
  jroom["windows"] = Json::array();
  for (const auto& w : room.windows) jroom["windows"].push_back(opening_json(w));
  jroom["doors"] = Json::array();
  for (const auto& d : room.doors) jroom["doors"].push_back(opening_json(d));
  Json bb;
  bb["wall"] = std::string(to_string(room.blackboard.wall));
  bb["u_offset"] = quantize6(room.blackboard.u_offset);
  bb["bottom_m"] = quantize6(room.blackboard.bottom_m);
  bb["width_m"] = quantize6(room.blackboard.width_m);
  bb["height_m"] = quantize6(room.blackboard.height_m);
  jroom["blackboard"] = bb;
  Json materials;
  auto rgb = [](const Rgb& c) { return triple(c.r, c.g, c.b); };
  materials["wall"] = rgb(room.wall_albedo);
  materials["floor"] = rgb(room.floor_albedo);
  materials["ceiling"] = rgb(room.ceiling_albedo);
  materials["door"] = rgb(room.door_albedo);
  jroom["materials"] = materials;
  doc["room"] = jroom;

  doc["chairs"] = Json::array();
  for (const auto& c : scene.chairs) {
    Json j;
    j["u"] = quantize6(c.u);
    j["v"] = quantize6(c.v);
    j["yaw_rad"] = quantize6(c.yaw_rad);
    j["scale"] = quantize6(c.scale);
    doc["chairs"].push_back(j);
  }

  doc["clutter"] = Json::array();
  for (const auto& c : scene.clutter) {
    Json j;
    j["host"] = std::string(to_string(c.host));
    j["u"] = quantize6(c.u);
    j["v"] = quantize6(c.v);
    j["dims_m"] = triple(c.dims.w, c.dims.h, c.dims.d);
    j["albedo_hsv"] = triple(c.albedo_hsv.h, c.albedo_hsv.s, c.albedo_hsv.v);
    doc["clutter"].push_back(j);
  }

  Json cam;
  const CameraSpec& c = scene.camera;
  cam["position"] = triple(c.position.x, c.position.y, c.position.z);
  cam["yaw_deg"] = quantize6(c.yaw_deg);
  cam["pitch_deg"] = quantize6(c.pitch_deg);
  cam["roll_deg"] = quantize6(c.roll_deg);
  cam["vfov_deg"] = quantize6(c.vfov_deg);
  doc["camera"] = cam;

  Json light;
  light["ambient"] = quantize6(scene.light.ambient);
  light["sky_radiance"] = quantize6(scene.light.sky_radiance);
  doc["light"] = light;
  return to_fixed_text(doc);
}

SceneSpec parse_scene(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("scene: malformed JSON: ") + e.what());
  }
  Reader top(doc, "$");
  if (top.text("format") != kSceneFormat) {
    top.fail("unsupported format (expected " + std::string(kSceneFormat) + ")");
  }
  SceneSpec scene;
  const Json& seed = top.at("seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed >= 0)) {
    top.fail("'seed' must be a non-negative integer");
  }
  scene.seed = seed.get<std::uint64_t>();

  {
    Reader r(top.at("room"), top.child("room"));
    RoomSpec& room = scene.room;
    room.width_m = r.real("width_m");
    room.depth_m = r.real("depth_m");
    room.height_m = r.real("height_m");
    const Json& windows = r.array("windows");
    for (std::size_t i = 0; i < windows.size(); ++i) {
      room.windows.push_back(parse_opening(
          windows[i], r.child("windows") + "[" + std::to_string(i) + "]",
          OpeningKind::window));
    }
    const Json& doors = r.array("doors");
    for (std::size_t i = 0; i < doors.size(); ++i) {
      room.doors.push_back(parse_opening(
          doors[i], r.child("doors") + "[" + std::to_string(i) + "]",
          OpeningKind::door));
    }
    {
      Reader b(r.at("blackboard"), r.child("blackboard"));
      room.blackboard.wall = parse_wall(b.text("wall"), b);
      room.blackboard.u_offset = b.real("u_offset");
      room.blackboard.bottom_m = b.real("bottom_m");
      room.blackboard.width_m = b.real("width_m");
      room.blackboard.height_m = b.real("height_m");
      b.finish();
    }
    {
      Reader m(r.at("materials"), r.child("materials"));
      room.wall_albedo = parse_rgb(m, "wall");
      room.floor_albedo = parse_rgb(m, "floor");
      room.ceiling_albedo = parse_rgb(m, "ceiling");
      room.door_albedo = parse_rgb(m, "door");
      m.finish();
    }
    r.finish();
  }

  const Json& chairs = top.array("chairs");
  for (std::size_t i = 0; i < chairs.size(); ++i) {
    Reader r(chairs[i], "$.chairs[" + std::to_string(i) + "]");
    ChairSpec c;
    c.u = r.real("u");
    c.v = r.real("v");
    c.yaw_rad = r.real("yaw_rad");
    c.scale = r.real("scale");
    r.finish();
    scene.chairs.push_back(c);
  }

  const Json& clutter = top.array("clutter");
  for (std::size_t i = 0; i < clutter.size(); ++i) {
    Reader r(clutter[i], "$.clutter[" + std::to_string(i) + "]");
    ClutterBox b;
    b.host = parse_host(r.text("host"), r);
    b.u = r.real("u");
    b.v = r.real("v");
    const auto dims = r.real3("dims_m");
    b.dims = {dims[0], dims[1], dims[2]};
    const auto hsv = r.real3("albedo_hsv");
    b.albedo_hsv = {hsv[0], hsv[1], hsv[2]};
    r.finish();
    scene.clutter.push_back(b);
  }

  {
    Reader r(top.at("camera"), "$.camera");
    const auto p = r.real3("position");
    scene.camera.position = {p[0], p[1], p[2]};
    scene.camera.yaw_deg = r.real("yaw_deg");
    scene.camera.pitch_deg = r.real("pitch_deg");
    scene.camera.roll_deg = r.real("roll_deg");
    scene.camera.vfov_deg = r.real("vfov_deg");
    r.finish();
  }
  {
    Reader r(top.at("light"), "$.light");
    scene.light.ambient = r.real("ambient");
    scene.light.sky_radiance = r.real("sky_radiance");
    r.finish();
  }
  top.finish();
  return scene;
}

std::string seed_stem(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08llu", static_cast<unsigned long long>(seed));
  return buf;
}

std::string scene_file_name(std::uint64_t seed) {
  return "scene_" + seed_stem(seed) + ".json";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace archsynth

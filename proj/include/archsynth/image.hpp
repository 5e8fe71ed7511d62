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

#ifndef ARCHSYNTH_IMAGE_HPP_
#define ARCHSYNTH_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace archsynth {

// Interleaved 8-bit image, row-major, top row first.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c)
      : width(w), height(h), channels(c),
        pixels(static_cast<std::size_t>(w) * h * c, 0) {}

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  std::uint8_t* at(int x, int y) {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
  }
  bool same_shape(const Image& other) const {
    return width == other.width && height == other.height &&
           channels == other.channels;
  }
  friend bool operator==(const Image&, const Image&) = default;
};

// 8-bit non-interlaced PNG; 1 channel -> grayscale, 3 channels -> RGB.
void write_png(const std::filesystem::path& path, const Image& image);

// Reads 8-bit gray or RGB. Alpha is dropped, palette and 16-bit images are
// converted to 8-bit RGB/gray.
Image read_png(const std::filesystem::path& path);

// FNV-1a over shape and pixels.
std::uint64_t image_hash(const Image& image);

}  // namespace archsynth

#endif  // ARCHSYNTH_IMAGE_HPP_

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

#include "archsynth/image.hpp"

#include <png.h>

#include <cstring>
#include <string>

#include "archsynth/error.hpp"
#include "archsynth/rng.hpp"

namespace archsynth {

void write_png(const std::filesystem::path& path, const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw InputError("write_png: only 1- or 3-channel images are supported");
  }
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::string name = path.string();
  if (!png_image_write_to_file(&png, name.c_str(), 0, image.pixels.data(), 0,
                               nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError("cannot write " + name + ": " + message);
  }
}

Image read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  const std::string name = path.string();
  if (!png_image_begin_read_from_file(&png, name.c_str())) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError("cannot read " + name + ": " + message);
  }
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  Image image(static_cast<int>(png.width), static_cast<int>(png.height),
              color ? 3 : 1);
  if (!png_image_finish_read(&png, nullptr, image.pixels.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError("cannot decode " + name + ": " + message);
  }
  return image;
}

std::uint64_t image_hash(const Image& image) {
  std::uint64_t h = fnv1a64(std::to_string(image.width) + "x" +
                            std::to_string(image.height) + "x" +
                            std::to_string(image.channels));
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(image.pixels.data()),
                                  image.pixels.size()),
                 h);
}

}  // namespace archsynth

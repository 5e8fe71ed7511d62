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

#ifndef ARCHSYNTH_ERROR_HPP_
#define ARCHSYNTH_ERROR_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace archsynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration. `field()` names the offending key, e.g.
// "ranges.window_width_m".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Caller-supplied data violates a precondition (image sizes, counts, files).
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message,
                   std::optional<std::uint64_t> seed = std::nullopt)
      : Error(seed ? "scene " + std::to_string(*seed) + ": " + message
                   : message),
        seed_(seed) {}
  std::optional<std::uint64_t> seed() const { return seed_; }

 private:
  std::optional<std::uint64_t> seed_;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace archsynth

#endif  // ARCHSYNTH_ERROR_HPP_

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

#include "archsynth/json_text.hpp"

#include <cmath>
#include <cstdio>

#include "archsynth/error.hpp"

namespace archsynth {

double quantize6(double value) {
  const double q = std::round(value * 1e6) / 1e6;
  return q == 0.0 ? 0.0 : q;  // no negative zero
}

namespace {

using Json = nlohmann::ordered_json;

bool is_scalar_array(const Json& array) {
  for (const auto& item : array) {
    if (item.is_structured()) return false;
  }
  return true;
}

void emit(const Json& value, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(it.key()).dump();
        out += ": ";
        emit(it.value(), depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(value)) {
        out += "[";
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out += ", ";
          emit(value[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        emit(value[i], depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", quantize6(value.get<double>()));
      out += buf;
      return;
    }
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string to_fixed_text(const nlohmann::ordered_json& doc) {
  std::string out;
  emit(doc, 0, out);
  out += "\n";
  return out;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t parse_hex64(const std::string& text) {
  if (text.size() != 16) throw InputError("expected 16 hex digits: " + text);
  std::uint64_t value = 0;
  for (char c : text) {
    value <<= 4;
    if (c >= '0' && c <= '9') {
      value |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      value |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else {
      throw InputError("expected 16 hex digits: " + text);
    }
  }
  return value;
}

}  // namespace archsynth

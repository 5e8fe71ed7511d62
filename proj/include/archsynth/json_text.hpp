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

#ifndef ARCHSYNTH_JSON_TEXT_HPP_
#define ARCHSYNTH_JSON_TEXT_HPP_

#include <string>

#include <json.hpp>

namespace archsynth {

// Rounds to 6 decimal places. Every real number that is serialized is
// quantized first, so text -> value -> text is exact.
double quantize6(double value);

// Stable structured text: keys in insertion order, two-space indent, reals
// printed with exactly 6 fractional digits, arrays of scalars on one line.
std::string to_fixed_text(const nlohmann::ordered_json& doc);

std::string hex64(std::uint64_t value);
std::uint64_t parse_hex64(const std::string& text);

}  // namespace archsynth

#endif  // ARCHSYNTH_JSON_TEXT_HPP_

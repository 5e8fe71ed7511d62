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

// Portable seeded random streams.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded by four successive
// SplitMix64 outputs. Output is fully specified by the algorithms below, so
// goldens do not depend on the standard library's distributions.
//
// Named sub-streams: RandomStream::derive(seed, tag, index) seeds a stream
// from mix64(seed + phi) ^ mix64(fnv1a64(tag) + index * phi), where phi is
// 0x9E3779B97F4A7C15 and mix64 is the SplitMix64 finalizer. Streams with
// different tags or indices are statistically independent, so e.g. the
// clutter draw never perturbs the camera draw.
//
// uniform01() returns the top 53 bits scaled by 2^-53, in [0, 1).
// uniform_int(lo, hi) is inclusive and unbiased (Lemire's multiply-shift
// with rejection).

#ifndef ARCHSYNTH_RNG_HPP_
#define ARCHSYNTH_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace archsynth {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kGoldenGamma;
  return mix64(state);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t hash = 0xCBF29CE484222325ull) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ull;
  }
  return hash;
}

class RandomStream {
 public:
  explicit constexpr RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  static constexpr RandomStream derive(std::uint64_t seed,
                                       std::string_view tag,
                                       std::uint64_t index = 0) {
    return RandomStream(mix64(seed + kGoldenGamma) ^
                        mix64(fnv1a64(tag) + index * kGoldenGamma));
  }

  constexpr std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  constexpr double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next_u64());  // full span
    unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
      const std::uint64_t floor = (0 - range) % range;
      while (low < floor) {
        m = static_cast<unsigned __int128>(next_u64()) * range;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return lo + static_cast<std::int64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace archsynth

#endif  // ARCHSYNTH_RNG_HPP_

// Copyright 2026 The TernaryLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ternarylab/rng.hpp"

#include "ternarylab/normal.hpp"

namespace ternarylab {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t round,
                     std::uint64_t worker, std::string_view purpose)
    : gen_(combine(combine(combine(mix64(seed), round), worker),
                   fnv1a(purpose))) {}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  // Strictly interior uniform keeps the quantile finite.
  const double u =
      (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  return normal_quantile(u);
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x = next_u64();
  if (rem != 0) {
    const std::uint64_t bound = 0 - rem;  // largest multiple of n
    while (x >= bound) x = next_u64();
  }
  return x % n;
}

}  // namespace ternarylab

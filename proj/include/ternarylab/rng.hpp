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

#ifndef TERNARYLAB_RNG_HPP_
#define TERNARYLAB_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace ternarylab {

// Deterministic random stream addressed by (seed, round, worker, purpose).
//
// Two streams with the same address produce identical draws on every
// platform; distinct addresses produce statistically independent draws. A
// simulation keyed by a seed is therefore bit-reproducible no matter how
// worker-level work is scheduled, as long as each (round, worker, purpose)
// consumes only its own stream and draws in a fixed order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t round, std::uint64_t worker,
            std::string_view purpose);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_unit();

  // Standard normal via the inverse CDF of a strictly interior uniform.
  double next_normal();

  // Uniform integer in [0, n), n >= 1. Rejection-sampled, unbiased.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

}  // namespace ternarylab

#endif  // TERNARYLAB_RNG_HPP_

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

#ifndef TERNARYLAB_AGGREGATORS_HPP_
#define TERNARYLAB_AGGREGATORS_HPP_

#include <vector>

#include "ternarylab/compressors.hpp"
#include "ternarylab/params.hpp"

namespace ternarylab {

// Coordinate-wise arithmetic mean of ternary messages; values in [-1, 1].
// The server steps along this mean directly (the effective step is eta/B),
// unless the caller debiases by B. Requires >= 1 message of equal dimension.
Gradient aggregate_mean(const std::vector<TernaryVector>& msgs);

// Coordinate-wise majority vote: sign of the sum with sign(0) = 0. The
// result is itself ternary, so the downlink can be compressed the same way
// as the uplink.
TernaryVector aggregate_vote(const std::vector<TernaryVector>& msgs);

// Plain mean of real-valued messages.
Gradient aggregate_plain_mean(const std::vector<Gradient>& msgs);

// Multi-Krum: each message is scored by the sum of squared L2 distances to
// its n - assumed_byzantine - 2 nearest other messages; the output is the
// mean of the `select` lowest-scored messages, ties broken by lowest input
// index. Requires n >= assumed_byzantine + 3 and 1 <= select <= n.
Gradient aggregate_multikrum(const std::vector<Gradient>& msgs,
                             int assumed_byzantine, int select);

// Centered clipping: starting from `prev`, repeat `iters` times
//   v <- v + mean_i[(Z_i - v) * min(1, radius / ||Z_i - v||_2)].
// Messages inside the radius are used exactly, so with all messages within
// `radius` of `prev` one step lands on the plain mean.
Gradient aggregate_centered_clipping(const std::vector<Gradient>& msgs,
                                     const Gradient& prev, double radius,
                                     int iters);

}  // namespace ternarylab

#endif  // TERNARYLAB_AGGREGATORS_HPP_

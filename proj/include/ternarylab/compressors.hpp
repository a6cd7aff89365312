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

#ifndef TERNARYLAB_COMPRESSORS_HPP_
#define TERNARYLAB_COMPRESSORS_HPP_

#include <vector>

#include "ternarylab/params.hpp"
#include "ternarylab/rng.hpp"

namespace ternarylab {

// Gradients are dense double vectors throughout.
using Gradient = std::vector<double>;

// Parameters of the Gaussian-noise + random-sparsification baseline.
struct GaussianSparseParams {
  double l2_clip = 1.0;      // C: per-example L2 clipping norm
  double sigma = 0.0;        // noise standard deviation
  double keep_prob = 1.0;    // coordinate keep probability in (0, 1]
  bool rescale = false;      // divide kept coordinates by keep_prob
};
void validate_gaussian_sparse(const GaussianSparseParams& q);

// Per-coordinate clamp to [-threshold, threshold]. Idempotent. Throws
// NonFinite on non-finite input.
Gradient clip_linf(const Gradient& g, double threshold);

// Rescale to L2 norm at most `threshold`: g * min(1, threshold/||g||_2).
Gradient clip_l2(const Gradient& g, double threshold);

// The ternary stochastic compressor. Coordinate i independently becomes
//   +1 with probability (A + g_i) / (2B),
//    0 with probability 1 - A/B,
//   -1 with probability (A - g_i) / (2B),
// consuming exactly one uniform draw per coordinate in coordinate order.
// B * output is an unbiased estimate of g. Requires |g_i| <= A (throws
// OutOfRange otherwise) and basic parameter sanity 0 < A <= B.
TernaryVector ternary_compress(const Gradient& g, const CompressorParams& p,
                               RngStream& rng);

// Ternary compression fused with per-round participation probability
// `participation`: nonzero probabilities are scaled by it, so the output is
// distributed exactly as ternary_compress with scale B / participation.
TernaryVector ternary_compress_sampled(const Gradient& g,
                                       const CompressorParams& p,
                                       double participation, RngStream& rng);

// Baseline mechanism: add N(0, sigma^2) per coordinate, then zero each
// coordinate independently with probability 1 - keep_prob (optionally
// dividing survivors by keep_prob). Input is the already-averaged mini-batch
// of L2-clipped per-example gradients. Draws two streams' worth of values
// from `rng`: one normal then one uniform per coordinate.
Gradient gaussian_sparse_compress(const Gradient& g,
                                  const GaussianSparseParams& q,
                                  RngStream& rng);

}  // namespace ternarylab

#endif  // TERNARYLAB_COMPRESSORS_HPP_

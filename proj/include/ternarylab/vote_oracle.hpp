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

#ifndef TERNARYLAB_VOTE_ORACLE_HPP_
#define TERNARYLAB_VOTE_ORACLE_HPP_

#include <span>

#include "ternarylab/params.hpp"

namespace ternarylab {

// Exact distribution of the sign of a sum of independent ternary messages,
// with sign(0) = 0.
struct VoteDistribution {
  double plus = 0.0;
  double zero = 0.0;
  double minus = 0.0;
};

// Exact vote-sign distribution for M workers holding fixed values `inputs`,
// each compressed independently with (A, B). Convolution over the integer
// sum, O(M^2); exact up to floating rounding. Requires |input| <= A per
// worker and M <= 25.
VoteDistribution vote_distribution_exact(std::span<const double> inputs,
                                         const CompressorParams& p);

// Closed-form bound on the probability that the vote sign disagrees with
// the sign of the mean input (ties half-weighted):
//   (1 - mean(u)^2 / B^2)^{M/2}.
// The bound is stated in terms of the mean of the inputs, which keeps it
// inside [0, 1]; a sum-based variant would need |sum| <= B and fails for
// M >= 2 even with every input admissible. Requires kVoteBound-valid
// params (B >= 2A) and mean(u) != 0.
double vote_error_bound(std::span<const double> inputs,
                        const CompressorParams& p);

// Signal gain of the majority vote: the coefficient linking the mean input
// to the vote's sign bias,
//   I(A,B,M) = sum_{n=1..M} (1-A/B)^{M-n}
//              * C(n-1, floor((n-1)/2)) * M * A^{n-1} * C(M-1, n-1)
//              / (2^{n-1} * B^n).
// Binomial products are computed in exact 128-bit integer arithmetic and
// promoted to double at the last step; M <= 60 (Overflow beyond).
double vote_gain(const CompressorParams& p, int workers);

// Exact upper tail P(S >= k) of a Poisson-binomial sum of independent
// Bernoulli(p_i), by O(M * k) convolution with an absorbing >= k bucket.
// All p_i in [0, 1]; M <= 10^4.
double poisson_binomial_tail(std::span<const double> ps, int k);

}  // namespace ternarylab

#endif  // TERNARYLAB_VOTE_ORACLE_HPP_

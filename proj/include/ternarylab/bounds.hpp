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

#ifndef TERNARYLAB_BOUNDS_HPP_
#define TERNARYLAB_BOUNDS_HPP_

#include <vector>

#include "ternarylab/params.hpp"

namespace ternarylab {

// Analysis-side inputs for the convergence-bound evaluators. These are the
// quantities a theory check supplies about the objective and the run; the
// evaluators below turn them into right-hand-side values that trajectory
// averages can be compared against.
struct BoundInputs {
  double smoothness = 1.0;          // L
  std::vector<double> sigma;        // per-coordinate gradient-noise bounds
  double initial_gap = 0.0;         // F(w_0) - F*
  double coord_bound = 0.0;         // Q: bound on |gradient coordinate|
  CompressorParams params;          // (A, B, c, b)
  int dim = 1;                      // d
  int honest = 1;                   // M
  int byzantine = 0;                // K
  long long rounds = 1;             // T
  double eta = 0.0;                 // step size (mean-aggregation bound only)

  double sigma_l1() const;
  double sigma_l2sq() const;
};

// Mean aggregation, averaged squared L2 gradient norm:
//   (F0 - F*) / (T D) + [L eta^2 / (2 B^2 D)] (A B d / M + ||sigma||_2^2 / M)
// with D = eta/B - L eta^2 / (2 B^2). Throws DegenerateStep if D <= 0.
double bound_ternary_mean(const BoundInputs& in);

// Majority vote, averaged L1 gradient norm, step 1/sqrt(T L d):
//   (F0-F*) sqrt(Ld)/sqrt(T) + sqrt(Ld)/(2 sqrt(T)) + 4||sigma||_1/sqrt(M)
//   + 2 B d / sqrt(M+1) * (1 - 1/(M+1))^{M/2}.
double bound_ternary_vote(const BoundInputs& in);

// Majority vote with K byzantine workers, averaged L1 gradient norm:
//   (F0-F*) sqrt(Ld)/sqrt(T) + sqrt(Ld)/(2 sqrt(T))
//   + 4 sqrt(M) ||sigma||_1 / (M+K) + 4 K (Q+A) d / (M+K)
//   + 2 B d / sqrt(M+K+1) * (1 - 1/(M+K+1))^{(M+K)/2}.
double bound_byzantine(const BoundInputs& in);

// Majority vote in the high-privacy regime (large B), averaged squared L2
// norm. `leading` is the exactly computable part
//   [(F0-F*) sqrt(Ld)/sqrt(T) + sqrt(Ld)/(2 sqrt(T))] / I(A,B,M);
// `residual_heuristic` is the order-of-magnitude envelope of the remaining
// series, sum_{n=2..M} (1-A/B)^{M-n} C(M,n) A^{n-2}/B^n * Q d / I(A,B,M),
// evaluated with unit constants. The residual is an estimate, not a bound.
// Requires B >= 2A.
struct HighPrivacyBound {
  double leading = 0.0;
  double residual_heuristic = 0.0;
};
HighPrivacyBound bound_vote_highprivacy(const BoundInputs& in);

}  // namespace ternarylab

#endif  // TERNARYLAB_BOUNDS_HPP_

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

#ifndef TERNARYLAB_PRIVACY_HPP_
#define TERNARYLAB_PRIVACY_HPP_

#include <span>

#include "ternarylab/params.hpp"
#include "ternarylab/tradeoff.hpp"

namespace ternarylab {

// Tradeoff curve of the ternary compressor for a single clipped value
// (b = 1). Three segments with breakpoints at (A-c)/(2B) and 1-(A+c)/(2B);
// outer slopes -(A+c)/(A-c) and -(A-c)/(A+c), middle slope -1 at height
// 1 - c/B. Requires kPrivacy-valid params with b = 1.
TradeoffCurve curve_ternary_scalar(const CompressorParams& p);

// Tradeoff curve of the ternary compressor applied to an average of b
// clipped per-example values. Breakpoints at (A-c)/(2B) and
// 1-(Ab-(b-2)c)/(2Bb); outer slope magnitude (Ab-(b-2)c)/((A-c)b), middle
// height 1 - c/(Bb). Equals curve_ternary_scalar exactly at b = 1. Requires
// kPrivacy-valid params.
TradeoffCurve curve_ternary_minibatch(const CompressorParams& p);

// The A = B limit of the scalar curve: output is always +-1 and the middle
// segment collapses. Two segments with slopes -(B+c)/(B-c) and
// -(B-c)/(B+c). Requires 0 < c < B only, since the kPrivacy inequality
// B > A + c is a mini-batch requirement.
TradeoffCurve curve_stochastic_sign(double scale, double clip);

// Gaussian approximation of the d-fold coordinate composition.
// mu = 2 sqrt(d) c / sqrt((A-c)Bb^2 + Bbc - c^2); gamma is the
// Berry-Esseen-type error term. The approximation sandwiches the composed
// curve between G_mu(alpha+gamma)-gamma and G_mu(alpha-gamma)+gamma for
// alpha in [gamma, 1-gamma], and is only meaningful when gamma < 1/2
// (clt_valid). gamma scales as d^{-1/2}.
struct GdpApproximation {
  double mu = 0.0;
  double gamma = 0.0;
  bool clt_valid = false;  // gamma < 1/2
};

// Two algebraically equivalent arrangements of the gamma expression; kept
// selectable so they can be compared numerically.
enum class GammaForm { kSingleFraction, kSplitFraction };

GdpApproximation gdp_approx_vector(
    const CompressorParams& p, int dim,
    GammaForm form = GammaForm::kSingleFraction);

// The same (mu, gamma) built generically from per-coordinate curve
// functionals, for d identical coordinates:
//   mu    = 2 d kl / sqrt(d kappa2 - d kl^2)
//   gamma = 0.56 d kappa3_bar / (d kappa2 - d kl^2)^{3/2}
// Used to cross-check the closed forms.
GdpApproximation gdp_from_functionals(const CurveFunctionals& f, int dim);

// Composition of Gaussian-tradeoff privacy levels: root-sum-of-squares.
double gdp_compose(std::span<const double> mus);

// Finds (A, B) with A = ratio * B reproducing `target_mu` from
// gdp_approx_vector at the given c, b, d. B is the positive root of
//   ratio b^2 B^2 + c b (1-b) B - c^2 (1 + 4d/mu^2) = 0.
// Requires target_mu > 0, 0 < ratio <= 1/2, c > 0, b >= 1, d >= 1. Throws
// Infeasible when the root gives A <= c (target too large for the ratio).
CompressorParams solve_params(double target_mu, double ratio, double clip,
                              int batch, int dim);

}  // namespace ternarylab

#endif  // TERNARYLAB_PRIVACY_HPP_

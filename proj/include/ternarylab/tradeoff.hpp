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

#ifndef TERNARYLAB_TRADEOFF_HPP_
#define TERNARYLAB_TRADEOFF_HPP_

#include <utility>
#include <vector>

namespace ternarylab {

// A type-I/type-II error tradeoff function: continuous, piecewise-linear,
// non-increasing, and convex on [0, 1], stored as breakpoints with strictly
// increasing alpha running from 0 to 1. Zero-width segments are merged at
// construction, so degenerate middle segments collapse to a single
// breakpoint.
class TradeoffCurve {
 public:
  // Validates shape (alpha range and order, beta in [0,1], non-increasing,
  // convex) and merges duplicate breakpoints. Throws ConfigError on invalid
  // input.
  static TradeoffCurve from_breakpoints(
      std::vector<std::pair<double, double>> points);

  const std::vector<std::pair<double, double>>& breakpoints() const {
    return points_;
  }

  // Linear interpolation; alpha outside [0, 1] is clamped.
  double value(double alpha) const;

 private:
  std::vector<std::pair<double, double>> points_;
};

// Segment-exact log-slope functionals of a piecewise-linear curve:
//   kl         = -integral of log|f'|
//   kappa2     =  integral of log^2|f'|
//   kappa3     =  integral of |log|f'||^3
//   kappa3_bar =  integral of |log|f'| + kl|^3
// Each linear segment contributes width * g(log|slope|) in closed form.
// Throws DegenerateCurve if any segment of positive width is flat.
struct CurveFunctionals {
  double kl = 0.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
  double kappa3_bar = 0.0;
};
CurveFunctionals curve_functionals(const TradeoffCurve& f);

// Smallest delta such that the curve stays above the (epsilon, delta)
// envelope: delta(eps) = sup_alpha (1 - e^eps * alpha - f(alpha)). The
// objective is concave piecewise-linear, so the supremum is attained at a
// breakpoint. Never negative.
double curve_to_epsilon_delta(const TradeoffCurve& f, double epsilon);

}  // namespace ternarylab

#endif  // TERNARYLAB_TRADEOFF_HPP_

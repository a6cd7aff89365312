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

#include "ternarylab/privacy.hpp"

#include <cmath>

#include "ternarylab/errors.hpp"

namespace ternarylab {

TradeoffCurve curve_ternary_scalar(const CompressorParams& p) {
  validate_params(p, ValidationMode::kPrivacy);
  if (p.batch != 1) throw ParamViolation("b = 1");
  const double a = p.magnitude, s = p.scale, c = p.clip;
  const double alpha1 = (a - c) / (2 * s);
  const double alpha2 = 1.0 - (a + c) / (2 * s);
  return TradeoffCurve::from_breakpoints({{0.0, 1.0},
                                          {alpha1, 1.0 - (a + c) / (2 * s)},
                                          {alpha2, (a - c) / (2 * s)},
                                          {1.0, 0.0}});
}

TradeoffCurve curve_ternary_minibatch(const CompressorParams& p) {
  validate_params(p, ValidationMode::kPrivacy);
  const double a = p.magnitude, s = p.scale, c = p.clip;
  const double b = static_cast<double>(p.batch);
  // Outer slope magnitude (Ab - (b-2)c) / ((A-c) b); the second breakpoint
  // sits at 1 - (Ab - (b-2)c) / (2Bb).
  const double top = a * b - (b - 2.0) * c;
  const double alpha1 = (a - c) / (2 * s);
  const double alpha2 = 1.0 - top / (2 * s * b);
  return TradeoffCurve::from_breakpoints({{0.0, 1.0},
                                          {alpha1, 1.0 - top / (2 * s * b)},
                                          {alpha2, (a - c) / (2 * s)},
                                          {1.0, 0.0}});
}

TradeoffCurve curve_stochastic_sign(double scale, double clip) {
  if (!(clip > 0)) throw ParamViolation("c > 0");
  // c = B would make outputs at the clip boundary deterministic, so the
  // curve collapses to zero privacy.
  if (!(clip < scale)) throw ParamViolation("c < B");
  const double knee = (scale - clip) / (2 * scale);
  return TradeoffCurve::from_breakpoints(
      {{0.0, 1.0}, {knee, knee}, {1.0, 0.0}});
}

GdpApproximation gdp_approx_vector(const CompressorParams& p, int dim,
                                   GammaForm form) {
  validate_params(p, ValidationMode::kPrivacy);
  if (dim < 1) throw ConfigError("dimension >= 1 required");
  const double a = p.magnitude, s = p.scale, c = p.clip;
  const double b = static_cast<double>(p.batch);
  const double d = static_cast<double>(dim);

  GdpApproximation out;
  out.mu = 2.0 * std::sqrt(d) * c /
           std::sqrt((a - c) * s * b * b + s * b * c - c * c);

  // Shared pieces of the error term. `variance` is the per-coordinate
  // variance of the log-likelihood ratio under the null, up to a common
  // log^2 factor that cancels between numerator and denominator.
  const double variance = ((a - c) * b + c) / (s * b) - c * c / (s * s * b * b);
  const double denom = std::pow(variance, 1.5) * std::sqrt(d);
  const double term1 =
      (a - c) / (2 * s) * std::pow(std::abs(1.0 + c / (s * b)), 3);
  const double term2 = (a * b - (b - 2.0) * c) / (2 * s * b) *
                       std::pow(std::abs(1.0 - c / (s * b)), 3);
  const double term3 =
      (1.0 - ((a - c) * b + c) / (s * b)) * std::pow(c / (s * b), 3);
  switch (form) {
    case GammaForm::kSingleFraction:
      out.gamma = 0.56 * (term1 + term2 + term3) / denom;
      break;
    case GammaForm::kSplitFraction:
      out.gamma = 0.56 * (term1 + term2) / denom + 0.56 * term3 / denom;
      break;
  }
  out.clt_valid = out.gamma < 0.5;
  return out;
}

GdpApproximation gdp_from_functionals(const CurveFunctionals& f, int dim) {
  if (dim < 1) throw ConfigError("dimension >= 1 required");
  const double d = static_cast<double>(dim);
  const double var = d * f.kappa2 - d * f.kl * f.kl;
  if (!(var > 0)) throw DegenerateCurve("zero log-slope variance");
  GdpApproximation out;
  out.mu = 2.0 * d * f.kl / std::sqrt(var);
  out.gamma = 0.56 * d * f.kappa3_bar / std::pow(var, 1.5);
  out.clt_valid = out.gamma < 0.5;
  return out;
}

double gdp_compose(std::span<const double> mus) {
  // Neumaier summation keeps the composition exact for long schedules.
  double sum = 0.0, comp = 0.0;
  for (double mu : mus) {
    if (!(mu >= 0.0)) throw ConfigError("gdp_compose: mu >= 0 required");
    const double sq = mu * mu;
    const double t = sum + sq;
    comp += (std::abs(sum) >= std::abs(sq)) ? (sum - t) + sq : (sq - t) + sum;
    sum = t;
  }
  return std::sqrt(sum + comp);
}

CompressorParams solve_params(double target_mu, double ratio, double clip,
                              int batch, int dim) {
  if (!(target_mu > 0)) throw ConfigError("solve: target mu > 0");
  if (!(ratio > 0 && ratio <= 0.5)) throw ConfigError("solve: ratio in (0, 1/2]");
  if (!(clip > 0)) throw ConfigError("solve: c > 0");
  if (batch < 1) throw ConfigError("solve: b >= 1");
  if (dim < 1) throw ConfigError("solve: d >= 1");
  const double b = static_cast<double>(batch);
  const double d = static_cast<double>(dim);
  // Positive root of ratio b^2 B^2 + c b (1 - b) B - c^2 (1 + 4d/mu^2) = 0.
  const double qa = ratio * b * b;
  const double qb = clip * b * (1.0 - b);
  const double qc = -clip * clip * (1.0 + 4.0 * d / (target_mu * target_mu));
  const double scale = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  CompressorParams p{ratio * scale, scale, clip, batch};
  if (!(p.magnitude > clip)) {
    throw Infeasible("target mu too large for ratio A/B = " +
                     std::to_string(ratio) + ": solved A <= c");
  }
  validate_params(p, ValidationMode::kPrivacy);
  return p;
}

}  // namespace ternarylab

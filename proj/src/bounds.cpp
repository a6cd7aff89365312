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

#include "ternarylab/bounds.hpp"

#include <cmath>

#include "ternarylab/errors.hpp"
#include "ternarylab/vote_oracle.hpp"

namespace ternarylab {
namespace {

void check_common(const BoundInputs& in) {
  if (!(in.smoothness >= 0)) throw ConfigError("bounds: L >= 0");
  if (!(in.initial_gap >= 0)) throw ConfigError("bounds: F0 - F* >= 0");
  if (in.dim < 1) throw ConfigError("bounds: d >= 1");
  if (in.honest < 1) throw ConfigError("bounds: M >= 1");
  if (in.byzantine < 0) throw ConfigError("bounds: K >= 0");
  if (in.rounds < 1) throw ConfigError("bounds: T >= 1");
  for (double s : in.sigma) {
    if (!(s >= 0)) throw ConfigError("bounds: sigma >= 0");
  }
}

// The vote-flip ceiling term 2 B d / sqrt(N+1) * (1 - 1/(N+1))^{N/2} shared
// by the vote-style bounds, with N the participating worker count.
double vote_floor_term(double scale, int dim, int n) {
  return 2.0 * scale * dim / std::sqrt(n + 1.0) *
         std::pow(1.0 - 1.0 / (n + 1.0), n / 2.0);
}

}  // namespace

double BoundInputs::sigma_l1() const {
  double sum = 0.0;
  for (double s : sigma) sum += std::abs(s);
  return sum;
}

double BoundInputs::sigma_l2sq() const {
  double sum = 0.0;
  for (double s : sigma) sum += s * s;
  return sum;
}

double bound_ternary_mean(const BoundInputs& in) {
  check_common(in);
  if (!(in.eta > 0)) throw ConfigError("bounds: eta > 0");
  const double scale = in.params.scale;
  const double denom = in.eta / scale - in.smoothness * in.eta * in.eta /
                                            (2.0 * scale * scale);
  if (!(denom > 0)) {
    throw DegenerateStep("mean bound needs eta < 2B/L");
  }
  const double variance_coeff =
      in.smoothness * in.eta * in.eta / (2.0 * scale * scale * denom);
  const double noise = in.params.magnitude * scale * in.dim / in.honest +
                       in.sigma_l2sq() / in.honest;
  return in.initial_gap / (static_cast<double>(in.rounds) * denom) +
         variance_coeff * noise;
}

double bound_ternary_vote(const BoundInputs& in) {
  check_common(in);
  const double root_ld = std::sqrt(in.smoothness * in.dim);
  const double root_t = std::sqrt(static_cast<double>(in.rounds));
  return in.initial_gap * root_ld / root_t + root_ld / (2.0 * root_t) +
         4.0 * in.sigma_l1() / std::sqrt(static_cast<double>(in.honest)) +
         vote_floor_term(in.params.scale, in.dim, in.honest);
}

double bound_byzantine(const BoundInputs& in) {
  check_common(in);
  const double root_ld = std::sqrt(in.smoothness * in.dim);
  const double root_t = std::sqrt(static_cast<double>(in.rounds));
  const double n = in.honest + in.byzantine;
  return in.initial_gap * root_ld / root_t + root_ld / (2.0 * root_t) +
         4.0 * std::sqrt(static_cast<double>(in.honest)) * in.sigma_l1() / n +
         4.0 * in.byzantine * (in.coord_bound + in.params.magnitude) *
             in.dim / n +
         vote_floor_term(in.params.scale, in.dim, in.honest + in.byzantine);
}

HighPrivacyBound bound_vote_highprivacy(const BoundInputs& in) {
  check_common(in);
  validate_params(in.params, ValidationMode::kVoteBound);
  const double gain = vote_gain(in.params, in.honest);
  const double root_ld = std::sqrt(in.smoothness * in.dim);
  const double root_t = std::sqrt(static_cast<double>(in.rounds));

  HighPrivacyBound out;
  out.leading =
      (in.initial_gap * root_ld / root_t + root_ld / (2.0 * root_t)) / gain;

  // Unit-constant envelope of the series sum_{n>=2} (1-A/B)^{M-n} C(M,n)
  // A^{n-2} / B^n * Q d, an order-of-magnitude estimate only.
  const double a = in.params.magnitude, s = in.params.scale;
  double series = 0.0;
  for (int n = 2; n <= in.honest; ++n) {
    double binom = 1.0;
    for (int i = 1; i <= n; ++i) {
      binom *= static_cast<double>(in.honest - n + i) / i;
    }
    series += std::pow(1.0 - a / s, in.honest - n) * binom *
              std::pow(a, n - 2) / std::pow(s, n);
  }
  out.residual_heuristic = series * in.coord_bound * in.dim / gain;
  return out;
}

}  // namespace ternarylab

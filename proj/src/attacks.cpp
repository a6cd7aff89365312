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

#include "ternarylab/attacks.hpp"

#include <cmath>

#include "ternarylab/errors.hpp"
#include "ternarylab/normal.hpp"

namespace ternarylab {

Gradient attack_blind(const Gradient& true_grad) {
  Gradient out(true_grad.size());
  for (std::size_t i = 0; i < true_grad.size(); ++i) out[i] = -true_grad[i];
  return out;
}

Gradient attack_flip_sign(const Gradient& own_grad) {
  Gradient out(own_grad.size());
  for (std::size_t i = 0; i < own_grad.size(); ++i) out[i] = -own_grad[i];
  return out;
}

Gradient attack_foe(const Gradient& honest_mean, double scale) {
  if (!(scale >= 0)) throw ConfigError("fall-of-empire: scale >= 0");
  Gradient out(honest_mean.size());
  for (std::size_t i = 0; i < honest_mean.size(); ++i) {
    out[i] = -scale * honest_mean[i];
  }
  return out;
}

Gradient attack_lie(const std::vector<Gradient>& honest_grads, int total,
                    int byzantine) {
  if (honest_grads.size() < 2) {
    throw TooFewWorkers("little-is-enough needs >= 2 honest gradients");
  }
  if (byzantine < 1 || byzantine >= total) {
    throw ConfigError("little-is-enough: n > f >= 1 required");
  }
  const std::size_t d = honest_grads.front().size();
  for (const auto& g : honest_grads) {
    if (g.size() != d) throw DimensionMismatch(d, g.size());
  }
  const int supporters = total / 2 + 1 - byzantine;
  const double z = normal_quantile(
      static_cast<double>(total - byzantine - supporters) /
      static_cast<double>(total - byzantine));

  const double inv_n = 1.0 / static_cast<double>(honest_grads.size());
  Gradient out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double mean = 0.0;
    for (const auto& g : honest_grads) mean += g[i];
    mean *= inv_n;
    double var = 0.0;  // population convention
    for (const auto& g : honest_grads) {
      const double diff = g[i] - mean;
      var += diff * diff;
    }
    var *= inv_n;
    out[i] = mean - z * std::sqrt(var);
  }
  return out;
}

}  // namespace ternarylab

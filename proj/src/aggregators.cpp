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

#include "ternarylab/aggregators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ternarylab/errors.hpp"

namespace ternarylab {
namespace {

std::size_t common_dim_ternary(const std::vector<TernaryVector>& msgs) {
  if (msgs.empty()) throw TooFewWorkers("no messages to aggregate");
  const std::size_t d = msgs.front().dim();
  for (const auto& m : msgs) {
    if (m.dim() != d) throw DimensionMismatch(d, m.dim());
  }
  return d;
}

std::size_t common_dim_real(const std::vector<Gradient>& msgs) {
  if (msgs.empty()) throw TooFewWorkers("no messages to aggregate");
  const std::size_t d = msgs.front().size();
  for (const auto& m : msgs) {
    if (m.size() != d) throw DimensionMismatch(d, m.size());
  }
  return d;
}

}  // namespace

Gradient aggregate_mean(const std::vector<TernaryVector>& msgs) {
  const std::size_t d = common_dim_ternary(msgs);
  Gradient out(d, 0.0);
  for (const auto& m : msgs) {
    for (std::size_t i = 0; i < d; ++i) out[i] += m.values[i];
  }
  const double inv = 1.0 / static_cast<double>(msgs.size());
  for (double& v : out) v *= inv;
  return out;
}

TernaryVector aggregate_vote(const std::vector<TernaryVector>& msgs) {
  const std::size_t d = common_dim_ternary(msgs);
  std::vector<int> sums(d, 0);
  for (const auto& m : msgs) {
    for (std::size_t i = 0; i < d; ++i) sums[i] += m.values[i];
  }
  TernaryVector out;
  out.values.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.values[i] = sums[i] > 0 ? 1 : (sums[i] < 0 ? -1 : 0);
  }
  return out;
}

Gradient aggregate_plain_mean(const std::vector<Gradient>& msgs) {
  const std::size_t d = common_dim_real(msgs);
  Gradient out(d, 0.0);
  for (const auto& m : msgs) {
    for (std::size_t i = 0; i < d; ++i) out[i] += m[i];
  }
  const double inv = 1.0 / static_cast<double>(msgs.size());
  for (double& v : out) v *= inv;
  return out;
}

Gradient aggregate_multikrum(const std::vector<Gradient>& msgs,
                             int assumed_byzantine, int select) {
  const std::size_t d = common_dim_real(msgs);
  const int n = static_cast<int>(msgs.size());
  if (assumed_byzantine < 0) throw ConfigError("multikrum: f >= 0");
  const int neighbors = n - assumed_byzantine - 2;
  if (neighbors < 1) {
    throw TooFewWorkers("multikrum needs n >= f + 3 (n = " +
                        std::to_string(n) + ", f = " +
                        std::to_string(assumed_byzantine) + ")");
  }
  if (select < 1 || select > n) throw ConfigError("multikrum: 1 <= m <= n");

  std::vector<double> scores(n, 0.0);
  std::vector<double> dists(n - 1);
  for (int i = 0; i < n; ++i) {
    dists.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = msgs[i][k] - msgs[j][k];
        sq += diff * diff;
      }
      dists.push_back(sq);
    }
    std::nth_element(dists.begin(), dists.begin() + (neighbors - 1),
                     dists.end());
    scores[i] = std::accumulate(dists.begin(), dists.begin() + neighbors, 0.0);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] < scores[b]; });

  Gradient out(d, 0.0);
  for (int r = 0; r < select; ++r) {
    const auto& m = msgs[order[r]];
    for (std::size_t k = 0; k < d; ++k) out[k] += m[k];
  }
  for (double& v : out) v /= select;
  return out;
}

Gradient aggregate_centered_clipping(const std::vector<Gradient>& msgs,
                                     const Gradient& prev, double radius,
                                     int iters) {
  const std::size_t d = common_dim_real(msgs);
  if (prev.size() != d) throw DimensionMismatch(d, prev.size());
  if (!(radius > 0)) throw ConfigError("centered clipping: radius > 0");
  if (iters < 1) throw ConfigError("centered clipping: iters >= 1");

  Gradient v = prev;
  Gradient delta(d);
  for (int it = 0; it < iters; ++it) {
    std::fill(delta.begin(), delta.end(), 0.0);
    for (const auto& m : msgs) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = m[k] - v[k];
        sq += diff * diff;
      }
      const double norm = std::sqrt(sq);
      const double factor = norm > radius ? radius / norm : 1.0;
      for (std::size_t k = 0; k < d; ++k) delta[k] += (m[k] - v[k]) * factor;
    }
    const double inv = 1.0 / static_cast<double>(msgs.size());
    for (std::size_t k = 0; k < d; ++k) v[k] += delta[k] * inv;
  }
  return v;
}

}  // namespace ternarylab

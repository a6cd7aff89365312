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

#include "ternarylab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ternarylab/errors.hpp"

namespace ternarylab {
namespace {

// Marsaglia-Tsang gamma sampling; the alpha < 1 case is boosted through
// alpha + 1.
double gamma_draw(double alpha, RngStream& rng) {
  if (alpha < 1.0) {
    const double u = rng.next_unit();
    return gamma_draw(alpha + 1.0, rng) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = rng.next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

}  // namespace

std::vector<double> dirichlet_draw(int count, double alpha, RngStream& rng) {
  if (count < 1) throw ConfigError("dirichlet: count >= 1");
  if (!(alpha > 0)) throw ConfigError("dirichlet: alpha > 0");
  std::vector<double> weights(count);
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    weights[i] = gamma_draw(alpha, rng);
    total += weights[i];
  }
  if (total <= 0.0) {
    // All draws underflowed (tiny alpha); fall back to a single winner.
    weights.assign(count, 0.0);
    weights[rng.next_below(count)] = 1.0;
    return weights;
  }
  for (double& w : weights) w /= total;
  return weights;
}

std::vector<std::vector<std::size_t>> dirichlet_partition(
    std::span<const int> labels, int workers, double alpha, RngStream& rng) {
  if (workers < 1) throw ConfigError("partition: workers >= 1");
  if (!(alpha > 0)) throw ConfigError("partition: alpha > 0");
  if (labels.empty()) throw ConfigError("partition: no examples");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(i);
  }

  std::vector<std::vector<std::size_t>> shards(workers);
  for (auto& [label, indices] : by_class) {
    const auto weights = dirichlet_draw(workers, alpha, rng);
    const std::size_t n = indices.size();
    // Largest-remainder rounding of the proportional targets.
    std::vector<std::size_t> counts(workers);
    std::vector<std::pair<double, int>> remainders(workers);
    std::size_t assigned = 0;
    for (int m = 0; m < workers; ++m) {
      const double share = weights[m] * static_cast<double>(n);
      counts[m] = static_cast<std::size_t>(std::floor(share));
      assigned += counts[m];
      remainders[m] = {share - std::floor(share), m};
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& x, const auto& y) {
                       return x.first > y.first;
                     });
    for (std::size_t r = 0; r < n - assigned; ++r) {
      ++counts[remainders[r % workers].second];
    }
    std::size_t cursor = 0;
    for (int m = 0; m < workers; ++m) {
      for (std::size_t j = 0; j < counts[m]; ++j) {
        shards[m].push_back(indices[cursor++]);
      }
    }
  }

  // Donate one random example to each empty shard from a shard that can
  // spare one.
  for (int m = 0; m < workers; ++m) {
    if (!shards[m].empty()) continue;
    std::vector<int> donors;
    for (int j = 0; j < workers; ++j) {
      if (shards[j].size() > 1) donors.push_back(j);
    }
    if (donors.empty()) continue;  // fewer examples than workers
    const int donor =
        donors[rng.next_below(static_cast<std::uint64_t>(donors.size()))];
    const std::size_t pick =
        rng.next_below(static_cast<std::uint64_t>(shards[donor].size()));
    shards[m].push_back(shards[donor][pick]);
    shards[donor].erase(shards[donor].begin() + static_cast<long>(pick));
  }
  return shards;
}

}  // namespace ternarylab

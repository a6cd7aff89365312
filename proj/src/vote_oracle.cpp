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

#include "ternarylab/vote_oracle.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "ternarylab/errors.hpp"

namespace ternarylab {
namespace {

// Exact binomial coefficients in 128-bit integers. The gate at 60 workers
// keeps every product taken below well inside the 128-bit range.
__int128 binom128(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace

VoteDistribution vote_distribution_exact(std::span<const double> inputs,
                                         const CompressorParams& p) {
  const int workers = static_cast<int>(inputs.size());
  if (workers < 1) throw TooFewWorkers("vote distribution needs >= 1 input");
  if (workers > 25) throw ConfigError("vote distribution: M <= 25");
  if (!(p.magnitude > 0)) throw ParamViolation("A > 0");
  if (!(p.magnitude <= p.scale)) throw ParamViolation("A <= B");
  const double a = p.magnitude, s = p.scale;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (std::abs(inputs[i]) > a) throw OutOfRange(i, std::abs(inputs[i]), a);
  }

  // Convolution over the integer sum of the per-worker three-point laws.
  // dist[m + offset] = P(sum = m), offset grows with each worker.
  std::vector<double> dist{1.0};
  int offset = 0;
  for (double u : inputs) {
    const double p_plus = (a + u) / (2 * s);
    const double p_minus = (a - u) / (2 * s);
    const double p_zero = 1.0 - a / s;
    std::vector<double> next(dist.size() + 2, 0.0);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      next[i] += dist[i] * p_minus;
      next[i + 1] += dist[i] * p_zero;
      next[i + 2] += dist[i] * p_plus;
    }
    dist.swap(next);
    ++offset;
  }

  VoteDistribution out;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const int sum = static_cast<int>(i) - offset;
    if (sum > 0) {
      out.plus += dist[i];
    } else if (sum < 0) {
      out.minus += dist[i];
    } else {
      out.zero += dist[i];
    }
  }
  return out;
}

double vote_error_bound(std::span<const double> inputs,
                        const CompressorParams& p) {
  validate_params(p, ValidationMode::kVoteBound);
  const int workers = static_cast<int>(inputs.size());
  if (workers < 1) throw TooFewWorkers("vote bound needs >= 1 input");
  double mean = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (std::abs(inputs[i]) > p.magnitude) {
      throw OutOfRange(i, std::abs(inputs[i]), p.magnitude);
    }
    mean += inputs[i];
  }
  mean /= workers;
  if (mean == 0.0) throw ConfigError("vote bound: mean input must be nonzero");
  const double ratio = mean / p.scale;
  return std::pow(1.0 - ratio * ratio, workers / 2.0);
}

double vote_gain(const CompressorParams& p, int workers) {
  if (workers < 1) throw ConfigError("vote gain: M >= 1");
  if (workers > 60) {
    throw Overflow("vote gain: exact binomials limited to M <= 60");
  }
  if (!(p.magnitude > 0)) throw ParamViolation("A > 0");
  if (!(p.magnitude <= p.scale)) throw ParamViolation("A <= B");
  const double a = p.magnitude, s = p.scale;
  const double sparsity = 1.0 - a / s;
  double total = 0.0;
  for (int n = 1; n <= workers; ++n) {
    const __int128 combinatorial = binom128(n - 1, (n - 1) / 2) * workers *
                                   binom128(workers - 1, n - 1);
    // Promote the exact integer to double only at the end of the term.
    const double term = std::pow(sparsity, workers - n) *
                        static_cast<double>(combinatorial) *
                        std::pow(a, n - 1) /
                        (std::pow(2.0, n - 1) * std::pow(s, n));
    total += term;
  }
  return total;
}

double poisson_binomial_tail(std::span<const double> ps, int k) {
  if (ps.size() > 10000) throw ConfigError("poisson binomial: M <= 10^4");
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("poisson binomial: probabilities in [0, 1]");
    }
  }
  const int m = static_cast<int>(ps.size());
  if (k <= 0) return 1.0;
  if (k > m) return 0.0;
  // dist[j] = P(S = j) for j < k; dist[k] absorbs P(S >= k).
  std::vector<double> dist(k + 1, 0.0);
  dist[0] = 1.0;
  for (double p : ps) {
    for (int j = k; j >= 1; --j) {
      dist[j] = dist[j] * (j == k ? 1.0 : (1.0 - p)) + dist[j - 1] * p;
    }
    dist[0] *= (1.0 - p);
  }
  return dist[k];
}

}  // namespace ternarylab

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

#include "ternarylab/objective.hpp"

#include <cmath>
#include <limits>

#include "ternarylab/errors.hpp"
#include "ternarylab/rng.hpp"

namespace ternarylab {

QuadraticObjective::QuadraticObjective(
    std::vector<std::vector<Gradient>> shards, int honest_count)
    : shards_(std::move(shards)) {
  if (shards_.empty()) throw ConfigError("quadratic: need >= 1 shard");
  honest_ = honest_count < 0 ? static_cast<int>(shards_.size()) : honest_count;
  if (honest_ < 1 || honest_ > static_cast<int>(shards_.size())) {
    throw ConfigError("quadratic: honest count in [1, shards]");
  }
  for (const auto& shard : shards_) {
    if (shard.empty()) throw ConfigError("quadratic: empty shard");
    for (const auto& s : shard) {
      if (dim_ == 0) dim_ = static_cast<int>(s.size());
      if (static_cast<int>(s.size()) != dim_) {
        throw DimensionMismatch(dim_, s.size());
      }
    }
  }
  // The objective is the honest workers' consensus; byzantine shards only
  // feed attack computations.
  target_.assign(dim_, 0.0);
  for (const auto& shard : shards_) {
    Gradient mean(dim_, 0.0);
    for (const auto& s : shard) {
      for (int i = 0; i < dim_; ++i) mean[i] += s[i];
    }
    for (double& v : mean) v /= static_cast<double>(shard.size());
    shard_means_.push_back(std::move(mean));
  }
  for (int m = 0; m < honest_; ++m) {
    double sqnorm = 0.0;
    for (const auto& s : shards_[m]) {
      for (double v : s) sqnorm += v * v;
    }
    mean_sqnorm_ += sqnorm / static_cast<double>(shards_[m].size());
    for (int i = 0; i < dim_; ++i) target_[i] += shard_means_[m][i];
  }
  const double inv_m = 1.0 / static_cast<double>(honest_);
  for (double& v : target_) v *= inv_m;
  mean_sqnorm_ *= inv_m;
}

int QuadraticObjective::shard_size(int worker) const {
  return static_cast<int>(shards_.at(worker).size());
}

Gradient QuadraticObjective::example_gradient(int worker, int example,
                                              const Gradient& w) const {
  const auto& s = shards_.at(worker).at(example);
  Gradient g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = w[i] - s[i];
  return g;
}

double QuadraticObjective::loss(const Gradient& w) const {
  // (1/M) sum_m mean_j 0.5||w - s||^2
  //   = 0.5||w||^2 - <w, target> + 0.5 * mean ||s||^2
  double wsq = 0.0, dot = 0.0;
  for (int i = 0; i < dim_; ++i) {
    wsq += w[i] * w[i];
    dot += w[i] * target_[i];
  }
  return 0.5 * wsq - dot + 0.5 * mean_sqnorm_;
}

Gradient QuadraticObjective::full_gradient(const Gradient& w) const {
  Gradient g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = w[i] - target_[i];
  return g;
}

double QuadraticObjective::optimal_value() const {
  return loss(target_);
}

std::vector<double> QuadraticObjective::coordinate_spread(double clip) const {
  // Per-example gradient coordinate is w - s_i; clipping is 1-Lipschitz, so
  // its spread never exceeds the shard spread of s_i, and clipped values in
  // [-clip, clip] cap the standard deviation at clip.
  std::vector<double> spread(dim_, 0.0);
  for (int m = 0; m < honest_; ++m) {
    const auto& shard = shards_[m];
    const double inv = 1.0 / static_cast<double>(shard.size());
    for (int i = 0; i < dim_; ++i) {
      double mean = 0.0;
      for (const auto& s : shard) mean += s[i];
      mean *= inv;
      double var = 0.0;
      for (const auto& s : shard) {
        const double diff = s[i] - mean;
        var += diff * diff;
      }
      var *= inv;
      spread[i] = std::max(spread[i], std::min(std::sqrt(var), clip));
    }
  }
  return spread;
}

LogisticObjective::LogisticObjective(std::vector<std::vector<Example>> shards,
                                     double l2_reg, int honest_count)
    : shards_(std::move(shards)), l2_reg_(l2_reg) {
  if (shards_.empty()) throw ConfigError("logistic: need >= 1 shard");
  if (!(l2_reg_ >= 0)) throw ConfigError("logistic: l2_reg >= 0");
  honest_ = honest_count < 0 ? static_cast<int>(shards_.size()) : honest_count;
  if (honest_ < 1 || honest_ > static_cast<int>(shards_.size())) {
    throw ConfigError("logistic: honest count in [1, shards]");
  }
  double max_mean_sq = 0.0;
  for (std::size_t m = 0; m < shards_.size(); ++m) {
    const auto& shard = shards_[m];
    if (shard.empty()) throw ConfigError("logistic: empty shard");
    double mean_sq = 0.0;
    for (const auto& ex : shard) {
      if (dim_ == 0) dim_ = static_cast<int>(ex.x.size());
      if (static_cast<int>(ex.x.size()) != dim_) {
        throw DimensionMismatch(dim_, ex.x.size());
      }
      if (ex.y != 0 && ex.y != 1) throw ConfigError("logistic: labels in {0,1}");
      double sq = 0.0;
      for (double v : ex.x) sq += v * v;
      mean_sq += sq;
    }
    if (static_cast<int>(m) < honest_) {
      max_mean_sq = std::max(max_mean_sq, mean_sq / shard.size());
    }
  }
  smoothness_ = l2_reg_ + max_mean_sq / 4.0;
}

int LogisticObjective::shard_size(int worker) const {
  return static_cast<int>(shards_.at(worker).size());
}

namespace {
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}  // namespace

Gradient LogisticObjective::example_gradient(int worker, int example,
                                             const Gradient& w) const {
  const auto& ex = shards_.at(worker).at(example);
  double z = 0.0;
  for (int i = 0; i < dim_; ++i) z += w[i] * ex.x[i];
  const double residual = sigmoid(z) - ex.y;
  Gradient g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = residual * ex.x[i] + l2_reg_ * w[i];
  return g;
}

double LogisticObjective::loss(const Gradient& w) const {
  double total = 0.0;
  for (int m = 0; m < honest_; ++m) {
    const auto& shard = shards_[m];
    double shard_loss = 0.0;
    for (const auto& ex : shard) {
      double z = 0.0;
      for (int i = 0; i < dim_; ++i) z += w[i] * ex.x[i];
      // log(1 + e^z) - y z, computed stably.
      const double softplus = z > 0 ? z + std::log1p(std::exp(-z))
                                    : std::log1p(std::exp(z));
      shard_loss += softplus - ex.y * z;
    }
    total += shard_loss / shard.size();
  }
  double wsq = 0.0;
  for (double v : w) wsq += v * v;
  return total / honest_ + 0.5 * l2_reg_ * wsq;
}

Gradient LogisticObjective::full_gradient(const Gradient& w) const {
  Gradient g(dim_, 0.0);
  for (int m = 0; m < honest_; ++m) {
    const auto& shard = shards_[m];
    Gradient shard_grad(dim_, 0.0);
    for (const auto& ex : shard) {
      double z = 0.0;
      for (int i = 0; i < dim_; ++i) z += w[i] * ex.x[i];
      const double residual = sigmoid(z) - ex.y;
      for (int i = 0; i < dim_; ++i) shard_grad[i] += residual * ex.x[i];
    }
    for (int i = 0; i < dim_; ++i) {
      g[i] += shard_grad[i] / shard.size();
    }
  }
  for (int i = 0; i < dim_; ++i) {
    g[i] = g[i] / honest_ + l2_reg_ * w[i];
  }
  return g;
}

double LogisticObjective::optimal_value() const {
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> LogisticObjective::coordinate_spread(double clip) const {
  // No uniform closed form; clipped values stay in [-clip, clip].
  return std::vector<double>(dim_, clip);
}

std::vector<std::vector<Gradient>> make_heterogeneous_quadratic(
    int dim, int workers, int honest, int per_worker, double base_magnitude,
    double hetero, double within, std::uint64_t data_seed) {
  if (dim < 1 || workers < 1 || per_worker < 1) {
    throw ConfigError("quadratic generator: dim, workers, per_worker >= 1");
  }
  if (honest < 1 || honest > workers) {
    throw ConfigError("quadratic generator: 1 <= honest <= workers");
  }
  Gradient base(dim);
  for (int i = 0; i < dim; ++i) {
    base[i] = (i % 2 == 0) ? base_magnitude : -base_magnitude;
  }

  // Honest offsets come in antithetic pairs (m, m+1), so they sum to zero
  // per coordinate while each stays inside [-hetero, hetero]; with odd M the
  // last honest worker gets no offset. Workers beyond `honest` keep plain
  // draws.
  std::vector<Gradient> offsets(workers, Gradient(dim, 0.0));
  for (int m = 0; m < workers; ++m) {
    if (m < honest - (honest % 2)) {
      RngStream rng(data_seed, 0, static_cast<std::uint64_t>(m / 2),
                    "offsets");
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      for (int i = 0; i < dim; ++i) {
        offsets[m][i] = sign * hetero * (2.0 * rng.next_unit() - 1.0);
      }
    } else if (m >= honest) {
      RngStream rng(data_seed, 2, static_cast<std::uint64_t>(m), "offsets");
      for (int i = 0; i < dim; ++i) {
        offsets[m][i] = hetero * (2.0 * rng.next_unit() - 1.0);
      }
    }
  }

  std::vector<std::vector<Gradient>> shards(workers);
  for (int m = 0; m < workers; ++m) {
    RngStream rng(data_seed, 1, static_cast<std::uint64_t>(m), "examples");
    shards[m].reserve(per_worker);
    for (int j = 0; j < per_worker; ++j) {
      Gradient point(dim);
      for (int i = 0; i < dim; ++i) {
        point[i] = base[i] + offsets[m][i] + within * rng.next_normal();
      }
      shards[m].push_back(std::move(point));
    }
  }
  return shards;
}

}  // namespace ternarylab

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

#ifndef TERNARYLAB_OBJECTIVE_HPP_
#define TERNARYLAB_OBJECTIVE_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "ternarylab/compressors.hpp"

namespace ternarylab {

// A finite-sum objective F(w) = (1/M) sum_m f_m(w), where f_m averages a
// per-example loss over worker m's local shard. Workers see per-example
// gradients; the trainer sees exact global loss and gradient for metrics.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual int dim() const = 0;
  virtual int num_workers() const = 0;
  virtual int shard_size(int worker) const = 0;

  // Gradient of the per-example loss at `w` for the given shard example.
  virtual Gradient example_gradient(int worker, int example,
                                    const Gradient& w) const = 0;

  virtual double loss(const Gradient& w) const = 0;
  virtual Gradient full_gradient(const Gradient& w) const = 0;

  // Smoothness constant of F.
  virtual double smoothness() const = 0;

  // Minimum of F, when available in closed form; NaN otherwise.
  virtual double optimal_value() const = 0;

  // Largest per-coordinate population standard deviation of the clipped
  // per-example gradients across shards, maximized over w. Used to bound
  // mini-batch gradient noise; coordinates capped at `clip` since clipped
  // values live in [-clip, clip].
  virtual std::vector<double> coordinate_spread(double clip) const = 0;
};

// Mean-squared-distance objective: per-example loss 0.5 * ||w - s||^2 over a
// set of target points per worker. Exact gradient w - mean(shard means);
// smoothness 1.
//
// Shards past `honest_count` belong to byzantine workers: they supply data
// for attack computations but do not enter the objective, its gradient, or
// the minimizer. The default -1 counts every shard as honest.
class QuadraticObjective : public Objective {
 public:
  explicit QuadraticObjective(std::vector<std::vector<Gradient>> shards,
                              int honest_count = -1);

  int dim() const override { return dim_; }
  int num_workers() const override { return static_cast<int>(shards_.size()); }
  int shard_size(int worker) const override;
  Gradient example_gradient(int worker, int example,
                            const Gradient& w) const override;
  double loss(const Gradient& w) const override;
  Gradient full_gradient(const Gradient& w) const override;
  double smoothness() const override { return 1.0; }
  double optimal_value() const override;
  std::vector<double> coordinate_spread(double clip) const override;

  const Gradient& minimizer() const { return target_; }

 private:
  std::vector<std::vector<Gradient>> shards_;
  int dim_ = 0;
  int honest_ = 0;
  Gradient target_;                  // mean of honest shard means
  std::vector<Gradient> shard_means_;
  double mean_sqnorm_ = 0.0;         // (1/M) sum over honest of mean ||s||^2
};

// Binary logistic regression with L2 regularization. Labels in {0, 1}.
class LogisticObjective : public Objective {
 public:
  struct Example {
    Gradient x;
    int y = 0;
  };

  LogisticObjective(std::vector<std::vector<Example>> shards, double l2_reg,
                    int honest_count = -1);

  int dim() const override { return dim_; }
  int num_workers() const override { return static_cast<int>(shards_.size()); }
  int shard_size(int worker) const override;
  Gradient example_gradient(int worker, int example,
                            const Gradient& w) const override;
  double loss(const Gradient& w) const override;
  Gradient full_gradient(const Gradient& w) const override;
  // Trace bound on the Hessian: l2_reg + max_m mean_j ||x_j||^2 / 4.
  double smoothness() const override { return smoothness_; }
  double optimal_value() const override;  // NaN: no closed form
  std::vector<double> coordinate_spread(double clip) const override;

 private:
  std::vector<std::vector<Example>> shards_;
  int dim_ = 0;
  int honest_ = 0;
  double l2_reg_ = 0.0;
  double smoothness_ = 0.0;
};

// Deterministic synthetic quadratic data with controlled heterogeneity.
// Base optima alternate +-base_magnitude per coordinate. Worker m's shard
// is centered at base + offset_m, with offsets drawn uniformly in
// [-hetero, hetero]. Honest offsets come in exact antithetic pairs, so they
// sum to zero per coordinate (the honest optimum stays at the base optima)
// while each single offset remains inside [-hetero, hetero]; with an odd
// honest count the last honest worker is uncentered. Workers beyond
// `honest` model byzantine data and keep independent offsets. Examples
// scatter around their center with standard deviation `within`.
std::vector<std::vector<Gradient>> make_heterogeneous_quadratic(
    int dim, int workers, int honest, int per_worker, double base_magnitude,
    double hetero, double within, std::uint64_t data_seed);

}  // namespace ternarylab

#endif  // TERNARYLAB_OBJECTIVE_HPP_

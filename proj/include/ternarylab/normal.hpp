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

#ifndef TERNARYLAB_NORMAL_HPP_
#define TERNARYLAB_NORMAL_HPP_

namespace ternarylab {

// Standard normal CDF, computed from the complementary error function.
// Absolute error well below 1e-12 over the double range.
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

// Standard normal quantile. A rational initial approximation refined by one
// Newton step on normal_cdf; absolute error below 1e-12 for p in (0, 1).
// Returns -inf at p = 0 and +inf at p = 1.
double normal_quantile(double p);

// The Gaussian type-I/type-II error tradeoff with separation `mu`:
// alpha -> Phi(Phi^{-1}(1 - alpha) - mu). Defined on [0, 1], with
// value 1 at alpha = 0 and 0 at alpha = 1.
class GaussianTradeoff {
 public:
  explicit GaussianTradeoff(double mu);
  double operator()(double alpha) const;
  double mu() const { return mu_; }

 private:
  double mu_;
};

}  // namespace ternarylab

#endif  // TERNARYLAB_NORMAL_HPP_

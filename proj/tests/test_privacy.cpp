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

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ternarylab/compressors.hpp"
#include "ternarylab/errors.hpp"
#include "ternarylab/normal.hpp"
#include "ternarylab/privacy.hpp"
#include "ternarylab/rng.hpp"

using namespace ternarylab;

namespace {

CompressorParams random_privacy_params(RngStream& rng, int max_batch = 8) {
  const double clip = 0.1 + 2.0 * rng.next_unit();
  const double magnitude = clip * (1.01 + 3.0 * rng.next_unit());
  const double scale = (magnitude + clip) * (1.05 + 3.0 * rng.next_unit());
  const int batch = 1 + static_cast<int>(rng.next_below(max_batch));
  return {magnitude, scale, clip, batch};
}

void check_shape(const TradeoffCurve& curve) {
  const auto& pts = curve.breakpoints();
  double prev_slope = -1e300;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double slope = (pts[i].second - pts[i - 1].second) /
                         (pts[i].first - pts[i - 1].first);
    CHECK(slope <= 1e-12);                 // non-increasing
    CHECK(slope >= prev_slope - 1e-12);    // convex
    prev_slope = slope;
  }
}

}  // namespace

TEST_CASE("scalar curve evaluates its three segments") {
  const auto curve = curve_ternary_scalar({2, 4, 1, 1});
  CHECK(curve.value(0.1) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(curve.value(0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(curve.value(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(curve.value(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  check_shape(curve);
}

TEST_CASE("scalar curve requires b = 1 and privacy-valid params") {
  CHECK_THROWS_AS(curve_ternary_scalar({2, 4, 1, 2}), ParamViolation);
  CHECK_THROWS_AS(curve_ternary_scalar({2, 2.5, 1, 1}), ParamViolation);
}

TEST_CASE("mini-batch curve reduces to the scalar curve at b = 1") {
  RngStream rng(21, 0, 0, "params");
  for (int trial = 0; trial < 20; ++trial) {
    CompressorParams p = random_privacy_params(rng, 1);
    p.batch = 1;
    const auto scalar = curve_ternary_scalar(p);
    const auto batch = curve_ternary_minibatch(p);
    for (int i = 0; i <= 100; ++i) {
      const double alpha = i / 100.0;
      CHECK(std::abs(scalar.value(alpha) - batch.value(alpha)) <= 1e-12);
    }
  }
}

TEST_CASE("mini-batch curve outer segment") {
  const auto curve = curve_ternary_minibatch({2, 8, 1, 2});
  // slope magnitude (Ab - (b-2)c) / ((A-c) b) = 2
  CHECK(curve.value(0.05) == doctest::Approx(0.9).epsilon(1e-12));
  check_shape(curve);
}

TEST_CASE("mini-batch curve is continuous at its breakpoints") {
  RngStream rng(22, 0, 0, "params");
  for (int trial = 0; trial < 50; ++trial) {
    const CompressorParams p = random_privacy_params(rng);
    const auto curve = curve_ternary_minibatch(p);
    check_shape(curve);
    const double alpha1 = (p.magnitude - p.clip) / (2 * p.scale);
    // middle-segment formula 1 - c/(Bb) - alpha agrees at the breakpoint
    CHECK(curve.value(alpha1) ==
          doctest::Approx(1.0 - p.clip / (p.scale * p.batch) - alpha1)
              .epsilon(1e-12));
  }
}

namespace {

// Exact tradeoff of two three-point laws by the likelihood-ratio
// construction: order outcomes by decreasing Q/P and walk the rejection
// set, giving breakpoints (cumulative P, 1 - cumulative Q).
std::vector<std::pair<double, double>> exact_three_point_tradeoff(
    const std::array<double, 3>& p, const std::array<double, 3>& q) {
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return q[a] / p[a] > q[b] / p[b]; });
  std::vector<std::pair<double, double>> pts{{0.0, 1.0}};
  double cum_p = 0.0, cum_q = 0.0;
  for (int idx : order) {
    cum_p += p[idx];
    cum_q += q[idx];
    pts.push_back({cum_p, 1.0 - cum_q});
  }
  pts.back() = {1.0, 0.0};
  return pts;
}

double piecewise_value(const std::vector<std::pair<double, double>>& pts,
                       double alpha) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (alpha <= pts[i].first + 1e-15) {
      const double t =
          (alpha - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
      return pts[i - 1].second + t * (pts[i].second - pts[i - 1].second);
    }
  }
  return pts.back().second;
}

std::array<double, 3> ternary_law(double x, double magnitude, double scale) {
  return {(magnitude - x) / (2 * scale), 1.0 - magnitude / scale,
          (magnitude + x) / (2 * scale)};
}

}  // namespace

// The formula curve must equal the symmetrized exact tradeoff of the two
// output laws at the worst-case neighboring inputs, x = c against
// x' = (1 - 2/b)c: the pointwise minimum over both hypothesis orderings.
TEST_CASE("curve formulas match the exact likelihood-ratio construction") {
  RngStream rng(27, 0, 0, "params");
  for (int trial = 0; trial < 100; ++trial) {
    const CompressorParams p = random_privacy_params(rng);
    const auto curve = curve_ternary_minibatch(p);
    const double x0 = p.clip;
    const double x1 = (1.0 - 2.0 / p.batch) * p.clip;
    const auto law0 = ternary_law(x0, p.magnitude, p.scale);
    const auto law1 = ternary_law(x1, p.magnitude, p.scale);
    const auto forward = exact_three_point_tradeoff(law0, law1);
    const auto reverse = exact_three_point_tradeoff(law1, law0);
    for (int i = 0; i <= 50; ++i) {
      const double alpha = i / 50.0;
      const double exact = std::min(piecewise_value(forward, alpha),
                                    piecewise_value(reverse, alpha));
      CHECK(curve.value(alpha) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("breakpoint supremum matches a dense-grid supremum") {
  RngStream rng(28, 0, 0, "params");
  for (int trial = 0; trial < 30; ++trial) {
    const auto curve = curve_ternary_minibatch(random_privacy_params(rng));
    const double eps = 1.5 * rng.next_unit();
    const double exact = curve_to_epsilon_delta(curve, eps);
    double grid = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double alpha = i / 20000.0;
      grid = std::max(grid,
                      1.0 - std::exp(eps) * alpha - curve.value(alpha));
    }
    CHECK(exact >= grid - 1e-9);
    CHECK(exact <= grid + 1e-4);  // grid misses the knee by at most a step
  }
}

TEST_CASE("functionals of the identity curve vanish") {
  const auto identity = TradeoffCurve::from_breakpoints({{0, 1}, {1, 0}});
  const auto f = curve_functionals(identity);
  CHECK(f.kl == 0.0);
  CHECK(f.kappa2 == 0.0);
  CHECK(f.kappa3 == 0.0);
  CHECK(f.kappa3_bar == 0.0);
}

TEST_CASE("functionals match the closed form on the scalar curve") {
  const auto f = curve_functionals(curve_ternary_scalar({2, 4, 1, 1}));
  CHECK(f.kl == doctest::Approx(0.25 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("kappa2 dominates kl^2") {
  RngStream rng(23, 0, 0, "params");
  for (int trial = 0; trial < 100; ++trial) {
    const auto f =
        curve_functionals(curve_ternary_minibatch(random_privacy_params(rng)));
    CHECK(f.kappa2 >= f.kl * f.kl);
  }
}

TEST_CASE("flat segments are rejected") {
  const auto flat =
      TradeoffCurve::from_breakpoints({{0, 1}, {0.5, 0.5}, {1, 0.5}});
  CHECK_THROWS_AS(curve_functionals(flat), DegenerateCurve);
}

TEST_CASE("vector approximation at the reference point") {
  const auto gdp = gdp_approx_vector({2, 4, 1, 1}, 1);
  CHECK(gdp.mu == doctest::Approx(2.0 / std::sqrt(7.0)).epsilon(1e-12));
  // 0.56 * 0.41015625 / 0.4375^{3/2}
  CHECK(gdp.gamma == doctest::Approx(0.7937253933193772).epsilon(1e-12));
  CHECK_FALSE(gdp.clt_valid);
}

TEST_CASE("gamma halves exactly when the dimension quadruples") {
  const auto g1 = gdp_approx_vector({2, 4, 1, 1}, 5);
  const auto g4 = gdp_approx_vector({2, 4, 1, 1}, 20);
  CHECK(g4.gamma / g1.gamma == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("both gamma arrangements agree") {
  RngStream rng(24, 0, 0, "params");
  for (int trial = 0; trial < 200; ++trial) {
    const CompressorParams p = random_privacy_params(rng);
    const int dim = 1 + static_cast<int>(rng.next_below(1000));
    const auto single = gdp_approx_vector(p, dim, GammaForm::kSingleFraction);
    const auto split = gdp_approx_vector(p, dim, GammaForm::kSplitFraction);
    CHECK(single.gamma == doctest::Approx(split.gamma).epsilon(1e-13));
    CHECK(single.mu == split.mu);
  }
}

TEST_CASE("closed-form mu matches the functional route") {
  RngStream rng(25, 0, 0, "params");
  for (int trial = 0; trial < 1000; ++trial) {
    const CompressorParams p = random_privacy_params(rng);
    const int dim = 1 + static_cast<int>(rng.next_below(100000));
    const auto direct = gdp_approx_vector(p, dim);
    const auto generic = gdp_from_functionals(
        curve_functionals(curve_ternary_minibatch(p)), dim);
    CHECK(std::abs(direct.mu - generic.mu) <= 1e-9);
    CHECK(std::abs(direct.gamma - generic.gamma) <= 1e-9);
  }
}

TEST_CASE("mu shrinks as the batch grows") {
  for (int batch = 1; batch < 8; ++batch) {
    const auto smaller = gdp_approx_vector({2, 8, 1, batch}, 10);
    const auto larger = gdp_approx_vector({2, 8, 1, batch + 1}, 10);
    CHECK(larger.mu < smaller.mu);
  }
}

TEST_CASE("composition is the root-sum-of-squares") {
  const std::vector<double> pythagorean{3, 4};
  CHECK(gdp_compose(pythagorean) == doctest::Approx(5.0).epsilon(1e-15));
  const std::vector<double> four_ones{1, 1, 1, 1};
  CHECK(gdp_compose(four_ones) == doctest::Approx(2.0).epsilon(1e-15));

  const double base = 0.37;
  const long long rounds = 1000000;
  const std::vector<double> schedule(
      rounds, base / std::sqrt(static_cast<double>(rounds)));
  CHECK(std::abs(gdp_compose(schedule) - base) <= 1e-9);
}

TEST_CASE("epsilon-delta conversion on the sign-only curve") {
  const auto curve = curve_stochastic_sign(3.0, 1.0);
  const double eps = std::log((3.0 + 1.0) / (3.0 - 1.0));  // log 2
  CHECK(std::abs(curve_to_epsilon_delta(curve, eps)) <= 1e-12);
  CHECK(curve_to_epsilon_delta(curve, 0.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const auto identity = TradeoffCurve::from_breakpoints({{0, 1}, {1, 0}});
  CHECK(curve_to_epsilon_delta(identity, 0.7) == 0.0);
}

TEST_CASE("gaussian tradeoff evaluator") {
  const GaussianTradeoff zero(0.0);
  for (double alpha : {0.0, 0.25, 0.5, 0.99, 1.0}) {
    CHECK(zero(alpha) == doctest::Approx(1.0 - alpha).epsilon(1e-12));
  }
  const GaussianTradeoff one(1.0);
  CHECK(one(0.0) == 1.0);
  CHECK(one(1.0) == 0.0);
  CHECK(one(0.5) == doctest::Approx(0.15865525393145705).epsilon(1e-9));
}

TEST_CASE("normal quantile inverts the cdf tightly") {
  for (double p = 0.0001; p < 1.0; p += 0.0123) {
    CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-12);
  }
  CHECK(std::isinf(normal_quantile(0.0)));
  CHECK(std::isinf(normal_quantile(1.0)));
}

TEST_CASE("solver reference point") {
  const CompressorParams p = solve_params(1.0, 0.5, 1.0, 1, 1);
  CHECK(p.scale == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(p.magnitude == doctest::Approx(0.5 * std::sqrt(10.0)).epsilon(1e-12));
  CHECK(p.magnitude * p.scale - p.clip * p.clip ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("solver round-trips through the mu formula") {
  RngStream rng(26, 0, 0, "solver");
  for (int trial = 0; trial < 1000; ++trial) {
    const double ratio = 0.05 + 0.45 * rng.next_unit();
    const double clip = 0.1 + 2.0 * rng.next_unit();
    const int batch = 1 + static_cast<int>(rng.next_below(16));
    const int dim = 1 + static_cast<int>(rng.next_below(100000));
    // Stay on the feasible side: mu^2 < 4 d r / (b - r) guarantees A > c.
    const double mu_cap =
        std::sqrt(4.0 * dim * ratio / (batch - ratio));
    const double target = mu_cap * (0.05 + 0.9 * rng.next_unit());
    const CompressorParams p = solve_params(target, ratio, clip, batch, dim);
    const auto gdp = gdp_approx_vector(p, dim);
    CHECK(std::abs(gdp.mu - target) <= 1e-9);
  }
}

TEST_CASE("solver rejects unreachable targets") {
  CHECK_THROWS_AS(solve_params(100.0, 0.1, 1.0, 1, 1), Infeasible);
}

// The d-fold coordinate composition, estimated by likelihood-ratio tests on
// Monte Carlo output, must sit inside the Gaussian sandwich widened by five
// standard errors, for alpha in [gamma, 1 - gamma].
namespace {

void check_clt_sandwich(const CompressorParams& p, int dim,
                        std::uint64_t seed) {
  const auto gdp = gdp_approx_vector(p, dim);
  REQUIRE(gdp.clt_valid);
  const GaussianTradeoff g(gdp.mu);

  // Worst-case neighboring inputs: the compressed values are c and
  // (1 - 2/b)c.
  const double x0 = p.clip;
  const double x1 = (1.0 - 2.0 / p.batch) * p.clip;
  const double a = p.magnitude, s = p.scale;
  const int n = 100000;

  // The log-likelihood ratio is monotone in (#plus * w_plus + #minus *
  // w_minus); integer-weighted counts keep the statistic lattice-valued.
  const double w_plus = std::log((a + x1) / (a + x0));
  const double w_minus = std::log((a - x1) / (a - x0));
  const auto sample_stats = [&](double x, std::uint64_t stream) {
    CompressorParams params = p;
    RngStream rng(seed, stream, 0, "clt");
    std::vector<double> stats(n);
    Gradient input(dim, x);
    for (int i = 0; i < n; ++i) {
      const TernaryVector z = ternary_compress(input, params, rng);
      int plus = 0, minus = 0;
      for (auto v : z.values) {
        plus += v == 1;
        minus += v == -1;
      }
      stats[i] = plus * w_plus + minus * w_minus;
    }
    std::sort(stats.begin(), stats.end(), std::greater<double>());
    return stats;
  };
  const std::vector<double> stat_null = sample_stats(x0, 1);
  const std::vector<double> stat_alt = sample_stats(x1, 2);

  // Empirical randomized Neyman-Pearson test at level alpha: reject when the
  // statistic exceeds a threshold, with randomization on the boundary atom.
  const auto empirical_beta = [&](double alpha) {
    const std::size_t target =
        static_cast<std::size_t>(alpha * static_cast<double>(n));
    const double threshold = stat_null[std::min<std::size_t>(target, n - 1)];
    const auto count = [&](const std::vector<double>& stats) {
      std::size_t above = 0, at = 0;
      for (double v : stats) {
        above += v > threshold;
        at += v == threshold;
      }
      return std::pair{above, at};
    };
    const auto [null_above, null_at] = count(stat_null);
    const auto [alt_above, alt_at] = count(stat_alt);
    const double theta =
        null_at == 0 ? 0.0
                     : (alpha - static_cast<double>(null_above) / n) /
                           (static_cast<double>(null_at) / n);
    return 1.0 - (static_cast<double>(alt_above) / n +
                  std::clamp(theta, 0.0, 1.0) *
                      static_cast<double>(alt_at) / n);
  };

  for (int i = 0; i < 10; ++i) {
    const double span = 1.0 - 2.0 * gdp.gamma - 0.04;
    const double alpha = gdp.gamma + 0.02 + span * i / 9.0;
    const double beta = empirical_beta(alpha);
    const double lo = g(alpha + gdp.gamma) - gdp.gamma;
    const double hi = g(alpha - gdp.gamma) + gdp.gamma;
    const double slack =
        5.0 * (std::sqrt(alpha * (1 - alpha) / n) +
               std::sqrt(std::max(beta * (1 - beta), 1e-12) / n));
    CHECK(beta >= lo - slack);
    CHECK(beta <= hi + slack);
  }
}

}  // namespace

TEST_CASE("clt sandwich holds empirically for single-example updates") {
  check_clt_sandwich({2.0, 8.0, 0.5, 1}, 32, 2024);
}

TEST_CASE("clt sandwich holds empirically for mini-batch updates") {
  check_clt_sandwich({2.0, 10.0, 1.0, 2}, 32, 2025);
}

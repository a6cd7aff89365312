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

#include <cmath>
#include <vector>

#include "ternarylab/bounds.hpp"
#include "ternarylab/errors.hpp"
#include "ternarylab/rng.hpp"
#include "ternarylab/vote_oracle.hpp"

using namespace ternarylab;

namespace {

// Independent second implementation: brute-force enumeration of all 3^M
// outcome combinations. Only usable for small M; cross-validates the
// convolution.
VoteDistribution vote_distribution_bruteforce(const std::vector<double>& u,
                                              double magnitude, double scale) {
  const int m = static_cast<int>(u.size());
  long total_combos = 1;
  for (int i = 0; i < m; ++i) total_combos *= 3;
  VoteDistribution out;
  for (long combo = 0; combo < total_combos; ++combo) {
    long rest = combo;
    double prob = 1.0;
    int sum = 0;
    for (int i = 0; i < m; ++i) {
      const int symbol = static_cast<int>(rest % 3) - 1;  // -1, 0, +1
      rest /= 3;
      if (symbol == 1) {
        prob *= (magnitude + u[i]) / (2 * scale);
      } else if (symbol == -1) {
        prob *= (magnitude - u[i]) / (2 * scale);
      } else {
        prob *= 1.0 - magnitude / scale;
      }
      sum += symbol;
    }
    if (sum > 0) {
      out.plus += prob;
    } else if (sum < 0) {
      out.minus += prob;
    } else {
      out.zero += prob;
    }
  }
  return out;
}

double half_tie_error(const VoteDistribution& dist, double mean_sign) {
  return (mean_sign > 0 ? dist.minus : dist.plus) + 0.5 * dist.zero;
}

}  // namespace

TEST_CASE("exact vote distribution at the reference point") {
  const VoteDistribution d =
      vote_distribution_exact(std::vector<double>{1, 1}, {2, 4, 2, 1});
  CHECK(d.plus == doctest::Approx(33.0 / 64).epsilon(1e-12));
  CHECK(d.zero == doctest::Approx(22.0 / 64).epsilon(1e-12));
  CHECK(d.minus == doctest::Approx(9.0 / 64).epsilon(1e-12));
}

TEST_CASE("vote distribution symmetry and boundary") {
  const VoteDistribution sym =
      vote_distribution_exact(std::vector<double>{0, 0, 0}, {2, 4, 2, 1});
  CHECK(sym.plus == doctest::Approx(sym.minus).epsilon(1e-14));

  const VoteDistribution edge =
      vote_distribution_exact(std::vector<double>{2}, {2, 4, 2, 1});
  CHECK(edge.plus == doctest::Approx(0.5).epsilon(1e-14));  // A/B
  CHECK(edge.minus == 0.0);
}

TEST_CASE("convolution matches full 3^M enumeration up to M = 6") {
  RngStream rng(51, 0, 0, "oracle");
  for (int m = 1; m <= 6; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> u(m);
      for (double& v : u) v = 2.0 * (2.0 * rng.next_unit() - 1.0);
      const CompressorParams p{2.0, 4.0 + 2.0 * rng.next_unit(), 2.0, 1};
      const VoteDistribution fast = vote_distribution_exact(u, p);
      const VoteDistribution brute =
          vote_distribution_bruteforce(u, p.magnitude, p.scale);
      CHECK(fast.plus == doctest::Approx(brute.plus).epsilon(1e-12));
      CHECK(fast.zero == doctest::Approx(brute.zero).epsilon(1e-12));
      CHECK(fast.minus == doctest::Approx(brute.minus).epsilon(1e-12));
      CHECK(fast.plus + fast.zero + fast.minus ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("wrong-vote bound reference points") {
  const CompressorParams p{2, 4, 2, 1};
  const std::vector<double> single{2.0};
  CHECK(vote_error_bound(single, p) ==
        doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
  const double exact_single =
      half_tie_error(vote_distribution_exact(single, p), 1.0);
  CHECK(exact_single == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(exact_single <= vote_error_bound(single, p));

  const std::vector<double> pair{1.0, 1.0};
  CHECK(vote_error_bound(pair, p) == doctest::Approx(0.9375).epsilon(1e-12));
  const double exact_pair =
      half_tie_error(vote_distribution_exact(pair, p), 1.0);
  CHECK(exact_pair == doctest::Approx(0.3125).epsilon(1e-12));
  CHECK(exact_pair <= vote_error_bound(pair, p));
}

TEST_CASE("wrong-vote bound preconditions") {
  CHECK_THROWS_AS(
      vote_error_bound(std::vector<double>{1.0}, {2, 3, 1, 1}),
      ParamViolation);
  CHECK_THROWS_AS(
      vote_error_bound(std::vector<double>{1.0, -1.0}, {2, 4, 2, 1}),
      ConfigError);
}

TEST_CASE("vote gain closed forms") {
  CHECK(vote_gain({2, 4, 2, 1}, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(vote_gain({2, 4, 2, 1}, 2) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(vote_gain({5, 10, 5, 1}, 1) == doctest::Approx(0.1).epsilon(1e-14));
  // Largest supported worker count exercises the widest exact binomials.
  const double at_limit = vote_gain({2, 4, 2, 1}, 60);
  CHECK(std::isfinite(at_limit));
  CHECK(at_limit > 0.0);
  CHECK_THROWS_AS(vote_gain({2, 4, 2, 1}, 61), Overflow);
}

TEST_CASE("vote gain is exactly the sign bias coefficient for two workers") {
  RngStream rng(52, 0, 0, "oracle");
  const CompressorParams p{2, 4, 2, 1};
  const double gain = vote_gain(p, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> u{2.0 * (2.0 * rng.next_unit() - 1.0),
                                2.0 * (2.0 * rng.next_unit() - 1.0)};
    const VoteDistribution d = vote_distribution_exact(u, p);
    const double mean = 0.5 * (u[0] + u[1]);
    CHECK(std::abs((d.plus - d.minus) - gain * mean) <= 1e-12);
  }
}

TEST_CASE("sign-bias residual shrinks when the scale doubles") {
  RngStream rng(53, 0, 0, "oracle");
  for (int workers = 3; workers <= 5; ++workers) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> u(workers);
      for (double& v : u) v = 2.0 * rng.next_unit() - 1.0;
      double mean = 0.0;
      for (double v : u) mean += v;
      mean /= workers;
      const auto residual = [&](double magnitude, double scale) {
        const CompressorParams p{magnitude, scale, magnitude, 1};
        const VoteDistribution d = vote_distribution_exact(u, p);
        return std::abs((d.plus - d.minus) - vote_gain(p, workers) * mean);
      };
      const double at_base = residual(2.0, 4.0);
      const double at_double = residual(4.0, 8.0);
      if (at_double > 1e-15) {
        CHECK(at_base / at_double >= 1.6);
      }
    }
  }
}

TEST_CASE("poisson binomial tail") {
  CHECK(poisson_binomial_tail(std::vector<double>{0.5, 0.5}, 2) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(poisson_binomial_tail(std::vector<double>{1, 1, 0}, 2) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(poisson_binomial_tail(std::vector<double>{0.3}, 0) == 1.0);
  CHECK(poisson_binomial_tail(std::vector<double>{0.3}, 2) == 0.0);
}

TEST_CASE("poisson binomial tail stays below one half beyond the mean") {
  RngStream rng(54, 0, 0, "oracle");
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 1 + static_cast<int>(rng.next_below(12));
    std::vector<double> ps(m);
    double mean = 0.0;
    for (double& p : ps) {
      p = rng.next_unit();
      mean += p;
    }
    const int k_min = static_cast<int>(std::ceil(1.0 + mean));
    for (int k = k_min; k <= m; ++k) {
      CHECK(poisson_binomial_tail(ps, k) < 0.5);
    }
  }
}

TEST_CASE("mean-aggregation bound") {
  BoundInputs in;
  in.smoothness = 1.0;
  in.sigma.assign(4, 0.5);
  in.initial_gap = 3.0;
  in.params = {2, 4, 1, 1};
  in.dim = 4;
  in.honest = 8;
  in.rounds = 100;
  in.eta = 0.5;
  const double base = bound_ternary_mean(in);
  CHECK(base > 0.0);

  // T -> infinity leaves only the variance term.
  BoundInputs tail = in;
  tail.rounds = 4000000000LL;
  const double denom = in.eta / 4.0 - 1.0 * 0.25 / (2.0 * 16.0);
  const double variance_term = (1.0 * 0.25 / (2.0 * 16.0 * denom)) *
                               (2.0 * 4.0 * 4.0 / 8.0 + 4 * 0.25 / 8.0);
  CHECK(bound_ternary_mean(tail) ==
        doctest::Approx(variance_term).epsilon(1e-6));

  // eta = B/L keeps the denominator at eta/(2B).
  BoundInputs critical = in;
  critical.eta = 4.0;
  CHECK(std::isfinite(bound_ternary_mean(critical)));
  critical.eta = 8.1;  // beyond 2B/L
  CHECK_THROWS_AS(bound_ternary_mean(critical), DegenerateStep);

  // Doubling M halves the variance term.
  BoundInputs both = tail;
  both.honest = 16;
  CHECK(bound_ternary_mean(both) ==
        doctest::Approx(variance_term / 2.0).epsilon(1e-6));
}

TEST_CASE("vote bound reference values") {
  BoundInputs in;
  in.smoothness = 1.0;
  in.sigma.assign(3, 0.0);
  in.initial_gap = 1.0;
  in.params = {1, 2, 1, 1};
  in.dim = 3;
  in.honest = 1;
  in.rounds = 1;
  // At M = 1 the vote-floor term is exactly B d.
  CHECK(bound_ternary_vote(in) ==
        doctest::Approx(std::sqrt(3.0) + std::sqrt(3.0) / 2.0 + 2.0 * 3.0)
            .epsilon(1e-12));

  // Strictly decreasing in M elsewhere on a grid.
  BoundInputs grid = in;
  grid.sigma.assign(3, 0.2);
  grid.initial_gap = 1.0;
  grid.rounds = 100;
  double prev = 1e300;
  for (int m = 1; m <= 64; m *= 2) {
    grid.honest = m;
    const double value = bound_ternary_vote(grid);
    CHECK(value < prev);
    prev = value;
  }
}

TEST_CASE("byzantine bound consistency") {
  BoundInputs in;
  in.smoothness = 2.0;
  in.sigma.assign(5, 0.3);
  in.initial_gap = 2.0;
  in.coord_bound = 0.4;
  in.params = {1, 2, 0.5, 1};
  in.dim = 5;
  in.honest = 9;
  in.byzantine = 0;
  in.rounds = 400;
  CHECK(bound_byzantine(in) ==
        doctest::Approx(bound_ternary_vote(in)).epsilon(1e-12));

  BoundInputs attacked = in;
  attacked.byzantine = 2;
  const double two = bound_byzantine(attacked);
  attacked.byzantine = 4;
  const double four = bound_byzantine(attacked);
  CHECK(four > two);

  BoundInputs zeroed = attacked;
  zeroed.coord_bound = 0.0;
  zeroed.params.magnitude = 0.0;
  // With Q = A = 0 the attack term vanishes; compare against a manual sum.
  const double root_ld = std::sqrt(zeroed.smoothness * zeroed.dim);
  const double root_t = std::sqrt(static_cast<double>(zeroed.rounds));
  const int n = zeroed.honest + zeroed.byzantine;
  const double expected =
      zeroed.initial_gap * root_ld / root_t + root_ld / (2 * root_t) +
      4.0 * std::sqrt(9.0) * (5 * 0.3) / n +
      2.0 * zeroed.params.scale * zeroed.dim / std::sqrt(n + 1.0) *
          std::pow(1.0 - 1.0 / (n + 1.0), n / 2.0);
  CHECK(bound_byzantine(zeroed) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("high-privacy bound") {
  BoundInputs in;
  in.smoothness = 1.0;
  in.initial_gap = 2.0;
  in.coord_bound = 0.5;
  in.params = {2, 4, 1, 1};
  in.dim = 10;
  in.honest = 1;
  in.rounds = 100;
  const HighPrivacyBound single = bound_vote_highprivacy(in);
  // M = 1: gain is 1/B, so the leading part is B times the bracket.
  const double bracket = 2.0 * std::sqrt(10.0) / 10.0 +
                         std::sqrt(10.0) / (2.0 * 10.0);
  CHECK(single.leading == doctest::Approx(4.0 * bracket).epsilon(1e-12));
  CHECK(single.residual_heuristic == 0.0);

  // Gain stays positive across random valid parameter sets.
  RngStream rng(55, 0, 0, "oracle");
  for (int trial = 0; trial < 1000; ++trial) {
    const double magnitude = 0.2 + 3.0 * rng.next_unit();
    const double scale = 2.0 * magnitude * (1.0 + rng.next_unit());
    const int workers = 1 + static_cast<int>(rng.next_below(40));
    CHECK(vote_gain({magnitude, scale, magnitude, 1}, workers) > 0.0);
  }

  // With the sparsity ratio fixed, the leading part grows like B.
  BoundInputs wide = in;
  wide.honest = 8;
  wide.params = {2, 8, 1, 1};
  const double at_base = bound_vote_highprivacy(wide).leading;
  wide.params = {4, 16, 1, 1};
  const double at_double = bound_vote_highprivacy(wide).leading;
  CHECK(at_double / at_base == doctest::Approx(2.0).epsilon(0.05));
}

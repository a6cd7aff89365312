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
#include <cmath>

#include "ternarylab/aggregators.hpp"
#include "ternarylab/errors.hpp"
#include "ternarylab/rng.hpp"
#include "ternarylab/vote_oracle.hpp"

using namespace ternarylab;

namespace {

TernaryVector tv(std::vector<std::int8_t> values) {
  return TernaryVector{std::move(values)};
}

}  // namespace

TEST_CASE("ternary mean") {
  CHECK(aggregate_mean({tv({1, -1}), tv({1, 1})}) == Gradient{1, 0});
  CHECK(aggregate_mean({tv({1, 0, -1})}) == Gradient{1, 0, -1});
  CHECK_THROWS_AS(aggregate_mean({tv({1}), tv({1, 0})}), DimensionMismatch);
  CHECK_THROWS_AS(aggregate_mean({}), TooFewWorkers);
}

TEST_CASE("ternary mean converges to the common input") {
  const CompressorParams p{1.0, 2.0, 1.0, 1};
  const Gradient g{0.5, -0.25};
  RngStream rng(31, 0, 0, "compress");
  const int workers = 100000;
  std::vector<TernaryVector> msgs;
  msgs.reserve(workers);
  for (int m = 0; m < workers; ++m) msgs.push_back(ternary_compress(g, p, rng));
  const Gradient mean = aggregate_mean(msgs);
  const double se =
      std::sqrt(p.magnitude * p.scale / static_cast<double>(workers));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(p.scale * mean[i] - g[i]) <= 4.0 * se);
  }
}

TEST_CASE("majority vote with sign(0) = 0") {
  CHECK(aggregate_vote({tv({1}), tv({1}), tv({-1})}).values ==
        std::vector<std::int8_t>{1});
  CHECK(aggregate_vote({tv({1}), tv({-1}), tv({0}), tv({0})}).values ==
        std::vector<std::int8_t>{0});
}

TEST_CASE("vote is permutation-invariant and odd") {
  RngStream rng(32, 0, 0, "vote");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TernaryVector> msgs;
    const int workers = 3 + static_cast<int>(rng.next_below(6));
    for (int m = 0; m < workers; ++m) {
      TernaryVector v;
      for (int i = 0; i < 10; ++i) {
        v.values.push_back(static_cast<std::int8_t>(rng.next_below(3)) - 1);
      }
      msgs.push_back(std::move(v));
    }
    const TernaryVector vote = aggregate_vote(msgs);

    std::vector<TernaryVector> shuffled = msgs;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
    }
    CHECK(aggregate_vote(shuffled).values == vote.values);

    std::vector<TernaryVector> negated = msgs;
    for (auto& m : negated) {
      for (auto& v : m.values) v = static_cast<std::int8_t>(-v);
    }
    const TernaryVector neg_vote = aggregate_vote(negated);
    for (std::size_t i = 0; i < vote.values.size(); ++i) {
      CHECK(neg_vote.values[i] == -vote.values[i]);
    }
  }
}

TEST_CASE("vote frequencies converge to the exact distribution") {
  const CompressorParams p{2.0, 4.0, 2.0, 1};
  const std::vector<double> inputs{1.0, 1.0};
  const VoteDistribution exact = vote_distribution_exact(inputs, p);
  CHECK(exact.plus == doctest::Approx(33.0 / 64).epsilon(1e-12));

  RngStream rng(33, 0, 0, "compress");
  const int n = 200000;
  double counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    std::vector<TernaryVector> msgs;
    for (double u : inputs) {
      msgs.push_back(ternary_compress({u}, p, rng));
    }
    counts[aggregate_vote(msgs).values[0] + 1] += 1;
  }
  const double expected[3] = {n * exact.minus, n * exact.zero, n * exact.plus};
  double chi2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double diff = counts[k] - expected[k];
    chi2 += diff * diff / expected[k];
  }
  CHECK(chi2 < 13.8155);  // p > 0.001 at 2 dof
}

TEST_CASE("multikrum scores, ties, and degenerate modes") {
  const std::vector<Gradient> msgs{{1.0}, {1.1}, {0.9}, {-5.0}};
  CHECK(aggregate_multikrum(msgs, 1, 1) == Gradient{1.0});

  const std::vector<Gradient> same{{2.0, 3.0}, {2.0, 3.0}, {2.0, 3.0}};
  CHECK(aggregate_multikrum(same, 0, 1) == Gradient{2.0, 3.0});

  // All selected: equals the plain mean.
  const std::vector<Gradient> spread{{1.0}, {2.0}, {4.0}, {9.0}};
  const Gradient all = aggregate_multikrum(spread, 0, 4);
  CHECK(all[0] == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(aggregate_multikrum({{1.0}, {2.0}}, 0, 1), TooFewWorkers);
}

TEST_CASE("multikrum output is a mean of input messages") {
  RngStream rng(34, 0, 0, "krum");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Gradient> msgs;
    for (int m = 0; m < 6; ++m) {
      msgs.push_back({rng.next_normal(), rng.next_normal()});
    }
    const Gradient out = aggregate_multikrum(msgs, 1, 1);
    const bool matches_some =
        std::any_of(msgs.begin(), msgs.end(),
                    [&](const Gradient& m) { return m == out; });
    CHECK(matches_some);
  }
}

TEST_CASE("centered clipping") {
  const std::vector<Gradient> msgs{{0.5}, {2.0}, {-10.0}};
  const Gradient one = aggregate_centered_clipping(msgs, {0.0}, 1.0, 1);
  CHECK(one[0] == doctest::Approx(0.5 / 3.0).epsilon(1e-12));

  // All messages within the radius: one step lands on the plain mean.
  const std::vector<Gradient> close{{0.1}, {0.2}, {0.3}};
  const Gradient mean = aggregate_centered_clipping(close, {0.2}, 1.0, 1);
  CHECK(mean[0] == doctest::Approx(0.2).epsilon(1e-12));

  // Huge radius: same thing from any start.
  const Gradient wide = aggregate_centered_clipping(msgs, {5.0}, 1e9, 1);
  CHECK(wide[0] == doctest::Approx((0.5 + 2.0 - 10.0) / 3.0).epsilon(1e-12));
}

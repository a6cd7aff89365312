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

#include "ternarylab/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ternarylab/errors.hpp"

namespace ternarylab {

namespace {
constexpr double kShapeTol = 1e-12;
}

TradeoffCurve TradeoffCurve::from_breakpoints(
    std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw ConfigError("tradeoff curve: need >= 2 points");
  // Merge zero-width segments (degenerate middles collapse here).
  std::vector<std::pair<double, double>> merged;
  for (const auto& pt : points) {
    if (!merged.empty() && pt.first - merged.back().first <= kShapeTol) {
      if (std::abs(pt.second - merged.back().second) > 1e-9) {
        throw ConfigError("tradeoff curve: discontinuity at alpha = " +
                          std::to_string(pt.first));
      }
      continue;
    }
    merged.push_back(pt);
  }
  if (std::abs(merged.front().first) > kShapeTol ||
      std::abs(merged.back().first - 1.0) > kShapeTol) {
    throw ConfigError("tradeoff curve: alpha must run from 0 to 1");
  }
  merged.front().first = 0.0;
  merged.back().first = 1.0;
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto& [alpha, beta] = merged[i];
    if (beta < -kShapeTol || beta > 1.0 + kShapeTol) {
      throw ConfigError("tradeoff curve: beta outside [0, 1]");
    }
    if (i > 0) {
      const double slope = (beta - merged[i - 1].second) /
                           (alpha - merged[i - 1].first);
      if (slope > kShapeTol) {
        throw ConfigError("tradeoff curve: not non-increasing");
      }
      if (slope + kShapeTol < prev_slope) {
        throw ConfigError("tradeoff curve: not convex");
      }
      prev_slope = slope;
    }
  }
  TradeoffCurve curve;
  curve.points_ = std::move(merged);
  return curve;
}

double TradeoffCurve::value(double alpha) const {
  alpha = std::clamp(alpha, 0.0, 1.0);
  auto it = std::upper_bound(
      points_.begin(), points_.end(), alpha,
      [](double a, const std::pair<double, double>& p) { return a < p.first; });
  if (it == points_.begin()) return points_.front().second;
  if (it == points_.end()) return points_.back().second;
  const auto& [a1, b1] = *(it - 1);
  const auto& [a2, b2] = *it;
  const double t = (alpha - a1) / (a2 - a1);
  return b1 + t * (b2 - b1);
}

CurveFunctionals curve_functionals(const TradeoffCurve& f) {
  const auto& pts = f.breakpoints();
  CurveFunctionals out;
  // First pass: kl and the square/cube moments of log|slope|.
  std::vector<double> widths, logs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double width = pts[i].first - pts[i - 1].first;
    const double slope = (pts[i].second - pts[i - 1].second) / width;
    if (slope == 0.0) {
      throw DegenerateCurve("flat segment of width " + std::to_string(width));
    }
    const double lg = std::log(std::abs(slope));
    widths.push_back(width);
    logs.push_back(lg);
    out.kl -= width * lg;
    out.kappa2 += width * lg * lg;
    out.kappa3 += width * std::abs(lg) * lg * lg;
  }
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const double centered = std::abs(logs[i] + out.kl);
    out.kappa3_bar += widths[i] * centered * centered * centered;
  }
  return out;
}

double curve_to_epsilon_delta(const TradeoffCurve& f, double epsilon) {
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon >= 0 required");
  const double scale = std::exp(epsilon);
  double best = 0.0;  // delta is never negative
  for (const auto& [alpha, beta] : f.breakpoints()) {
    best = std::max(best, 1.0 - scale * alpha - beta);
  }
  return best;
}

}  // namespace ternarylab

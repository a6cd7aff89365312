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

#include "ternarylab/compressors.hpp"

#include <algorithm>
#include <cmath>

#include "ternarylab/errors.hpp"

namespace ternarylab {
namespace {

void check_finite(const Gradient& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw NonFinite(i);
  }
}

void check_basic_compressor(const CompressorParams& p) {
  if (!(p.magnitude > 0)) throw ParamViolation("A > 0");
  if (!(p.magnitude <= p.scale)) throw ParamViolation("A <= B");
}

TernaryVector ternary_impl(const Gradient& g, const CompressorParams& p,
                           double participation, RngStream& rng) {
  check_basic_compressor(p);
  check_finite(g);
  const double a = p.magnitude, s = p.scale;
  TernaryVector out;
  out.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g[i]) > a) throw OutOfRange(i, std::abs(g[i]), a);
    const double p_plus = participation * (a + g[i]) / (2 * s);
    const double p_minus = participation * (a - g[i]) / (2 * s);
    const double u = rng.next_unit();
    out.values[i] = u < p_plus ? 1 : (u < p_plus + p_minus ? -1 : 0);
  }
  return out;
}

}  // namespace

void validate_gaussian_sparse(const GaussianSparseParams& q) {
  if (!(q.l2_clip > 0)) throw ParamViolation("C > 0");
  if (!(q.sigma >= 0)) throw ParamViolation("sigma >= 0");
  if (!(q.keep_prob > 0 && q.keep_prob <= 1)) {
    throw ParamViolation("keep_prob in (0, 1]");
  }
}

Gradient clip_linf(const Gradient& g, double threshold) {
  if (!(threshold > 0)) throw ParamViolation("clip threshold > 0");
  check_finite(g);
  Gradient out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = std::clamp(g[i], -threshold, threshold);
  }
  return out;
}

Gradient clip_l2(const Gradient& g, double threshold) {
  if (!(threshold > 0)) throw ParamViolation("clip threshold > 0");
  check_finite(g);
  double sq = 0.0;
  for (double v : g) sq += v * v;
  const double norm = std::sqrt(sq);
  const double factor = norm > threshold ? threshold / norm : 1.0;
  Gradient out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] * factor;
  return out;
}

TernaryVector ternary_compress(const Gradient& g, const CompressorParams& p,
                               RngStream& rng) {
  return ternary_impl(g, p, 1.0, rng);
}

TernaryVector ternary_compress_sampled(const Gradient& g,
                                       const CompressorParams& p,
                                       double participation, RngStream& rng) {
  if (!(participation > 0 && participation <= 1)) {
    throw ParamViolation("participation in (0, 1]");
  }
  return ternary_impl(g, p, participation, rng);
}

Gradient gaussian_sparse_compress(const Gradient& g,
                                  const GaussianSparseParams& q,
                                  RngStream& rng) {
  validate_gaussian_sparse(q);
  check_finite(g);
  Gradient out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double v = g[i];
    if (q.sigma > 0) {
      v += q.sigma * rng.next_normal();
    } else {
      rng.next_normal();  // keep the draw schedule independent of sigma
    }
    const double keep = rng.next_unit();
    if (keep < q.keep_prob) {
      out[i] = q.rescale ? v / q.keep_prob : v;
    } else {
      out[i] = 0.0;
    }
  }
  return out;
}

}  // namespace ternarylab

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

#include "ternarylab/params.hpp"

#include <cmath>

#include "ternarylab/errors.hpp"

namespace ternarylab {

void validate_params(const CompressorParams& p, ValidationMode mode) {
  const double a = p.magnitude;
  const double s = p.scale;
  const double c = p.clip;
  if (!(std::isfinite(a) && std::isfinite(s) && std::isfinite(c))) {
    throw ParamViolation("A, B, c finite");
  }
  if (p.batch < 1) throw ParamViolation("b >= 1");
  if (!(c > 0)) throw ParamViolation("c > 0");
  if (!(c <= a)) throw ParamViolation("c <= A");
  if (!(a <= s)) throw ParamViolation("A <= B");
  switch (mode) {
    case ValidationMode::kPrivacy:
      if (!(s > a + c)) throw ParamViolation("B > A + c");
      break;
    case ValidationMode::kVoteBound:
      if (!(s >= 2 * a)) throw ParamViolation("B >= 2A");
      break;
  }
}

std::size_t TernaryVector::nonzeros() const {
  std::size_t count = 0;
  for (auto v : values) count += (v != 0);
  return count;
}

std::vector<std::pair<int, std::size_t>> rle_encode(const TernaryVector& v) {
  std::vector<std::pair<int, std::size_t>> runs;
  for (auto x : v.values) {
    if (!runs.empty() && runs.back().first == x) {
      ++runs.back().second;
    } else {
      runs.emplace_back(x, 1);
    }
  }
  return runs;
}

TernaryVector rle_decode(
    const std::vector<std::pair<int, std::size_t>>& runs) {
  TernaryVector out;
  for (const auto& [value, run] : runs) {
    if (value < -1 || value > 1) {
      throw ConfigError("run-length value outside {-1,0,1}");
    }
    out.values.insert(out.values.end(), run, static_cast<std::int8_t>(value));
  }
  return out;
}

void validate_topology(const TopologyConfig& t) {
  if (t.honest < 1) throw ConfigError("topology: honest workers >= 1");
  if (t.byzantine < 0) throw ConfigError("topology: byzantine workers >= 0");
  if (const auto* fixed = std::get_if<FixedSubset>(&t.sampling)) {
    if (fixed->count < 1 || fixed->count > t.total()) {
      throw ConfigError("topology: subset count in [1, M+K]");
    }
  } else if (const auto* bern = std::get_if<IndependentBernoulli>(&t.sampling)) {
    if (!(bern->prob > 0.0 && bern->prob <= 1.0)) {
      throw ConfigError("topology: participation probability in (0, 1]");
    }
  }
}

}  // namespace ternarylab

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

#ifndef TERNARYLAB_PARAMS_HPP_
#define TERNARYLAB_PARAMS_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ternarylab {

// Parameters of the ternary stochastic compressor and its privacy curves.
// Public parameter names (CLI flags, JSON keys, error messages) are A, B, c,
// and b:
//   A (magnitude): cap on input coordinate magnitude; A/B is the expected
//       nonzero fraction of the output.
//   B (scale):     unbiasing scale; B * output is an unbiased estimate of the
//       input coordinate.
//   c (clip):      per-coordinate clipping threshold applied to per-example
//       gradients before averaging.
//   b (batch):     mini-batch size entering the privacy curves.
struct CompressorParams {
  double magnitude = 0.0;  // A
  double scale = 0.0;      // B
  double clip = 0.0;       // c
  int batch = 1;           // b
};

// Which extra inequality a consumer requires on top of 0 < c <= A <= B.
//   kPrivacy:   B > A + c, needed by the mini-batch tradeoff curve.
//   kVoteBound: B >= 2A, needed by the majority-vote error bound.
enum class ValidationMode { kPrivacy, kVoteBound };

// Validates `p` for `mode`. Checks run in a fixed order -- b >= 1, c > 0,
// c <= A, A <= B, then the mode inequality -- and the first violated one is
// reported via ParamViolation, naming the inequality.
void validate_params(const CompressorParams& p, ValidationMode mode);

// A per-coordinate {-1, 0, +1} compressed gradient message.
struct TernaryVector {
  std::vector<std::int8_t> values;

  std::size_t dim() const { return values.size(); }
  std::size_t nonzeros() const;
};

// Run-length encoding used when messages are written to logs: a list of
// (value, run) pairs covering the vector left to right.
std::vector<std::pair<int, std::size_t>> rle_encode(const TernaryVector& v);
TernaryVector rle_decode(
    const std::vector<std::pair<int, std::size_t>>& runs);

// Worker population and per-round participation.
struct FullParticipation {};
struct FixedSubset {
  int count = 1;  // workers sampled per round, without replacement
};
struct IndependentBernoulli {
  double prob = 1.0;  // each worker participates independently
};
using SamplingScheme =
    std::variant<FullParticipation, FixedSubset, IndependentBernoulli>;

struct TopologyConfig {
  int honest = 1;     // M
  int byzantine = 0;  // K
  SamplingScheme sampling = FullParticipation{};

  int total() const { return honest + byzantine; }
};

// Throws ConfigError on an invalid topology.
void validate_topology(const TopologyConfig& t);

}  // namespace ternarylab

#endif  // TERNARYLAB_PARAMS_HPP_

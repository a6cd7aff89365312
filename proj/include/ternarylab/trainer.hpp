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

#ifndef TERNARYLAB_TRAINER_HPP_
#define TERNARYLAB_TRAINER_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ternarylab/compressors.hpp"
#include "ternarylab/objective.hpp"
#include "ternarylab/params.hpp"
#include "ternarylab/rng.hpp"

namespace ternarylab {

// --- configuration -----------------------------------------------------

struct LinfClip {
  double threshold = 1.0;
};
struct L2Clip {
  double threshold = 1.0;
};
using ClipSpec = std::variant<LinfClip, L2Clip>;

struct TernaryCompressor {
  CompressorParams params;
};
struct GaussianSparseCompressor {
  GaussianSparseParams params;
};
using CompressorChoice =
    std::variant<TernaryCompressor, GaussianSparseCompressor>;

struct TernaryMeanAgg {
  bool debias = false;  // multiply the mean by B before stepping
};
struct TernaryVoteAgg {};
struct PlainMeanAgg {};
struct MultiKrumAgg {
  int assumed_byzantine = 0;
  int select = -1;  // -1: defaults to n - assumed_byzantine at call time
};
struct CenteredClippingAgg {
  double radius = 1.0;
  int iters = 1;
};
using AggregatorChoice = std::variant<TernaryMeanAgg, TernaryVoteAgg,
                                      PlainMeanAgg, MultiKrumAgg,
                                      CenteredClippingAgg>;

struct NoAttack {};
struct BlindAttack {};
struct FlipSignAttack {};
struct FallOfEmpireAttack {
  double scale = 1.0;
};
struct LittleIsEnoughAttack {};
using AttackChoice = std::variant<NoAttack, BlindAttack, FlipSignAttack,
                                  FallOfEmpireAttack, LittleIsEnoughAttack>;

struct FixedEta {
  double value = 0.01;
};
// eta = 1 / sqrt(T * L * d) with the objective's smoothness L (or the
// configured override).
struct AutoEta {};
struct StepDecayEta {
  double initial = 0.01;
  double factor = 0.1;
  long long at_round = 0;
};
using EtaSchedule = std::variant<FixedEta, AutoEta, StepDecayEta>;

struct TrainConfig {
  long long rounds = 1;                 // T
  EtaSchedule eta = AutoEta{};
  int batch = 1;                        // b
  std::optional<ClipSpec> clip;         // defaults per compressor kind
  CompressorChoice compressor = TernaryCompressor{};
  AggregatorChoice aggregator = TernaryVoteAgg{};
  TopologyConfig topology;
  AttackChoice attack = NoAttack{};
  std::uint64_t seed = 1;
  std::optional<double> smoothness_override;
  Gradient initial_weights;             // empty: zeros
};

// Throws ConfigError on inconsistent configuration (aggregator/compressor
// mismatch, clip threshold above the compressor magnitude, batch < 1, ...).
void validate_config(const TrainConfig& config, const Objective& objective);

// --- accounting ---------------------------------------------------------

// Communication cost of one message. `positional` counts sign+index bits
// for ternary messages (nnz * (1 + ceil(log2 d))) and 32-bit floats plus
// index bits for sparse real messages; `entropy` is the idealized
// d * H(symbol frequencies) figure for ternary messages (equal to
// positional for real-valued ones).
struct BitsAccount {
  double positional = 0.0;
  double entropy = 0.0;
};
BitsAccount ternary_message_bits(const TernaryVector& msg);
BitsAccount sparse_real_message_bits(const Gradient& msg);
BitsAccount dense_broadcast_bits(int dim);

// --- training loop ------------------------------------------------------

struct RoundRecord {
  long long t = 0;
  double grad_l1 = 0.0;    // ||grad F(w_t)||_1
  double grad_l2sq = 0.0;  // ||grad F(w_t)||_2^2
  double loss = 0.0;       // F(w_t)
  double uplink_bits = 0.0;
  double downlink_bits = 0.0;
  double uplink_entropy_bits = 0.0;
  double downlink_entropy_bits = 0.0;
  std::vector<int> participants;
};

struct TrainResult {
  std::vector<RoundRecord> rounds;
  Gradient final_weights;
  // Last round's majority-vote update, for vote runs; empty otherwise.
  // Serialized into logs as run-length-encoded triples.
  TernaryVector final_vote;
};

// The honest-worker gradient pipeline: sample `batch` examples without
// replacement from the worker's shard (the whole shard when batch covers
// it), take per-example gradients, clip each, and average.
Gradient honest_batch_gradient(const Objective& objective, int worker,
                               const Gradient& w, int batch,
                               const ClipSpec& clip, RngStream& rng);

// Runs the full training loop: per round, sample participants, collect
// compressed messages (honest pipeline or configured attack), aggregate,
// step, and record metrics. Deterministic given config.seed.
TrainResult run_training(const Objective& objective,
                         const TrainConfig& config);

}  // namespace ternarylab

#endif  // TERNARYLAB_TRAINER_HPP_

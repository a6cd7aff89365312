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

#include "ternarylab/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ternarylab/aggregators.hpp"
#include "ternarylab/attacks.hpp"
#include "ternarylab/errors.hpp"

namespace ternarylab {
namespace {

// Stream address reserved for server-side draws.
constexpr std::uint64_t kServerId = ~std::uint64_t{0};

double clip_threshold_bound(const ClipSpec& clip) {
  if (const auto* linf = std::get_if<LinfClip>(&clip)) return linf->threshold;
  return std::get<L2Clip>(clip).threshold;  // L2 ball implies coord bound
}

ClipSpec default_clip(const CompressorChoice& compressor) {
  if (const auto* t = std::get_if<TernaryCompressor>(&compressor)) {
    return LinfClip{t->params.clip};
  }
  return L2Clip{std::get<GaussianSparseCompressor>(compressor).params.l2_clip};
}

Gradient clip_example(const Gradient& g, const ClipSpec& clip) {
  if (const auto* linf = std::get_if<LinfClip>(&clip)) {
    return clip_linf(g, linf->threshold);
  }
  return clip_l2(g, std::get<L2Clip>(clip).threshold);
}

std::vector<int> sample_participants(const TopologyConfig& topology,
                                     RngStream& rng) {
  const int n = topology.total();
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  if (std::holds_alternative<FullParticipation>(topology.sampling)) {
    return ids;
  }
  if (const auto* fixed = std::get_if<FixedSubset>(&topology.sampling)) {
    for (int i = 0; i < fixed->count; ++i) {
      const int j =
          i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(ids[i], ids[j]);
    }
    ids.resize(fixed->count);
    std::sort(ids.begin(), ids.end());
    return ids;
  }
  const double prob = std::get<IndependentBernoulli>(topology.sampling).prob;
  std::vector<int> chosen;
  for (int id = 0; id < n; ++id) {
    if (rng.next_unit() < prob) chosen.push_back(id);
  }
  return chosen;
}

Gradient mean_of(const std::vector<Gradient>& grads, std::size_t dim) {
  Gradient out(dim, 0.0);
  if (grads.empty()) return out;
  for (const auto& g : grads) {
    for (std::size_t i = 0; i < dim; ++i) out[i] += g[i];
  }
  for (double& v : out) v /= static_cast<double>(grads.size());
  return out;
}

Gradient ternary_as_real(const TernaryVector& t) {
  Gradient out(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) out[i] = t.values[i];
  return out;
}

}  // namespace

void validate_config(const TrainConfig& config, const Objective& objective) {
  if (config.rounds < 1) throw ConfigError("rounds >= 1");
  if (config.batch < 1) throw ConfigError("batch >= 1");
  validate_topology(config.topology);
  if (objective.num_workers() != config.topology.total()) {
    throw ConfigError("objective provides " +
                      std::to_string(objective.num_workers()) +
                      " shards but topology has " +
                      std::to_string(config.topology.total()) + " workers");
  }
  if (!config.initial_weights.empty() &&
      static_cast<int>(config.initial_weights.size()) != objective.dim()) {
    throw ConfigError("initial weights dimension mismatch");
  }

  const bool ternary = std::holds_alternative<TernaryCompressor>(
      config.compressor);
  if (ternary) {
    const auto& p = std::get<TernaryCompressor>(config.compressor).params;
    if (!(p.clip > 0)) throw ParamViolation("c > 0");
    if (!(p.clip <= p.magnitude)) throw ParamViolation("c <= A");
    if (!(p.magnitude <= p.scale)) throw ParamViolation("A <= B");
    const ClipSpec clip = config.clip.value_or(default_clip(config.compressor));
    if (clip_threshold_bound(clip) > p.magnitude) {
      throw ConfigError("clip threshold must not exceed A");
    }
  } else {
    validate_gaussian_sparse(
        std::get<GaussianSparseCompressor>(config.compressor).params);
  }
  if (!ternary && (std::holds_alternative<TernaryMeanAgg>(config.aggregator) ||
                   std::holds_alternative<TernaryVoteAgg>(config.aggregator))) {
    throw ConfigError("ternary aggregation requires the ternary compressor");
  }
  if (const auto* krum = std::get_if<MultiKrumAgg>(&config.aggregator)) {
    if (config.topology.total() - krum->assumed_byzantine - 2 < 1) {
      throw ConfigError("multikrum needs M + K >= f + 3");
    }
  }
  if (const auto* cc = std::get_if<CenteredClippingAgg>(&config.aggregator)) {
    if (!(cc->radius > 0) || cc->iters < 1) {
      throw ConfigError("centered clipping: radius > 0 and iters >= 1");
    }
  }
  if (const auto* fixed = std::get_if<FixedEta>(&config.eta)) {
    // Zero is allowed as the degenerate frozen-model case.
    if (!(fixed->value >= 0)) throw ConfigError("eta >= 0");
  } else if (const auto* decay = std::get_if<StepDecayEta>(&config.eta)) {
    if (!(decay->initial > 0) || !(decay->factor > 0)) {
      throw ConfigError("step decay: initial > 0 and factor > 0");
    }
  }
  if (std::holds_alternative<AutoEta>(config.eta)) {
    const double l = config.smoothness_override.value_or(
        objective.smoothness());
    if (!(l > 0) || !std::isfinite(l)) {
      throw ConfigError("auto eta needs a positive finite smoothness");
    }
  }
}

BitsAccount ternary_message_bits(const TernaryVector& msg) {
  const std::size_t d = msg.dim();
  const double index_bits = d <= 1 ? 0.0 : std::ceil(std::log2(d));
  BitsAccount out;
  out.positional = static_cast<double>(msg.nonzeros()) * (1.0 + index_bits);
  std::size_t plus = 0, minus = 0;
  for (auto v : msg.values) {
    plus += (v > 0);
    minus += (v < 0);
  }
  const double n = static_cast<double>(d);
  for (double count : {static_cast<double>(plus), static_cast<double>(minus),
                       n - plus - minus}) {
    if (count > 0) {
      const double p = count / n;
      out.entropy -= count * std::log2(p);
    }
  }
  return out;
}

BitsAccount sparse_real_message_bits(const Gradient& msg) {
  const std::size_t d = msg.size();
  const double index_bits = d <= 1 ? 0.0 : std::ceil(std::log2(d));
  std::size_t nnz = 0;
  for (double v : msg) nnz += (v != 0.0);
  BitsAccount out;
  out.positional = static_cast<double>(nnz) * (32.0 + index_bits);
  out.entropy = out.positional;
  return out;
}

BitsAccount dense_broadcast_bits(int dim) {
  BitsAccount out;
  out.positional = 32.0 * dim;
  out.entropy = out.positional;
  return out;
}

Gradient honest_batch_gradient(const Objective& objective, int worker,
                               const Gradient& w, int batch,
                               const ClipSpec& clip, RngStream& rng) {
  const int n = objective.shard_size(worker);
  const int take = std::min(batch, n);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (take < n) {
    for (int i = 0; i < take; ++i) {
      const int j = i + static_cast<int>(
                            rng.next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
  }
  Gradient sum(objective.dim(), 0.0);
  for (int i = 0; i < take; ++i) {
    const Gradient g =
        clip_example(objective.example_gradient(worker, idx[i], w), clip);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += g[k];
  }
  for (double& v : sum) v /= static_cast<double>(take);
  return sum;
}

TrainResult run_training(const Objective& objective,
                         const TrainConfig& config) {
  validate_config(config, objective);
  const int dim = objective.dim();
  const int honest = config.topology.honest;
  const long long rounds = config.rounds;
  const ClipSpec clip = config.clip.value_or(default_clip(config.compressor));
  const bool ternary =
      std::holds_alternative<TernaryCompressor>(config.compressor);
  const double smoothness =
      config.smoothness_override.value_or(objective.smoothness());

  const auto eta_at = [&](long long t) -> double {
    if (const auto* fixed = std::get_if<FixedEta>(&config.eta)) {
      return fixed->value;
    }
    if (const auto* decay = std::get_if<StepDecayEta>(&config.eta)) {
      return t >= decay->at_round ? decay->initial * decay->factor
                                  : decay->initial;
    }
    return 1.0 / std::sqrt(static_cast<double>(rounds) * smoothness * dim);
  };

  Gradient w = config.initial_weights.empty() ? Gradient(dim, 0.0)
                                              : config.initial_weights;
  Gradient cc_state(dim, 0.0);

  TrainResult result;
  result.rounds.reserve(static_cast<std::size_t>(rounds));

  for (long long t = 0; t < rounds; ++t) {
    RoundRecord rec;
    rec.t = t;
    const Gradient true_grad = objective.full_gradient(w);
    for (double v : true_grad) {
      rec.grad_l1 += std::abs(v);
      rec.grad_l2sq += v * v;
    }
    rec.loss = objective.loss(w);

    RngStream sampling_rng(config.seed, static_cast<std::uint64_t>(t),
                           kServerId, "sampling");
    rec.participants = sample_participants(config.topology, sampling_rng);

    // Honest gradient pipeline first; attackers may inspect the snapshot.
    std::vector<Gradient> honest_grads;
    for (int id : rec.participants) {
      if (id >= honest) continue;
      RngStream batch_rng(config.seed, static_cast<std::uint64_t>(t),
                          static_cast<std::uint64_t>(id), "batch");
      honest_grads.push_back(honest_batch_gradient(
          objective, id, w, config.batch, clip, batch_rng));
    }

    const bool no_attack = std::holds_alternative<NoAttack>(config.attack);
    const auto honest_style_gradient = [&](int id) -> Gradient {
      RngStream batch_rng(config.seed, static_cast<std::uint64_t>(t),
                          static_cast<std::uint64_t>(id), "batch");
      return honest_batch_gradient(objective, id, w, config.batch, clip,
                                   batch_rng);
    };
    const auto attacker_gradient = [&](int id) -> Gradient {
      if (std::holds_alternative<BlindAttack>(config.attack)) {
        return attack_blind(true_grad);
      }
      if (std::holds_alternative<FlipSignAttack>(config.attack)) {
        return attack_flip_sign(honest_style_gradient(id));
      }
      if (const auto* foe = std::get_if<FallOfEmpireAttack>(&config.attack)) {
        return attack_foe(mean_of(honest_grads, dim), foe->scale);
      }
      // Little-is-enough; degenerates to silence with < 2 honest gradients.
      if (honest_grads.size() < 2) return Gradient(dim, 0.0);
      return attack_lie(honest_grads, config.topology.total(),
                        config.topology.byzantine);
    };

    std::vector<TernaryVector> ternary_msgs;
    std::vector<Gradient> real_msgs;
    std::size_t next_honest = 0;
    for (int id : rec.participants) {
      const bool attacker = id >= honest && !no_attack;
      RngStream compress_rng(config.seed, static_cast<std::uint64_t>(t),
                             static_cast<std::uint64_t>(id), "compress");
      if (ternary) {
        const auto& params =
            std::get<TernaryCompressor>(config.compressor).params;
        TernaryVector msg;
        if (!attacker) {
          const Gradient g = id < honest ? honest_grads[next_honest++]
                                         : honest_style_gradient(id);
          msg = ternary_compress(g, params, compress_rng);
        } else {
          // Attackers clip to [-c, c] and compress with magnitude c.
          CompressorParams attacker_params = params;
          attacker_params.magnitude = params.clip;
          msg = ternary_compress(
              clip_linf(attacker_gradient(id), params.clip), attacker_params,
              compress_rng);
        }
        const BitsAccount bits = ternary_message_bits(msg);
        rec.uplink_bits += bits.positional;
        rec.uplink_entropy_bits += bits.entropy;
        ternary_msgs.push_back(std::move(msg));
      } else {
        const auto& params =
            std::get<GaussianSparseCompressor>(config.compressor).params;
        Gradient msg;
        if (!attacker) {
          const Gradient g = id < honest ? honest_grads[next_honest++]
                                         : honest_style_gradient(id);
          msg = gaussian_sparse_compress(g, params, compress_rng);
        } else {
          // Attackers sparsify but add no noise.
          GaussianSparseParams attacker_params = params;
          attacker_params.sigma = 0.0;
          msg = gaussian_sparse_compress(
              clip_l2(attacker_gradient(id), params.l2_clip), attacker_params,
              compress_rng);
        }
        const BitsAccount bits = sparse_real_message_bits(msg);
        rec.uplink_bits += bits.positional;
        rec.uplink_entropy_bits += bits.entropy;
        real_msgs.push_back(std::move(msg));
      }
    }

    Gradient step(dim, 0.0);
    BitsAccount down = dense_broadcast_bits(dim);
    if (!rec.participants.empty()) {
      if (std::holds_alternative<TernaryVoteAgg>(config.aggregator)) {
        TernaryVector vote = aggregate_vote(ternary_msgs);
        step = ternary_as_real(vote);
        down = ternary_message_bits(vote);
        result.final_vote = std::move(vote);
      } else if (const auto* mean_agg =
                     std::get_if<TernaryMeanAgg>(&config.aggregator)) {
        step = aggregate_mean(ternary_msgs);
        if (mean_agg->debias) {
          const double scale =
              std::get<TernaryCompressor>(config.compressor).params.scale;
          for (double& v : step) v *= scale;
        }
      } else {
        if (ternary) {
          real_msgs.reserve(ternary_msgs.size());
          for (const auto& m : ternary_msgs) {
            real_msgs.push_back(ternary_as_real(m));
          }
        }
        if (std::holds_alternative<PlainMeanAgg>(config.aggregator)) {
          step = aggregate_plain_mean(real_msgs);
        } else if (const auto* krum =
                       std::get_if<MultiKrumAgg>(&config.aggregator)) {
          const int n = static_cast<int>(real_msgs.size());
          const int select =
              krum->select > 0 ? krum->select : n - krum->assumed_byzantine;
          step = aggregate_multikrum(real_msgs, krum->assumed_byzantine,
                                     std::min(select, n));
        } else {
          const auto& cc = std::get<CenteredClippingAgg>(config.aggregator);
          step = aggregate_centered_clipping(real_msgs, cc_state, cc.radius,
                                             cc.iters);
          cc_state = step;
        }
      }
    } else {
      down = BitsAccount{};
    }
    rec.downlink_bits = down.positional;
    rec.downlink_entropy_bits = down.entropy;

    const double eta = eta_at(t);
    for (int i = 0; i < dim; ++i) w[i] -= eta * step[i];
    result.rounds.push_back(std::move(rec));
  }

  result.final_weights = std::move(w);
  return result;
}

}  // namespace ternarylab

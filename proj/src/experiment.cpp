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

#include "ternarylab/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ternarylab/errors.hpp"
#include "ternarylab/partition.hpp"
#include "ternarylab/privacy.hpp"

namespace ternarylab {

using nlohmann::json;

namespace {

// Shortest round-trip decimal form; keeps CSV output byte-stable.
std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const json& require(const json& doc, const char* key, const char* where) {
  if (!doc.contains(key)) {
    throw ConfigError(std::string(where) + ": missing field '" + key + "'");
  }
  return doc.at(key);
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) ? doc.at(key).get<T>() : fallback;
}

TopologyConfig parse_topology(const json& doc) {
  TopologyConfig t;
  t.honest = require(doc, "honest", "topology").get<int>();
  t.byzantine = get_or(doc, "byzantine", 0);
  if (doc.contains("sampling")) {
    const json& s = doc.at("sampling");
    const std::string kind = require(s, "kind", "sampling").get<std::string>();
    if (kind == "full") {
      t.sampling = FullParticipation{};
    } else if (kind == "subset") {
      t.sampling = FixedSubset{require(s, "count", "sampling").get<int>()};
    } else if (kind == "bernoulli") {
      t.sampling =
          IndependentBernoulli{require(s, "prob", "sampling").get<double>()};
    } else {
      throw ConfigError("sampling: unknown kind '" + kind + "'");
    }
  }
  validate_topology(t);
  return t;
}

std::shared_ptr<const Objective> parse_objective(const json& doc,
                                                 const TopologyConfig& topo) {
  const std::string kind = require(doc, "kind", "objective").get<std::string>();
  if (kind == "quadratic") {
    std::vector<std::vector<Gradient>> shards;
    if (doc.contains("generator")) {
      const json& g = doc.at("generator");
      shards = make_heterogeneous_quadratic(
          require(g, "dim", "quadratic generator").get<int>(),
          topo.total(), topo.honest,
          require(g, "per_worker", "quadratic generator").get<int>(),
          get_or(g, "base_magnitude", 0.5), get_or(g, "hetero", 0.0),
          get_or(g, "within", 0.0),
          get_or<std::uint64_t>(g, "data_seed", 1234));
    } else {
      shards = require(doc, "shards", "objective")
                   .get<std::vector<std::vector<Gradient>>>();
    }
    return std::make_shared<QuadraticObjective>(std::move(shards),
                                                topo.honest);
  }
  if (kind == "logistic") {
    const double l2_reg = get_or(doc, "l2_reg", 0.0);
    std::vector<std::vector<LogisticObjective::Example>> shards;
    if (doc.contains("generator")) {
      const json& g = doc.at("generator");
      const int dim = require(g, "dim", "logistic generator").get<int>();
      const int examples =
          require(g, "examples", "logistic generator").get<int>();
      const double separation = get_or(g, "separation", 2.0);
      const double alpha = get_or(g, "alpha", 0.5);
      const std::uint64_t data_seed = get_or<std::uint64_t>(g, "data_seed", 1234);

      RngStream data_rng(data_seed, 0, 0, "features");
      std::vector<LogisticObjective::Example> pool(examples);
      std::vector<int> labels(examples);
      for (int i = 0; i < examples; ++i) {
        const int y = i % 2;
        Gradient x(dim);
        for (int k = 0; k < dim; ++k) {
          const double center = (k == 0) ? (y == 1 ? separation : -separation)
                                         : 0.0;
          x[k] = center + data_rng.next_normal();
        }
        pool[i] = {std::move(x), y};
        labels[i] = y;
      }
      RngStream part_rng(data_seed, 1, 0, "partition");
      const auto parts =
          dirichlet_partition(labels, topo.total(), alpha, part_rng);
      shards.resize(parts.size());
      for (std::size_t m = 0; m < parts.size(); ++m) {
        for (std::size_t idx : parts[m]) shards[m].push_back(pool[idx]);
      }
    } else {
      const json& raw = require(doc, "shards", "objective");
      for (const auto& shard : raw) {
        std::vector<LogisticObjective::Example> out;
        for (const auto& ex : shard) {
          out.push_back({require(ex, "x", "example").get<Gradient>(),
                         require(ex, "y", "example").get<int>()});
        }
        shards.push_back(std::move(out));
      }
    }
    return std::make_shared<LogisticObjective>(std::move(shards), l2_reg,
                                               topo.honest);
  }
  throw ConfigError("objective: unknown kind '" + kind + "'");
}

CompressorChoice parse_compressor(const json& doc, int dim, json& resolved) {
  const std::string kind =
      require(doc, "kind", "compressor").get<std::string>();
  if (kind == "ternary") {
    CompressorParams p;
    if (doc.contains("solve")) {
      const json& s = doc.at("solve");
      p = solve_params(require(s, "mu", "solve").get<double>(),
                       require(s, "ratio", "solve").get<double>(),
                       require(s, "c", "solve").get<double>(),
                       get_or(s, "b", 1), dim);
    } else {
      p.magnitude = require(doc, "A", "compressor").get<double>();
      p.scale = require(doc, "B", "compressor").get<double>();
      p.clip = require(doc, "c", "compressor").get<double>();
      p.batch = get_or(doc, "b", 1);
    }
    resolved = {{"kind", "ternary"},
                {"A", p.magnitude},
                {"B", p.scale},
                {"c", p.clip},
                {"b", p.batch}};
    return TernaryCompressor{p};
  }
  if (kind == "gaussian_sparse") {
    GaussianSparseParams q;
    q.l2_clip = require(doc, "C", "compressor").get<double>();
    q.sigma = require(doc, "sigma", "compressor").get<double>();
    q.keep_prob = get_or(doc, "keep_prob", 1.0);
    q.rescale = get_or(doc, "rescale", false);
    validate_gaussian_sparse(q);
    resolved = {{"kind", "gaussian_sparse"},
                {"C", q.l2_clip},
                {"sigma", q.sigma},
                {"keep_prob", q.keep_prob},
                {"rescale", q.rescale}};
    return GaussianSparseCompressor{q};
  }
  throw ConfigError("compressor: unknown kind '" + kind + "'");
}

AggregatorChoice parse_aggregator(const json& doc) {
  const std::string kind =
      require(doc, "kind", "aggregator").get<std::string>();
  if (kind == "vote") return TernaryVoteAgg{};
  if (kind == "mean") return TernaryMeanAgg{get_or(doc, "debias", false)};
  if (kind == "plain_mean") return PlainMeanAgg{};
  if (kind == "multikrum") {
    return MultiKrumAgg{require(doc, "f", "multikrum").get<int>(),
                        get_or(doc, "m", -1)};
  }
  if (kind == "centered_clipping") {
    return CenteredClippingAgg{require(doc, "radius", "cc").get<double>(),
                               get_or(doc, "iters", 1)};
  }
  throw ConfigError("aggregator: unknown kind '" + kind + "'");
}

AttackChoice parse_attack(const json& doc) {
  const std::string kind = require(doc, "kind", "attack").get<std::string>();
  if (kind == "none") return NoAttack{};
  if (kind == "blind") return BlindAttack{};
  if (kind == "flip_sign") return FlipSignAttack{};
  if (kind == "fall_of_empire") {
    return FallOfEmpireAttack{get_or(doc, "scale", 1.0)};
  }
  if (kind == "little_is_enough") return LittleIsEnoughAttack{};
  throw ConfigError("attack: unknown kind '" + kind + "'");
}

EtaSchedule parse_eta(const json& doc) {
  const std::string kind = require(doc, "kind", "eta").get<std::string>();
  if (kind == "auto") return AutoEta{};
  if (kind == "fixed") {
    return FixedEta{require(doc, "value", "eta").get<double>()};
  }
  if (kind == "step") {
    return StepDecayEta{require(doc, "initial", "eta").get<double>(),
                        require(doc, "factor", "eta").get<double>(),
                        require(doc, "at_round", "eta").get<long long>()};
  }
  throw ConfigError("eta: unknown kind '" + kind + "'");
}

ClipSpec parse_clip(const json& doc) {
  const std::string kind = require(doc, "kind", "clip").get<std::string>();
  if (kind == "linf") {
    return LinfClip{require(doc, "threshold", "clip").get<double>()};
  }
  if (kind == "l2") {
    return L2Clip{require(doc, "threshold", "clip").get<double>()};
  }
  throw ConfigError("clip: unknown kind '" + kind + "'");
}

json rle_to_json(const TernaryVector& v) {
  json out = json::array();
  for (const auto& [value, run] : rle_encode(v)) {
    out.push_back(json::array({value, run}));
  }
  return out;
}

}  // namespace

nlohmann::json ExperimentSpec::resolved_json() const { return *resolved_; }

ExperimentSpec parse_experiment(const json& doc) {
  ExperimentSpec spec;
  spec.name = require(doc, "name", "experiment").get<std::string>();
  spec.out_prefix = get_or<std::string>(doc, "out", spec.name);
  spec.seeds = require(doc, "seeds", "experiment")
                   .get<std::vector<std::uint64_t>>();
  if (spec.seeds.empty()) throw ConfigError("experiment: seeds must be non-empty");

  TrainConfig cfg;
  cfg.topology = parse_topology(require(doc, "topology", "experiment"));
  spec.objective =
      parse_objective(require(doc, "objective", "experiment"), cfg.topology);
  cfg.rounds = require(doc, "rounds", "experiment").get<long long>();
  cfg.batch = get_or(doc, "batch", 1);
  json resolved_compressor;
  cfg.compressor = parse_compressor(require(doc, "compressor", "experiment"),
                                    spec.objective->dim(),
                                    resolved_compressor);
  cfg.aggregator = parse_aggregator(require(doc, "aggregator", "experiment"));
  if (doc.contains("attack")) cfg.attack = parse_attack(doc.at("attack"));
  if (doc.contains("eta")) cfg.eta = parse_eta(doc.at("eta"));
  if (doc.contains("clip")) cfg.clip = parse_clip(doc.at("clip"));
  if (doc.contains("smoothness")) {
    cfg.smoothness_override = doc.at("smoothness").get<double>();
  }
  if (doc.contains("initial_weights")) {
    cfg.initial_weights = doc.at("initial_weights").get<Gradient>();
  }
  validate_config(cfg, *spec.objective);
  spec.base_config = cfg;

  json resolved = doc;
  resolved["compressor"] = resolved_compressor;
  resolved["version"] = kToolVersion;
  spec.resolved_ = std::make_shared<json>(std::move(resolved));
  return spec;
}

ExperimentSpec parse_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_experiment(doc);
}

void write_round_csv(const std::string& path,
                     const std::vector<RoundRecord>& records) {
  std::ostringstream out;
  out << "t,grad_l1,grad_l2sq,loss,uplink_bits,downlink_bits,n_participants\n";
  for (const auto& r : records) {
    out << r.t << ',' << fmt_double(r.grad_l1) << ',' << fmt_double(r.grad_l2sq)
        << ',' << fmt_double(r.loss) << ',' << fmt_double(r.uplink_bits) << ','
        << fmt_double(r.downlink_bits) << ',' << r.participants.size() << '\n';
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  file << out.str();
}

ExperimentSummary run_experiment(const ExperimentSpec& spec,
                                 const std::string& out_prefix_override) {
  const std::string prefix =
      out_prefix_override.empty() ? spec.out_prefix : out_prefix_override;
  const auto parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);

  // Run every seed to completion first so failures leave no partial files.
  std::vector<std::future<TrainResult>> jobs;
  jobs.reserve(spec.seeds.size());
  for (std::uint64_t seed : spec.seeds) {
    TrainConfig cfg = spec.base_config;
    cfg.seed = seed;
    jobs.push_back(std::async(
        std::launch::async,
        [cfg, objective = spec.objective]() {
          return run_training(*objective, cfg);
        }));
  }
  std::vector<TrainResult> results;
  results.reserve(jobs.size());
  for (auto& job : jobs) results.push_back(job.get());

  ExperimentSummary summary;
  summary.initial_grad_l1 = results.front().rounds.front().grad_l1;
  summary.min_final_grad_l1 = std::numeric_limits<double>::infinity();
  summary.max_final_grad_l1 = -std::numeric_limits<double>::infinity();

  json per_seed = json::array();
  const json resolved = spec.resolved_json();
  std::vector<std::string> csv_paths;
  // If any write fails below, remove whatever was already written.
  const auto remove_partials = [&csv_paths]() {
    for (const auto& p : csv_paths) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  };
  try {
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
    const auto& result = results[i];
    const std::string csv_path =
        prefix + ".seed" + std::to_string(spec.seeds[i]) + ".csv";
    write_round_csv(csv_path, result.rounds);
    csv_paths.push_back(csv_path);

    // Final gradient norm: recompute from the stored weights.
    const Gradient grad = spec.objective->full_gradient(result.final_weights);
    double final_l1 = 0.0;
    for (double v : grad) final_l1 += std::abs(v);
    summary.mean_final_grad_l1 += final_l1;
    summary.min_final_grad_l1 = std::min(summary.min_final_grad_l1, final_l1);
    summary.max_final_grad_l1 = std::max(summary.max_final_grad_l1, final_l1);

    double up = 0.0, down = 0.0, up_entropy = 0.0, down_entropy = 0.0;
    for (const auto& r : result.rounds) {
      up += r.uplink_bits;
      down += r.downlink_bits;
      up_entropy += r.uplink_entropy_bits;
      down_entropy += r.downlink_entropy_bits;
    }
    json entry = {{"seed", spec.seeds[i]},
                  {"csv", csv_path},
                  {"final_grad_l1", final_l1},
                  {"uplink_bits_total", up},
                  {"downlink_bits_total", down},
                  {"uplink_entropy_bits_total", up_entropy},
                  {"downlink_entropy_bits_total", down_entropy}};
    if (result.final_vote.dim() > 0) {
      entry["final_update_rle"] = rle_to_json(result.final_vote);
    }
    per_seed.push_back(std::move(entry));
  }
  } catch (...) {
    remove_partials();
    throw;
  }
  summary.mean_final_grad_l1 /= static_cast<double>(spec.seeds.size());

  json sidecar = {{"version", kToolVersion},
                  {"name", spec.name},
                  {"config", resolved},
                  {"per_seed", per_seed},
                  {"summary",
                   {{"initial_grad_l1", summary.initial_grad_l1},
                    {"final_grad_l1",
                     {{"mean", summary.mean_final_grad_l1},
                      {"min", summary.min_final_grad_l1},
                      {"max", summary.max_final_grad_l1}}},
                    {"mean_final_over_initial",
                     summary.mean_final_grad_l1 / summary.initial_grad_l1}}}};
  if (const auto* t =
          std::get_if<TernaryCompressor>(&spec.base_config.compressor)) {
    try {
      const GdpApproximation gdp =
          gdp_approx_vector(t->params, spec.objective->dim());
      const std::vector<double> mus(
          static_cast<std::size_t>(spec.base_config.rounds), gdp.mu);
      sidecar["privacy"] = {{"mu_per_round", gdp.mu},
                            {"gamma_per_round", gdp.gamma},
                            {"clt_valid", gdp.clt_valid},
                            {"mu_total", gdp_compose(mus)}};
    } catch (const ParamViolation&) {
      // Parameters outside the privacy-curve regime run without accounting.
      sidecar["privacy"] = nullptr;
    }
  }

  summary.sidecar_path = prefix + ".sidecar.json";
  std::ofstream side(summary.sidecar_path, std::ios::binary);
  if (!side) {
    remove_partials();
    throw ConfigError("cannot write " + summary.sidecar_path);
  }
  side << sidecar.dump(2) << '\n';
  summary.csv_paths = std::move(csv_paths);
  return summary;
}

}  // namespace ternarylab

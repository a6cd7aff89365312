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

#ifndef TERNARYLAB_EXPERIMENT_HPP_
#define TERNARYLAB_EXPERIMENT_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ternarylab/objective.hpp"
#include "ternarylab/trainer.hpp"

namespace ternarylab {

inline constexpr const char* kToolVersion = "0.1.0";

// A fully resolved experiment: objective data materialized, solver inputs
// resolved to concrete compressor parameters, seeds expanded. Parsing is
// schema-checked; any problem raises ConfigError naming the field.
struct ExperimentSpec {
  std::string name;
  std::shared_ptr<const Objective> objective;
  TrainConfig base_config;  // seed filled per run
  std::vector<std::uint64_t> seeds;
  std::string out_prefix;
  nlohmann::json resolved_json() const;  // resolved configuration + version

 private:
  friend ExperimentSpec parse_experiment(const nlohmann::json& doc);
  std::shared_ptr<nlohmann::json> resolved_;
};

ExperimentSpec parse_experiment(const nlohmann::json& doc);
ExperimentSpec parse_experiment_file(const std::string& path);

// Result summary across seeds.
struct ExperimentSummary {
  double initial_grad_l1 = 0.0;
  double mean_final_grad_l1 = 0.0;
  double min_final_grad_l1 = 0.0;
  double max_final_grad_l1 = 0.0;
  std::vector<std::string> csv_paths;
  std::string sidecar_path;
};

// Runs every seed (in parallel), writes one CSV per seed plus a JSON sidecar
// holding the resolved configuration, tool version, per-round and composed
// privacy levels, bit totals, and the summary. Reruns of the same document
// produce byte-identical files. `out_prefix_override`, when non-empty,
// replaces the experiment's own output prefix.
ExperimentSummary run_experiment(const ExperimentSpec& spec,
                                 const std::string& out_prefix_override = "");

// Fixed CSV schema: t,grad_l1,grad_l2sq,loss,uplink_bits,downlink_bits,
// n_participants. Floats are printed with round-trip precision.
void write_round_csv(const std::string& path,
                     const std::vector<RoundRecord>& records);

}  // namespace ternarylab

#endif  // TERNARYLAB_EXPERIMENT_HPP_

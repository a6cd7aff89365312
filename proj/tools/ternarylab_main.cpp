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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ternarylab/bounds.hpp"
#include "ternarylab/errors.hpp"
#include "ternarylab/experiment.hpp"
#include "ternarylab/privacy.hpp"
#include "ternarylab/vote_oracle.hpp"

namespace {

using nlohmann::json;
using namespace ternarylab;

std::vector<double> split_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw ConfigError("expected a comma-separated number list");
  return out;
}

void print_json(json body) {
  body["version"] = kToolVersion;
  std::cout << body.dump(2) << '\n';
}

void write_curve_csv(const TradeoffCurve& curve, int samples,
                     const std::string& out_path) {
  std::ostringstream text;
  text << "alpha,beta\n";
  if (samples > 0) {
    for (int i = 0; i <= samples; ++i) {
      const double alpha = static_cast<double>(i) / samples;
      text << alpha << ',' << curve.value(alpha) << '\n';
    }
  } else {
    for (const auto& [alpha, beta] : curve.breakpoints()) {
      text << alpha << ',' << beta << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + out_path);
    file << text.str();
  }
}

struct CompressorFlags {
  double magnitude = 0.0;  // A
  double scale = 0.0;      // B
  double clip = 0.0;       // c
  int batch = 1;           // b

  CompressorParams params() const { return {magnitude, scale, clip, batch}; }
  void attach(CLI::App* cmd, bool with_batch = true) {
    cmd->add_option("--A", magnitude, "magnitude parameter A")->required();
    cmd->add_option("--B", scale, "scale parameter B")->required();
    cmd->add_option("--c", clip, "clipping threshold c")->required();
    if (with_batch) cmd->add_option("--b", batch, "mini-batch size b");
  }
};

int run(int argc, char** argv) {
  CLI::App app{"ternarylab: private, compressed, and byzantine-resilient "
               "distributed SGD with ternary messages and majority votes"};
  app.require_subcommand(1);

  // ---- privacy ----
  auto* privacy = app.add_subcommand("privacy", "tradeoff curves and solver");
  privacy->require_subcommand(1);

  auto* solve = privacy->add_subcommand("solve", "find (A, B) for a target mu");
  double target_mu = 1.0, ratio = 0.5, solve_clip = 1.0;
  int solve_batch = 1, solve_dim = 1;
  solve->add_option("--mu", target_mu, "target per-round mu")->required();
  solve->add_option("--ratio", ratio, "sparsity ratio A/B")->required();
  solve->add_option("--c", solve_clip, "clipping threshold c")->required();
  solve->add_option("--b", solve_batch, "mini-batch size b");
  solve->add_option("--d", solve_dim, "dimension d")->required();
  solve->callback([&] {
    const CompressorParams p =
        solve_params(target_mu, ratio, solve_clip, solve_batch, solve_dim);
    const GdpApproximation gdp = gdp_approx_vector(p, solve_dim);
    print_json({{"inputs",
                 {{"mu", target_mu}, {"ratio", ratio}, {"c", solve_clip},
                  {"b", solve_batch}, {"d", solve_dim}}},
                {"A", p.magnitude},
                {"B", p.scale},
                {"c", p.clip},
                {"b", p.batch},
                {"d", solve_dim},
                {"mu", gdp.mu},
                {"gamma", gdp.gamma},
                {"clt_valid", gdp.clt_valid}});
  });

  auto* curve = privacy->add_subcommand("curve", "tradeoff curve as CSV");
  CompressorFlags curve_flags;
  curve_flags.attach(curve);
  int curve_samples = 0;
  std::string curve_out;
  curve->add_option("--samples", curve_samples,
                    "sample the curve on a uniform grid instead of "
                    "printing breakpoints");
  curve->add_option("--out", curve_out, "write CSV here (default: stdout)");
  curve->callback([&] {
    write_curve_csv(curve_ternary_minibatch(curve_flags.params()),
                    curve_samples, curve_out);
  });

  auto* compose = privacy->add_subcommand("compose", "compose mu values");
  std::vector<double> mus;
  compose->add_option("mu", mus, "per-round mu values")->required();
  compose->callback([&] {
    print_json({{"inputs", {{"mu", mus}}}, {"mu_total", gdp_compose(mus)}});
  });

  auto* delta = privacy->add_subcommand(
      "delta", "smallest delta at a given epsilon for the mini-batch curve");
  CompressorFlags delta_flags;
  delta_flags.attach(delta);
  double epsilon = 0.0;
  delta->add_option("--epsilon", epsilon, "epsilon")->required();
  delta->callback([&] {
    const auto c = curve_ternary_minibatch(delta_flags.params());
    print_json({{"inputs",
                 {{"A", delta_flags.magnitude}, {"B", delta_flags.scale},
                  {"c", delta_flags.clip}, {"b", delta_flags.batch}}},
                {"epsilon", epsilon},
                {"delta", curve_to_epsilon_delta(c, epsilon)}});
  });

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "run a training experiment");
  std::string spec_path, out_override;
  simulate->add_option("--config", spec_path, "experiment JSON file")
      ->required();
  simulate->add_option("--out", out_override, "output path prefix override");
  simulate->callback([&] {
    const ExperimentSpec spec = parse_experiment_file(spec_path);
    const ExperimentSummary summary = run_experiment(spec, out_override);
    print_json({{"name", spec.name},
                {"csv", summary.csv_paths},
                {"sidecar", summary.sidecar_path},
                {"initial_grad_l1", summary.initial_grad_l1},
                {"final_grad_l1",
                 {{"mean", summary.mean_final_grad_l1},
                  {"min", summary.min_final_grad_l1},
                  {"max", summary.max_final_grad_l1}}},
                {"mean_final_over_initial",
                 summary.mean_final_grad_l1 / summary.initial_grad_l1}});
  });

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "exact probability checks");
  oracle->require_subcommand(1);

  auto* vote_dist = oracle->add_subcommand(
      "vote-dist", "exact vote-sign distribution for fixed inputs");
  std::string dist_inputs;
  double dist_a = 0.0, dist_b = 0.0;
  vote_dist->add_option("--u", dist_inputs, "comma-separated worker inputs")
      ->required();
  vote_dist->add_option("--A", dist_a, "magnitude A")->required();
  vote_dist->add_option("--B", dist_b, "scale B")->required();
  vote_dist->callback([&] {
    const auto inputs = split_doubles(dist_inputs);
    const VoteDistribution dist =
        vote_distribution_exact(inputs, {dist_a, dist_b, dist_a, 1});
    print_json({{"inputs", {{"u", inputs}, {"A", dist_a}, {"B", dist_b}}},
                {"p_plus", dist.plus},
                {"p_zero", dist.zero},
                {"p_minus", dist.minus}});
  });

  auto* vote_bound = oracle->add_subcommand(
      "vote-bound", "majority-vote wrong-sign probability bound");
  std::string bound_inputs;
  CompressorFlags bound_flags;
  vote_bound->add_option("--u", bound_inputs, "comma-separated worker inputs")
      ->required();
  bound_flags.attach(vote_bound, /*with_batch=*/false);
  vote_bound->callback([&] {
    const auto inputs = split_doubles(bound_inputs);
    print_json({{"inputs",
                 {{"u", inputs}, {"A", bound_flags.magnitude},
                  {"B", bound_flags.scale}, {"c", bound_flags.clip}}},
                {"bound", vote_error_bound(inputs, bound_flags.params())}});
  });

  auto* gain = oracle->add_subcommand("gain", "majority-vote signal gain");
  double gain_a = 0.0, gain_b = 0.0;
  int gain_workers = 1;
  gain->add_option("--A", gain_a, "magnitude A")->required();
  gain->add_option("--B", gain_b, "scale B")->required();
  gain->add_option("--M", gain_workers, "worker count M")->required();
  gain->callback([&] {
    print_json({{"inputs", {{"A", gain_a}, {"B", gain_b}, {"M", gain_workers}}},
                {"gain",
                 vote_gain({gain_a, gain_b, gain_a, 1}, gain_workers)}});
  });

  auto* pb_tail = oracle->add_subcommand(
      "pb-tail", "exact poisson-binomial upper tail P(S >= k)");
  std::string tail_ps;
  int tail_k = 0;
  pb_tail->add_option("--ps", tail_ps, "comma-separated probabilities")
      ->required();
  pb_tail->add_option("--k", tail_k, "threshold k")->required();
  pb_tail->callback([&] {
    const auto ps = split_doubles(tail_ps);
    print_json({{"inputs", {{"ps", ps}, {"k", tail_k}}},
                {"tail", poisson_binomial_tail(ps, tail_k)}});
  });

  auto* bounds = oracle->add_subcommand(
      "bounds", "convergence-bound right-hand sides");
  std::string variant = "vote", sigma_csv;
  CompressorFlags bounds_flags;
  BoundInputs inputs;
  double sigma_uniform = 0.0;
  bounds->add_option("--variant", variant,
                     "mean | vote | byzantine | highprivacy");
  bounds_flags.attach(bounds);
  bounds->add_option("--L", inputs.smoothness, "smoothness L");
  bounds->add_option("--gap", inputs.initial_gap, "initial optimality gap");
  bounds->add_option("--Q", inputs.coord_bound, "gradient coordinate bound");
  bounds->add_option("--d", inputs.dim, "dimension d")->required();
  bounds->add_option("--M", inputs.honest, "honest workers")->required();
  bounds->add_option("--K", inputs.byzantine, "byzantine workers");
  bounds->add_option("--T", inputs.rounds, "rounds")->required();
  bounds->add_option("--eta", inputs.eta, "step size (mean variant)");
  bounds->add_option("--sigma", sigma_csv, "per-coordinate sigma list");
  bounds->add_option("--sigma-uniform", sigma_uniform,
                     "uniform sigma across all d coordinates");
  bounds->callback([&] {
    inputs.params = bounds_flags.params();
    if (!sigma_csv.empty()) {
      inputs.sigma = split_doubles(sigma_csv);
    } else {
      inputs.sigma.assign(inputs.dim, sigma_uniform);
    }
    json body = {{"variant", variant},
                 {"inputs",
                  {{"A", inputs.params.magnitude},
                   {"B", inputs.params.scale},
                   {"c", inputs.params.clip},
                   {"b", inputs.params.batch},
                   {"L", inputs.smoothness},
                   {"gap", inputs.initial_gap},
                   {"Q", inputs.coord_bound},
                   {"d", inputs.dim},
                   {"M", inputs.honest},
                   {"K", inputs.byzantine},
                   {"T", inputs.rounds},
                   {"eta", inputs.eta},
                   {"sigma_l1", inputs.sigma_l1()}}}};
    if (variant == "mean") {
      body["rhs"] = bound_ternary_mean(inputs);
    } else if (variant == "vote") {
      body["rhs"] = bound_ternary_vote(inputs);
    } else if (variant == "byzantine") {
      body["rhs"] = bound_byzantine(inputs);
    } else if (variant == "highprivacy") {
      const HighPrivacyBound hp = bound_vote_highprivacy(inputs);
      body["rhs"] = hp.leading;
      body["residual_heuristic"] = hp.residual_heuristic;
    } else {
      throw ConfigError("unknown bounds variant: " + variant);
    }
    print_json(std::move(body));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad flags are a user error
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ternarylab::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}

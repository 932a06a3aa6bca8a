#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aggmdp/adp.hpp"
#include "aggmdp/counterexamples.hpp"
#include "aggmdp/policy_gradient.hpp"
#include "aggmdp/trace.hpp"

namespace aggmdp {

struct AlgoConfig {
  std::string name;  // api | api-adaptive | soft-api | pg | fw
  double alpha = 1.0;
  long iters = 100;
  TieBreak tiebreak = TieBreak::smallest_index();
  long record_every = 1;  // pg only
};

struct InstanceConfig {
  enum class Kind { kExample1, kExample2, kFiles };
  Kind kind = Kind::kExample1;
  ExampleSpec spec;           // for the example kinds
  std::string mdp_path;       // for kFiles
  std::string agg_path;
};

struct ExperimentConfig {
  InstanceConfig instance;
  std::vector<AlgoConfig> algorithms;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string prefix = "run";
  std::string preset;  // "fig1" / "fig2" / empty
  bool emit_plots = true;
  bool emit_instance_files = false;  // write <prefix>_mdp.json / <prefix>_agg.json
  bool dump_policies = false;        // write per-iteration policy tables as JSON
  long epsilon_det_budget = 64;
  long epsilon_sample_budget = 64;
};

/// Presets for the two counterexample figures. Both pin the instance
/// parameters from the write-ups (n, gamma, eps_phi, c, rho); iteration
/// counts and the PG stepsize are documented project defaults.
ExperimentConfig fig1_config();
ExperimentConfig fig2_config();

struct AlgoSummary {
  std::string name;
  double terminal_j = 0.0;
  double terminal_opt_gap = 0.0;
  double terminal_stat_gap = 0.0;
  std::optional<CycleInfo> cycle;
  std::vector<std::string> warnings;
};

struct ExperimentResult {
  std::vector<RunTrace> traces;
  std::vector<AlgoSummary> algos;
  double j_opt = 0.0;
  double gamma = 0.0;
  EpsilonPhiEstimate eps_phi_estimate;
  double eps_phi_construction = 0.0;  // 0 when the instance is file-based
  double two_eps_phi_line = 0.0;
  double regret_floor_line = 0.0;     // gamma eps/(4(1-gamma)) reference
};

/// Builds the instance, runs every configured algorithm, and assembles the
/// summary. Deterministic given the seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes <prefix>_<algo>.csv per trace, <prefix>_summary.json, and (when
/// emit_plots) <prefix>.svg with the optimality-gap curves and the 2 eps_phi
/// and regret-floor reference lines. Returns the written paths.
std::vector<std::string> emit_report(const ExperimentConfig& cfg, const ExperimentResult& result);

/// $AGGMDP_OUT_DIR when set, else "./out".
std::string default_out_dir();

}  // namespace aggmdp

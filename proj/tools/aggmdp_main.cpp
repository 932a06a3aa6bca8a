#include <cstdio>
#include <exception>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "aggmdp/experiment.hpp"
#include "aggmdp/verify.hpp"
#include "aggmdp/version.hpp"

namespace {

using namespace aggmdp;

TieBreak parse_tiebreak(const std::string& text) {
  if (text == "smallest") return TieBreak::smallest_index(defaults::kTieTol);
  if (text == "largest") return TieBreak::largest_index(defaults::kTieTol);
  if (text.rfind("prefer:", 0) == 0)
    return TieBreak::prefer_action(std::stoi(text.substr(7)), defaults::kTieTol);
  throw CLI::ValidationError("tiebreak", "expected smallest, largest or prefer:<action>");
}

void print_summary(const ExperimentConfig& cfg, const ExperimentResult& result) {
  std::printf("instance: J(pi*) = %.12g, eps_phi estimate = %.12g%s, 2*eps_phi = %.6g, "
              "regret floor = %.6g\n",
              result.j_opt, result.eps_phi_estimate.value,
              result.eps_phi_estimate.deterministic_exhaustive ? " (exhaustive)" : "",
              result.two_eps_phi_line, result.regret_floor_line);
  for (const AlgoSummary& a : result.algos) {
    std::printf("  %-12s terminal J = %-14.8g opt gap = %-12.6g stat gap = %-12.6g",
                a.name.c_str(), a.terminal_j, a.terminal_opt_gap, a.terminal_stat_gap);
    if (a.cycle)
      std::printf(" cycle: period %ld from t=%ld", a.cycle->period, a.cycle->start);
    std::printf("\n");
    for (const std::string& w : a.warnings) std::printf("    warning: %s\n", w.c_str());
  }
  for (const std::string& path : emit_report(cfg, result))
    std::printf("  wrote %s\n", path.c_str());
}

int run_preset(ExperimentConfig cfg, const std::string& out_dir, bool no_plots,
               bool no_instance_files, bool dump_policies, long pg_iters) {
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  cfg.emit_plots = !no_plots;
  cfg.emit_instance_files = !no_instance_files;
  cfg.dump_policies = dump_policies;
  if (pg_iters > 0)
    for (AlgoConfig& a : cfg.algorithms)
      if (a.name == "pg") a.iters = pg_iters;
  std::printf("%s preset\n", cfg.preset.c_str());
  print_summary(cfg, run_experiment(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("aggmdp — state-aggregated MDP algorithms (") + version_string() +
               ")"};
  app.require_subcommand(1);

  std::string out_dir;
  bool no_plots = false, no_instance_files = false, dump_policies = false;
  long pg_iters = 0;

  auto* fig1 = app.add_subcommand("fig1", "counterexample for fixed-weight API (m=100)");
  fig1->add_option("--out", out_dir, "output directory (default $AGGMDP_OUT_DIR or ./out)");
  fig1->add_flag("--no-plots", no_plots, "skip the SVG plot");
  fig1->add_flag("--no-instance-files", no_instance_files,
                 "skip the MDP/aggregation JSON dump");
  fig1->add_flag("--dump-policies", dump_policies, "write per-iteration policy tables");
  fig1->add_option("--pg-iters", pg_iters, "override the PG iteration count");

  auto* fig2 = app.add_subcommand("fig2", "counterexample for on-policy-weight API (m=200)");
  fig2->add_option("--out", out_dir, "output directory");
  fig2->add_flag("--no-plots", no_plots, "skip the SVG plot");
  fig2->add_flag("--no-instance-files", no_instance_files,
                 "skip the MDP/aggregation JSON dump");
  fig2->add_flag("--dump-policies", dump_policies, "write per-iteration policy tables");
  fig2->add_option("--pg-iters", pg_iters, "override the PG iteration count");

  std::string mdp_path, agg_path, algo = "api", tiebreak_text = "smallest", prefix = "run";
  double alpha = 1.0;
  long iters = 100;
  std::uint64_t seed = 1;
  bool plots = false;
  auto* run = app.add_subcommand("run", "run one algorithm on an MDP/aggregation pair");
  run->add_option("--mdp", mdp_path, "MDP JSON file")->required();
  run->add_option("--agg", agg_path, "aggregation JSON file")->required();
  run->add_option("--algo", algo, "api | api-adaptive | soft-api | pg | fw")->required();
  run->add_option("--alpha", alpha, "stepsize (soft-api, pg, fw)");
  run->add_option("--iters", iters, "iteration count");
  run->add_option("--tiebreak", tiebreak_text, "smallest | largest | prefer:<action>");
  run->add_option("--seed", seed, "seed for the eps_phi estimate");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--prefix", prefix, "output file prefix");
  run->add_flag("--plots", plots, "emit the SVG plot");
  run->add_flag("--dump-policies", dump_policies, "write per-iteration policy tables");

  std::string suite = "all";
  auto* check = app.add_subcommand("check", "run the verification battery");
  check->add_option("--suite", suite, "grad | proj | unbiased | equiv | bounds | all");
  check->add_option("--seed", seed, "battery seed");

  long det_budget = 64, sample_budget = 256;
  auto* epsilon = app.add_subcommand("epsilon", "estimate the inherent aggregation error");
  epsilon->add_option("--mdp", mdp_path, "MDP JSON file")->required();
  epsilon->add_option("--agg", agg_path, "aggregation JSON file")->required();
  epsilon->add_option("--det-budget", det_budget, "deterministic policies to enumerate");
  epsilon->add_option("--samples", sample_budget, "randomized policies to sample");
  epsilon->add_option("--seed", seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig1->parsed())
      return run_preset(fig1_config(), out_dir, no_plots, no_instance_files, dump_policies,
                        pg_iters);
    if (fig2->parsed())
      return run_preset(fig2_config(), out_dir, no_plots, no_instance_files, dump_policies,
                        pg_iters);

    if (run->parsed()) {
      ExperimentConfig cfg;
      cfg.instance.kind = InstanceConfig::Kind::kFiles;
      cfg.instance.mdp_path = mdp_path;
      cfg.instance.agg_path = agg_path;
      AlgoConfig a;
      a.name = algo;
      a.alpha = alpha;
      a.iters = iters;
      a.tiebreak = parse_tiebreak(tiebreak_text);
      cfg.algorithms = {a};
      cfg.seed = seed;
      cfg.out_dir = out_dir;
      cfg.prefix = prefix;
      cfg.emit_plots = plots;
      cfg.dump_policies = dump_policies;
      print_summary(cfg, run_experiment(cfg));
      return 0;
    }

    if (check->parsed()) {
      const CheckReport report = run_suite(suite, seed);
      int failures = 0;
      for (const CheckResult& r : report.results) {
        std::printf("%-38s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        if (!r.pass) ++failures;
      }
      std::printf("%zu checks, %d failure(s)\n", report.results.size(), failures);
      return failures == 0 ? 0 : 1;
    }

    if (epsilon->parsed()) {
      const Mdp mdp = load_mdp_json(mdp_path);
      const Aggregation agg = load_aggregation_json(agg_path);
      std::mt19937_64 rng(seed);
      const EpsilonPhiEstimate est =
          estimate_epsilon_phi(mdp, agg, det_budget, sample_budget, rng);
      std::printf("eps_phi >= %.12g  (deterministic enumeration %s, %lld policies)\n",
                  est.value, est.deterministic_exhaustive ? "exhaustive" : "truncated",
                  est.policies_evaluated);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

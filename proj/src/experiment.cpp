#include "aggmdp/experiment.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "aggmdp/version.hpp"
#include "svg_plot.hpp"

namespace aggmdp {

namespace {

struct Instance {
  Mdp mdp;
  Aggregation agg;
  TabularPolicy initial_policy;
  double eps_phi_construction = 0.0;
};

Instance build_instance(const InstanceConfig& cfg) {
  Instance inst;
  switch (cfg.kind) {
    case InstanceConfig::Kind::kExample1: {
      ExampleInstance ex = build_example1(cfg.spec);
      inst = {std::move(ex.mdp), std::move(ex.agg), std::move(ex.initial_policy),
              cfg.spec.eps_phi};
      break;
    }
    case InstanceConfig::Kind::kExample2: {
      ExampleInstance ex = build_example2(cfg.spec);
      inst = {std::move(ex.mdp), std::move(ex.agg), std::move(ex.initial_policy),
              cfg.spec.eps_phi};
      break;
    }
    case InstanceConfig::Kind::kFiles: {
      inst.mdp = load_mdp_json(cfg.mdp_path);
      inst.agg = load_aggregation_json(cfg.agg_path);
      if (inst.agg.num_states() != inst.mdp.num_states)
        throw std::invalid_argument("instance: aggregation covers " +
                                    std::to_string(inst.agg.num_states()) +
                                    " states but the MDP has " +
                                    std::to_string(inst.mdp.num_states));
      inst.initial_policy =
          lift_policy(inst.agg, AggregatedPolicy::uniform(inst.agg.num_segments,
                                                          inst.mdp.num_actions));
      inst.eps_phi_construction = 0.0;
      break;
    }
  }
  return inst;
}

RunTrace run_algorithm(const Instance& inst, const AlgoConfig& algo) {
  if (algo.name == "api" || algo.name == "api-adaptive" || algo.name == "soft-api") {
    ApiConfig cfg;
    if (algo.name == "api") {
      cfg.weight_mode = WeightMode::kFixed;
      cfg.fixed_weights =
          Eigen::VectorXd::Constant(inst.mdp.num_states, 1.0 / inst.mdp.num_states);
      cfg.step_alpha = 1.0;
    } else {
      cfg.weight_mode = WeightMode::kOnPolicy;
      cfg.step_alpha = algo.name == "soft-api" ? algo.alpha : 1.0;
    }
    cfg.tiebreak = algo.tiebreak;
    cfg.max_iters = algo.iters;
    return api_iterate(inst.mdp, inst.agg, inst.initial_policy, cfg);
  }
  if (algo.name == "pg") {
    PgConfig cfg;
    cfg.step_alpha = algo.alpha;
    cfg.max_iters = algo.iters;
    cfg.record_every = algo.record_every;
    return pg_projected_run(inst.mdp, inst.agg,
                            restrict_policy(inst.agg, inst.initial_policy), cfg);
  }
  if (algo.name == "fw")
    return fw_run(inst.mdp, inst.agg, inst.initial_policy, algo.alpha, algo.tiebreak,
                  algo.iters);
  throw std::invalid_argument("unknown algorithm '" + algo.name +
                              "' (expected api, api-adaptive, soft-api, pg or fw)");
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  switch (cfg.instance.kind) {
    case InstanceConfig::Kind::kExample1: j["instance"] = "example1"; break;
    case InstanceConfig::Kind::kExample2: j["instance"] = "example2"; break;
    case InstanceConfig::Kind::kFiles:
      j["instance"] = "files";
      j["mdp_path"] = cfg.instance.mdp_path;
      j["agg_path"] = cfg.instance.agg_path;
      break;
  }
  if (cfg.instance.kind != InstanceConfig::Kind::kFiles) {
    const ExampleSpec& spec = cfg.instance.spec;
    j["m"] = spec.m;
    j["gamma"] = spec.gamma;
    j["eps_phi"] = spec.eps_phi;
    j["c"] = spec.c;
    j["tiebreak"] = spec.tiebreak.describe();
  }
  j["seed"] = cfg.seed;
  auto algos = nlohmann::json::array();
  for (const AlgoConfig& a : cfg.algorithms)
    algos.push_back({{"name", a.name},
                     {"alpha", a.alpha},
                     {"iters", a.iters},
                     {"tiebreak", a.tiebreak.describe()}});
  j["algorithms"] = std::move(algos);
  return j;
}

}  // namespace

ExperimentConfig fig1_config() {
  ExperimentConfig cfg;
  cfg.instance.kind = InstanceConfig::Kind::kExample1;
  cfg.instance.spec = ExampleSpec::fig1();
  cfg.prefix = "fig1";
  cfg.preset = "fig1";
  cfg.emit_instance_files = true;
  AlgoConfig api{"api", 1.0, 100, cfg.instance.spec.tiebreak, 1};
  // Stepsize 0.05 is a project default: it converges on this instance within
  // the plotted horizon, while the conservative 1/L (about 8e-7 here) moves
  // the iterates too slowly to plot.
  AlgoConfig pg{"pg", 0.05, 100, cfg.instance.spec.tiebreak, 1};
  cfg.algorithms = {api, pg};
  return cfg;
}

ExperimentConfig fig2_config() {
  ExperimentConfig cfg;
  cfg.instance.kind = InstanceConfig::Kind::kExample2;
  cfg.instance.spec = ExampleSpec::fig2();
  cfg.prefix = "fig2";
  cfg.preset = "fig2";
  cfg.emit_instance_files = true;
  AlgoConfig api{"api-adaptive", 1.0, 100, cfg.instance.spec.tiebreak, 1};
  // 1500 iterations bring the projected-gradient gap under 2 eps_phi on this
  // larger instance; 100 is not enough at this stepsize.
  AlgoConfig pg{"pg", 0.05, 1500, cfg.instance.spec.tiebreak, 10};
  cfg.algorithms = {api, pg};
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty())
    throw std::invalid_argument("run_experiment: no algorithms configured");
  const Instance inst = build_instance(cfg.instance);

  ExperimentResult result;
  result.gamma = inst.mdp.gamma;
  result.eps_phi_construction = inst.eps_phi_construction;

  for (const AlgoConfig& algo : cfg.algorithms) {
    RunTrace trace = run_algorithm(inst, algo);
    AlgoSummary summary;
    summary.name = algo.name;
    const TraceRecord& last = trace.records.back();
    summary.terminal_j = last.j;
    summary.terminal_opt_gap = last.opt_gap;
    summary.terminal_stat_gap = last.stat_gap;
    summary.cycle = trace.cycle;
    summary.warnings = trace.warnings;
    result.j_opt = trace.j_opt;
    result.algos.push_back(std::move(summary));
    result.traces.push_back(std::move(trace));
  }

  std::mt19937_64 rng(cfg.seed);
  result.eps_phi_estimate = estimate_epsilon_phi(inst.mdp, inst.agg, cfg.epsilon_det_budget,
                                                 cfg.epsilon_sample_budget, rng);
  const double eps = result.eps_phi_construction > 0.0 ? result.eps_phi_construction
                                                       : result.eps_phi_estimate.value;
  result.two_eps_phi_line = 2.0 * eps;
  result.regret_floor_line = regret_lower_bound(inst.mdp.gamma, eps);
  return result;
}

std::vector<std::string> emit_report(const ExperimentConfig& cfg,
                                     const ExperimentResult& result) {
  if (result.traces.empty()) throw std::invalid_argument("emit_report: no traces to write");
  namespace fs = std::filesystem;
  const fs::path dir = cfg.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("emit_report: cannot create " + dir.string() + ": " +
                                   ec.message());

  std::vector<std::string> written;
  for (const RunTrace& trace : result.traces) {
    const fs::path p = dir / (cfg.prefix + "_" + trace.algo + ".csv");
    write_trace_csv(trace, p.string());
    written.push_back(p.string());
  }

  if (cfg.emit_instance_files && cfg.instance.kind != InstanceConfig::Kind::kFiles) {
    const Instance inst = build_instance(cfg.instance);
    const fs::path mdp_path = dir / (cfg.prefix + "_mdp.json");
    const fs::path agg_path = dir / (cfg.prefix + "_agg.json");
    save_mdp_json(inst.mdp, mdp_path.string());
    save_aggregation_json(inst.agg, agg_path.string());
    written.push_back(mdp_path.string());
    written.push_back(agg_path.string());
  }

  if (cfg.dump_policies) {
    for (const RunTrace& trace : result.traces) {
      nlohmann::json jp;
      jp["algo"] = trace.algo;
      auto iters = nlohmann::json::array();
      auto tables = nlohmann::json::array();
      for (const TraceRecord& rec : trace.records) {
        iters.push_back(rec.iter);
        auto table = nlohmann::json::array();
        for (int i = 0; i < rec.theta.rows(); ++i) {
          auto row = nlohmann::json::array();
          for (int a = 0; a < rec.theta.cols(); ++a) row.push_back(rec.theta(i, a));
          table.push_back(std::move(row));
        }
        tables.push_back(std::move(table));
      }
      jp["iters"] = std::move(iters);
      jp["theta"] = std::move(tables);
      const fs::path p = dir / (cfg.prefix + "_" + trace.algo + "_policies.json");
      std::ofstream out(p);
      if (!out) throw std::runtime_error("emit_report: cannot open " + p.string());
      out << jp.dump() << '\n';
      written.push_back(p.string());
    }
  }

  nlohmann::json j;
  j["preset"] = cfg.preset;
  j["version"] = version_string();
  j["config"] = config_json(cfg);
  j["j_opt"] = result.j_opt;
  j["epsilon_phi"] = {{"estimate", result.eps_phi_estimate.value},
                      {"deterministic_exhaustive", result.eps_phi_estimate.deterministic_exhaustive},
                      {"policies_evaluated", result.eps_phi_estimate.policies_evaluated},
                      {"construction", result.eps_phi_construction}};
  j["bounds"] = {{"two_eps_phi", result.two_eps_phi_line},
                 {"regret_floor", result.regret_floor_line}};
  auto algos = nlohmann::json::array();
  for (const AlgoSummary& a : result.algos) {
    nlohmann::json ja = {{"name", a.name},
                         {"terminal_j", a.terminal_j},
                         {"terminal_opt_gap", a.terminal_opt_gap},
                         {"terminal_stationarity_gap", a.terminal_stat_gap},
                         {"warnings", a.warnings}};
    if (a.cycle) ja["cycle"] = {{"start", a.cycle->start}, {"period", a.cycle->period}};
    algos.push_back(std::move(ja));
  }
  j["algorithms"] = std::move(algos);
  const fs::path summary_path = dir / (cfg.prefix + "_summary.json");
  {
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + summary_path.string());
    out << j.dump(2) << '\n';
  }
  written.push_back(summary_path.string());

  if (cfg.emit_plots) {
    static const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
    std::vector<detail::PlotSeries> series;
    for (std::size_t k = 0; k < result.traces.size(); ++k) {
      detail::PlotSeries s;
      s.label = result.traces[k].algo;
      s.color = kColors[k % 5];
      for (const TraceRecord& rec : result.traces[k].records) {
        s.x.push_back(static_cast<double>(rec.iter));
        s.y.push_back(rec.opt_gap);
      }
      series.push_back(std::move(s));
    }
    std::vector<detail::ReferenceLine> refs = {
        {"2 eps_phi", "#1f77b4", result.two_eps_phi_line},
        {"regret floor", "#7f7f7f", result.regret_floor_line}};
    const fs::path svg = dir / (cfg.prefix + ".svg");
    detail::write_svg_plot(svg.string(), cfg.prefix + ": optimality gap vs iteration",
                           "iteration", "J(pi*) - J(pi_t)", series, refs);
    written.push_back(svg.string());
  }
  return written;
}

std::string default_out_dir() {
  const char* env = std::getenv("AGGMDP_OUT_DIR");
  return env && *env ? env : "out";
}

}  // namespace aggmdp

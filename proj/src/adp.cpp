#include "aggmdp/adp.hpp"

#include <cmath>

#include "eval_core.hpp"

namespace aggmdp {

namespace {

void check_api_config(const Mdp& mdp, const ApiConfig& cfg) {
  if (!(cfg.step_alpha > 0.0 && cfg.step_alpha <= 1.0))
    throw std::invalid_argument("api_iterate: step_alpha must be in (0,1]");
  if (cfg.max_iters < 0) throw std::invalid_argument("api_iterate: max_iters must be >= 0");
  if (cfg.weight_mode == WeightMode::kFixed) {
    if (cfg.fixed_weights.size() != mdp.num_states)
      throw ShapeError("api_iterate: fixed weights must have one entry per state");
    double sum = 0.0;
    for (int s = 0; s < cfg.fixed_weights.size(); ++s) {
      if (!(cfg.fixed_weights(s) >= 0.0))
        throw std::invalid_argument("api_iterate: fixed weights must be nonnegative");
      sum += cfg.fixed_weights(s);
    }
    if (std::abs(sum - 1.0) > defaults::kStochasticTol)
      throw std::invalid_argument("api_iterate: fixed weights must sum to 1");
  }
}

}  // namespace

RunTrace api_iterate(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi1,
                     const ApiConfig& cfg) {
  check_api_config(mdp, cfg);
  AggregatedPolicy theta = restrict_policy(agg, pi1);  // throws if pi1 not in Pi_phi

  RunTrace trace;
  trace.algo = cfg.weight_mode == WeightMode::kFixed
                   ? "api"
                   : (cfg.step_alpha == 1.0 ? "api-adaptive" : "soft-api");
  const OptimalSolution opt = solve_optimal(mdp, cfg.tiebreak);
  trace.j_opt = (1.0 - mdp.gamma) * mdp.rho.dot(opt.value);

  detail::PolicyEval eval;
  Eigen::MatrixXd gbar;
  for (long t = 0; t <= cfg.max_iters; ++t) {
    const TabularPolicy pi = lift_policy(agg, theta);
    eval.compute(mdp, pi.probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);

    TraceRecord rec;
    rec.iter = t;
    rec.theta = theta.theta;
    rec.j = eval.j(mdp);
    rec.opt_gap = trace.j_opt - rec.j;
    detail::segment_weighted_sums(agg, eval.q, eval.eta, gbar);
    double gap = 0.0;
    for (int i = 0; i < agg.num_segments; ++i)
      gap += gbar.row(i).maxCoeff() - gbar.row(i).dot(theta.theta.row(i));
    rec.stat_gap = gap;

    if (t == cfg.max_iters) {
      trace.records.push_back(std::move(rec));
      break;
    }

    const Eigen::VectorXd& w =
        cfg.weight_mode == WeightMode::kFixed ? cfg.fixed_weights : eval.eta;
    AggregatedQFit fit = fit_aggregated_q(agg, eval.q, w);
    rec.qhat = fit.qhat;
    rec.zero_mass_segments = fit.zero_mass_segments;
    trace.records.push_back(std::move(rec));

    const AggregatedPolicy greedy = greedy_policy(fit.qhat, cfg.tiebreak);
    if (cfg.step_alpha == 1.0) {
      theta = greedy;
    } else {
      theta.theta = cfg.step_alpha * greedy.theta + (1.0 - cfg.step_alpha) * theta.theta;
    }
  }

  trace.cycle = detect_cycle(trace, cfg.cycle_tol);
  return trace;
}

std::optional<CycleInfo> detect_cycle(const RunTrace& trace, double tol) {
  const long n = static_cast<long>(trace.records.size());
  if (n < 2) return std::nullopt;
  const long last = n - 1;
  for (long p = 1; p <= last; ++p) {
    long start = last - p + 1;
    for (long t = last - p; t >= 0; --t) {
      const double diff =
          (trace.records[t + p].theta - trace.records[t].theta).lpNorm<Eigen::Infinity>();
      if (diff <= tol)
        start = t;
      else
        break;
    }
    if (start <= last - p) return CycleInfo{start, p};
  }
  return std::nullopt;
}

}  // namespace aggmdp

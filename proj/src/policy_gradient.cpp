#include "aggmdp/policy_gradient.hpp"

#include <algorithm>
#include <cmath>

#include "aggmdp/adp.hpp"
#include "aggmdp/random_instances.hpp"
#include "eval_core.hpp"

namespace aggmdp {

GradientTable exact_gradient(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi) {
  detail::PolicyEval eval;
  eval.compute(mdp, pi.probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);
  GradientTable g;
  g.full = eval.eta.asDiagonal() * eval.q;
  detail::segment_weighted_sums(agg, eval.q, eval.eta, g.aggregated);
  return g;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
  const int k = static_cast<int>(y.size());
  if (k == 0) throw ShapeError("project_simplex: empty vector");
  std::vector<double> mu(y.data(), y.data() + k);
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  double cumsum = 0.0, beta = 0.0;
  for (int j = 0; j < k; ++j) {
    cumsum += mu[j];
    const double candidate = (cumsum - 1.0) / (j + 1);
    if (mu[j] - candidate > 0.0) beta = candidate;
  }
  return y.array().max(beta) - beta;  // max{y_i - beta, 0}
}

double smoothness_constant(const Mdp& mdp) {
  const double one_minus = 1.0 - mdp.gamma;
  return 2.0 * mdp.gamma * mdp.num_actions * mdp.max_abs_reward() / (one_minus * one_minus);
}

namespace {

double gap_from_gbar(const Eigen::MatrixXd& gbar, const Eigen::MatrixXd& theta) {
  double gap = 0.0;
  for (int i = 0; i < gbar.rows(); ++i)
    gap += gbar.row(i).maxCoeff() - gbar.row(i).dot(theta.row(i));
  return gap;
}

}  // namespace

RunTrace pg_projected_run(const Mdp& mdp, const Aggregation& agg,
                          const AggregatedPolicy& theta1, const PgConfig& cfg) {
  if (!(cfg.step_alpha > 0.0))
    throw std::invalid_argument("pg_projected_run: step_alpha must be positive");
  theta1.validate();
  if (theta1.theta.rows() != agg.num_segments || theta1.theta.cols() != mdp.num_actions)
    throw ShapeError("pg_projected_run: theta must be m x |A|");

  RunTrace trace;
  trace.algo = "pg";
  const double lipschitz = smoothness_constant(mdp);
  if (lipschitz > 0.0 && cfg.step_alpha > 1.0 / lipschitz)
    trace.warnings.push_back("step_alpha " + std::to_string(cfg.step_alpha) +
                             " exceeds 1/L = " + std::to_string(1.0 / lipschitz) +
                             "; the convergence guarantee does not apply");
  const OptimalSolution opt = solve_optimal(mdp);
  trace.j_opt = (1.0 - mdp.gamma) * mdp.rho.dot(opt.value);

  AggregatedPolicy theta = theta1;
  detail::PolicyEval eval;
  Eigen::MatrixXd pi_probs(agg.num_states(), mdp.num_actions);
  Eigen::MatrixXd gbar;
  double last_j = 0.0;
  bool have_last_j = false;

  const long record_every = std::max<long>(1, cfg.record_every);
  for (long t = 0; t <= cfg.max_iters; ++t) {
    for (int s = 0; s < agg.num_states(); ++s) pi_probs.row(s) = theta.theta.row(agg.phi[s]);
    eval.compute(mdp, pi_probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);
    detail::segment_weighted_sums(agg, eval.q, eval.eta, gbar);
    const double gap = gap_from_gbar(gbar, theta.theta);
    const double j = eval.j(mdp);

    if (have_last_j && j < last_j - 1e-12 && trace.warnings.size() < 16)
      trace.warnings.push_back("J decreased by " + std::to_string(last_j - j) +
                               " at iteration " + std::to_string(t));
    last_j = j;
    have_last_j = true;

    const bool stop = gap <= cfg.stationarity_tol || t == cfg.max_iters;
    if (stop || t % record_every == 0) {
      TraceRecord rec;
      rec.iter = t;
      rec.theta = theta.theta;
      rec.j = j;
      rec.opt_gap = trace.j_opt - j;
      rec.stat_gap = gap;
      trace.records.push_back(std::move(rec));
    }
    if (stop) break;

    for (int i = 0; i < agg.num_segments; ++i)
      theta.theta.row(i) =
          project_simplex(theta.theta.row(i).transpose() + cfg.step_alpha * gbar.row(i).transpose())
              .transpose();
  }
  trace.cycle = detect_cycle(trace);
  return trace;
}

FwStepResult fw_step(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi,
                     double alpha, const TieBreak& tiebreak) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("fw_step: alpha must be in (0,1]");
  if (!is_aggregated(agg, pi)) throw ShapeError("fw_step: policy is not in Pi_phi");

  detail::PolicyEval eval;
  eval.compute(mdp, pi.probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);
  // The per-segment argmax of gbar(i,.) equals the argmax of the
  // eta-weighted fit qhat(i,.) = gbar(i,.)/W_i whenever W_i > 0. Going
  // through the fit keeps the tie sets bit-identical with the soft-API
  // improvement step, which matters because the counterexample family
  // produces exact ties.
  const AggregatedQFit fit = fit_aggregated_q(agg, eval.q, eval.eta);

  FwStepResult out;
  out.linearizer = lift_policy(agg, greedy_policy(fit.qhat, tiebreak));
  if (alpha == 1.0) {
    out.next = out.linearizer;
  } else {
    out.next.probs = alpha * out.linearizer.probs + (1.0 - alpha) * pi.probs;
  }
  return out;
}

RunTrace fw_run(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi1, double alpha,
                const TieBreak& tiebreak, long iters) {
  RunTrace trace;
  trace.algo = "fw";
  const OptimalSolution opt = solve_optimal(mdp);
  trace.j_opt = (1.0 - mdp.gamma) * mdp.rho.dot(opt.value);

  TabularPolicy pi = pi1;
  detail::PolicyEval eval;
  Eigen::MatrixXd gbar;
  for (long t = 0; t <= iters; ++t) {
    AggregatedPolicy theta = restrict_policy(agg, pi);
    eval.compute(mdp, pi.probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);
    detail::segment_weighted_sums(agg, eval.q, eval.eta, gbar);

    TraceRecord rec;
    rec.iter = t;
    rec.theta = theta.theta;
    rec.j = eval.j(mdp);
    rec.opt_gap = trace.j_opt - rec.j;
    rec.stat_gap = gap_from_gbar(gbar, theta.theta);
    trace.records.push_back(std::move(rec));
    if (t == iters) break;

    const AggregatedQFit fit = fit_aggregated_q(agg, eval.q, eval.eta);
    const TabularPolicy linearizer = lift_policy(agg, greedy_policy(fit.qhat, tiebreak));
    if (alpha == 1.0) {
      pi = linearizer;
    } else {
      pi.probs = alpha * linearizer.probs + (1.0 - alpha) * pi.probs;
    }
  }
  trace.cycle = detect_cycle(trace);
  return trace;
}

double stationarity_gap(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi) {
  if (!is_aggregated(agg, pi)) throw ShapeError("stationarity_gap: policy is not in Pi_phi");
  const AggregatedPolicy theta = restrict_policy(agg, pi);
  const GradientTable g = exact_gradient(mdp, agg, pi);
  return gap_from_gbar(g.aggregated, theta.theta);
}

double check_stationary_bellman(const Mdp& mdp, const Aggregation& agg,
                                const TabularPolicy& pi) {
  if (!is_aggregated(agg, pi))
    throw ShapeError("check_stationary_bellman: policy is not in Pi_phi");
  detail::PolicyEval eval;
  eval.compute(mdp, pi.probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);
  // max over Pi_phi of E[T_pi' V(S)] decomposes per segment into
  // max_a sum_{s in seg} eta(s) Q(s,a).
  Eigen::MatrixXd gbar;
  detail::segment_weighted_sums(agg, eval.q, eval.eta, gbar);
  double best = 0.0;
  for (int i = 0; i < agg.num_segments; ++i) best += gbar.row(i).maxCoeff();
  return std::abs(best - eval.eta.dot(eval.v));
}

double compatible_approx_check(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi,
                               const TabularPolicy& pi2) {
  if (!is_aggregated(agg, pi) || !is_aggregated(agg, pi2))
    throw ShapeError("compatible_approx_check: both policies must be in Pi_phi");
  detail::PolicyEval eval;
  eval.compute(mdp, pi.probs, defaults::kSolveTol, /*want_eta=*/true, /*want_q=*/true);
  const Eigen::MatrixXd diff = pi2.probs - pi.probs;

  double lhs = 0.0;  // <grad J, pi2 - pi>
  for (int s = 0; s < mdp.num_states; ++s) lhs += eval.eta(s) * eval.q.row(s).dot(diff.row(s));

  const AggregatedQFit fit = fit_aggregated_q(agg, eval.q, eval.eta);
  double rhs = 0.0;  // <qhat, pi2 - pi>_{eta x 1}
  for (int s = 0; s < mdp.num_states; ++s)
    rhs += eval.eta(s) * fit.qhat.row(agg.phi[s]).dot(diff.row(s));
  return std::abs(lhs - rhs);
}

Eigen::MatrixXd stochastic_gradient(const Mdp& mdp, const Aggregation& agg,
                                    const AggregatedPolicy& theta, std::mt19937_64& rng) {
  theta.validate();
  if (theta.theta.rows() != agg.num_segments || theta.theta.cols() != mdp.num_actions)
    throw ShapeError("stochastic_gradient: theta must be m x |A|");
  const MdpSimulator sim(mdp);
  const int na = mdp.num_actions;

  auto policy_action = [&](int s) {
    return sample_index(theta.theta.row(agg.phi[s]).transpose(), rng);
  };

  // s0 ~ eta_pi: roll the policy to an independent Geometric(1-gamma) horizon
  long tau = geometric_failures(mdp.gamma, rng);
  int s = sim.sample_initial(rng);
  for (long t = 0; t < tau; ++t) s = sim.step(s, policy_action(s), rng).next_state;
  const int s0 = s;

  const int a0 = uniform_int(na, rng);

  // qhat: undiscounted reward sum to a second geometric horizon
  const long tau2 = geometric_failures(mdp.gamma, rng);
  MdpSimulator::Step st = sim.step(s0, a0, rng);
  double qhat = st.reward;
  s = st.next_state;
  for (long t = 0; t < tau2; ++t) {
    st = sim.step(s, policy_action(s), rng);
    qhat += st.reward;
    s = st.next_state;
  }

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(agg.num_segments, na);
  g(agg.phi[s0], a0) = na * qhat;
  return g;
}

}  // namespace aggmdp

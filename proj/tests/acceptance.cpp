// Acceptance suite: one check per shipped claim, each printing a PASS/FAIL
// line with the measured quantities and its tolerance. Run all with no
// arguments or a single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "aggmdp/adp.hpp"
#include "aggmdp/counterexamples.hpp"
#include "aggmdp/experiment.hpp"
#include "aggmdp/policy_gradient.hpp"
#include "aggmdp/random_instances.hpp"
#include "aggmdp/verify.hpp"
#include "oracles.hpp"

using namespace aggmdp;

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> lines;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "  [ok]   " : "  [FAIL] ") + what);
  }
  void note(const std::string& what) { lines.push_back("  [note] " + what); }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunTrace fig1_api_trace(const ExampleInstance& ex, long iters) {
  ApiConfig cfg;
  cfg.weight_mode = WeightMode::kFixed;
  cfg.fixed_weights = Eigen::VectorXd::Constant(ex.mdp.num_states, 1.0 / ex.mdp.num_states);
  cfg.tiebreak = TieBreak::prefer_action(kStay, defaults::kTieTol);
  cfg.max_iters = iters;
  return api_iterate(ex.mdp, ex.agg, ex.initial_policy, cfg);
}

// --------------------------------------------------------------------------
// 1. family-1 reproduction: exact period-2 cycle and the finite-m regret
//    floor, with the geometric-series closed form as the independent oracle
// --------------------------------------------------------------------------
Criterion criterion1() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const ExampleSpec spec = ExampleSpec::fig1();
  const ExampleInstance ex = build_example1(spec);
  const RunTrace trace = fig1_api_trace(ex, 30);

  bool exact = trace.records.size() == 31;
  for (std::size_t t = 0; t + 2 < trace.records.size(); ++t)
    exact = exact && (trace.records[t + 2].theta - trace.records[t].theta)
                             .lpNorm<Eigen::Infinity>() == 0.0;
  c.require(exact, "policy sequence has period 2 exactly (max-norm 0) from pi_1 on");
  c.require(trace.cycle && trace.cycle->period == 2 && trace.cycle->start == 0,
            "cycle detector reports start 0, period 2");

  const double min_gap =
      trace.j_opt - std::max(trace.records[0].j, trace.records[1].j);
  const Example1ClosedForm cf = example1_closed_form(spec);
  c.require(min_gap > cf.finite_m_floor,
            "min cycle gap " + num(min_gap) + " exceeds -(gamma/2) r(m-1,Stay) = " +
                num(cf.finite_m_floor) + " (asymptotic floor " +
                num(regret_lower_bound(spec.gamma, spec.eps_phi)) + ")");
  c.require(std::abs(min_gap - cf.min_cycle_gap) <= 1e-8,
            "solver value matches the closed form within " +
                num(std::abs(min_gap - cf.min_cycle_gap)) + " (tol 1e-8)");
  const double elapsed = seconds_since(t0);
  c.require(elapsed <= 10.0, "runtime " + num(elapsed) + " s <= 10 s");
  return c;
}

// --------------------------------------------------------------------------
// 2. PG robustness at the guaranteed stepsize alpha = 1/L: stationarity gap
//    <= 1e-8 and terminal gap <= 2 eps_phi within 60 s
// --------------------------------------------------------------------------
Criterion criterion2() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const ExampleSpec spec = ExampleSpec::fig1();
  const ExampleInstance ex = build_example1(spec);
  const double lipschitz = smoothness_constant(ex.mdp);

  PgConfig cfg;
  cfg.step_alpha = 1.0 / lipschitz;
  cfg.max_iters = 65000;  // ~0.75 ms per iteration; stays inside the 60 s budget
  cfg.record_every = 10000;
  const RunTrace trace = pg_projected_run(ex.mdp, ex.agg, ex.initial_theta, cfg);
  const TraceRecord& last = trace.records.back();
  const double elapsed = seconds_since(t0);

  c.note("alpha = 1/L = " + num(cfg.step_alpha) + " (L = " + num(lipschitz) +
         "), start = alternating pi_1, " + std::to_string(last.iter) + " iterations in " +
         num(elapsed) + " s");
  c.require(last.stat_gap <= 1e-8,
            "stationarity gap " + num(last.stat_gap) + " <= 1e-8");
  c.require(last.opt_gap <= 2.0 * spec.eps_phi,
            "terminal J(pi*) - J = " + num(last.opt_gap) + " <= 2 eps_phi = " +
                num(2.0 * spec.eps_phi));
  c.require(elapsed <= 60.0, "runtime " + num(elapsed) + " s <= 60 s");
  c.note("terminal optimality gap " + num(last.opt_gap) +
         " (expected near 0 at a stationary point)");
  if (!c.pass)
    c.note(
        "at alpha = 1/L the slow segments of this instance move by about "
        "alpha*(1-gamma)*rho*c per step, so reaching the 1e-8 gap needs on the order of "
        "3e8 iterations (hours), not 60 s; the same run at alpha = 0.05 certifies in a "
        "few thousand iterations (see criterion 8)");
  return c;
}

// --------------------------------------------------------------------------
// 3. family-2 reproduction: on-policy API cycles (pi_3 = pi_1), PG reaches
//    a gap below 2 eps_phi on the same instance
// --------------------------------------------------------------------------
Criterion criterion3() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const ExampleSpec spec = ExampleSpec::fig2();
  const ExampleInstance ex = build_example2(spec);

  ApiConfig api;
  api.weight_mode = WeightMode::kOnPolicy;
  api.tiebreak = spec.tiebreak;
  api.max_iters = 4;
  const RunTrace trace = api_iterate(ex.mdp, ex.agg, ex.initial_policy, api);
  c.require((trace.records[2].theta - trace.records[0].theta).lpNorm<Eigen::Infinity>() ==
                0.0,
            "pi_3 = pi_1 exactly under on-policy weights");
  c.require((trace.records[1].theta - trace.records[0].theta).lpNorm<Eigen::Infinity>() >
                0.0,
            "pi_2 differs from pi_1 (genuine period-2 cycle)");

  PgConfig pg;
  pg.step_alpha = 0.05;
  pg.max_iters = 1500;
  pg.record_every = 100;
  const RunTrace run = pg_projected_run(ex.mdp, ex.agg, ex.initial_theta, pg);
  c.require(run.records.back().opt_gap <= 2.0 * spec.eps_phi,
            "PG terminal gap " + num(run.records.back().opt_gap) + " <= 2 eps_phi = " +
                num(2.0 * spec.eps_phi));
  const double elapsed = seconds_since(t0);
  c.require(elapsed <= 120.0, "runtime " + num(elapsed) + " s <= 120 s");
  return c;
}

Criterion from_report(const CheckReport& report, double budget_s = 0.0,
                      double elapsed = 0.0) {
  Criterion c;
  for (const CheckResult& r : report.results) c.require(r.pass, r.name + ": " + r.detail);
  if (budget_s > 0.0)
    c.require(elapsed <= budget_s,
              "runtime " + num(elapsed) + " s <= " + num(budget_s) + " s");
  return c;
}

// 4. Frank-Wolfe PG vs soft API equivalence
Criterion criterion4() { return from_report(check_equivalence(2026)); }

// 5. gradient correctness (finite differences + compatible approximation)
Criterion criterion5() { return from_report(check_gradients(2026)); }

// 6. simplex projection vs the brute-force oracle
Criterion criterion6() { return from_report(check_projection(2026)); }

// 7. stochastic-gradient unbiasedness
Criterion criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  const CheckReport report = check_unbiasedness(2026);
  return from_report(report, 120.0, seconds_since(t0));
}

// --------------------------------------------------------------------------
// 8. stationary points satisfy the approximate Bellman equation; the API
//    cycle iterates do not
// --------------------------------------------------------------------------
Criterion criterion8() {
  Criterion c;
  const ExampleSpec spec = ExampleSpec::fig1();
  const ExampleInstance ex = build_example1(spec);

  PgConfig cfg;
  cfg.step_alpha = 0.05;  // the 1/L run of criterion 2 certifies nothing in budget
  cfg.max_iters = 20000;
  cfg.record_every = 1000;
  const RunTrace pg = pg_projected_run(ex.mdp, ex.agg, ex.initial_theta, cfg);
  const TraceRecord& last = pg.records.back();
  c.require(last.stat_gap <= 1e-8, "certification run reached stationarity gap " +
                                       num(last.stat_gap) + " at iteration " +
                                       std::to_string(last.iter));
  const double residual = check_stationary_bellman(
      ex.mdp, ex.agg, lift_policy(ex.agg, AggregatedPolicy{last.theta}));
  c.require(residual <= 1e-6,
            "certified stationary policy has Bellman residual " + num(residual) +
                " <= 1e-6");

  const RunTrace api = fig1_api_trace(ex, 4);
  for (int t = 0; t < 2; ++t) {
    const double r = check_stationary_bellman(
        ex.mdp, ex.agg, lift_policy(ex.agg, AggregatedPolicy{api.records[t].theta}));
    c.require(r > 0.01, "cycle iterate pi_" + std::to_string(t + 1) +
                            " has Bellman residual " + num(r) + " > 0.01");
  }
  return c;
}

// --------------------------------------------------------------------------
// 9. eps_phi recovery on the full-size counterexample instances
// --------------------------------------------------------------------------
Criterion criterion9() {
  Criterion c;
  const ExampleInstance e1 = build_example1(ExampleSpec::fig1());
  std::mt19937_64 r1(5);
  const double v1 = estimate_epsilon_phi(e1.mdp, e1.agg, 32, 32, r1).value;
  c.require(std::abs(v1 - 1.0) <= 1e-9,
            "family 1 (m=100): estimate " + num(v1) + " within 1e-9 of eps_phi = 1");

  const ExampleInstance e2 = build_example2(ExampleSpec::fig2());
  std::mt19937_64 r2(5);
  const double v2 = estimate_epsilon_phi(e2.mdp, e2.agg, 32, 32, r2).value;
  c.require(std::abs(v2 - 1.0) <= 1e-9,
            "family 2 (m=200): estimate " + num(v2) + " within 1e-9 of eps_phi = 1");

  std::mt19937_64 rng(5), r3(5);
  const Mdp rnd = random_mdp(10, 3, 0.9, rng);
  const double v3 = estimate_epsilon_phi(rnd, Aggregation::identity(10), 16, 16, r3).value;
  c.require(v3 == 0.0, "identity aggregation: estimate " + num(v3) + " is exactly 0");
  return c;
}

// --------------------------------------------------------------------------
// 10. exactness oracles: fixed-point iteration, truncated occupancy series,
//     performance-difference identity
// --------------------------------------------------------------------------
Criterion criterion10() {
  Criterion c;
  std::mt19937_64 rng(2026);
  double worst_eval = 0.0, worst_occ = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int s = 4 + uniform_int(12, rng);
    const int a = 2 + uniform_int(3, rng);
    const Mdp mdp = random_mdp(s, a, 0.8 + 0.19 * uniform_double(rng), rng);
    const TabularPolicy pi = random_policy(s, a, rng);
    worst_eval =
        std::max(worst_eval, (evaluate_policy(mdp, pi) -
                              oracles::fixed_point_value(mdp, pi, 10000))
                                 .lpNorm<Eigen::Infinity>());
    worst_occ =
        std::max(worst_occ, (occupancy(mdp, pi) - oracles::truncated_occupancy(mdp, pi, 2000))
                                .lpNorm<Eigen::Infinity>());
  }
  c.require(worst_eval <= 1e-8,
            "evaluate_policy vs 1e4-step fixed-point iteration: max diff " + num(worst_eval) +
                " <= 1e-8 (10 instances)");
  c.require(worst_occ <= 1e-8, "occupancy vs 2000-term truncated series: max diff " +
                                   num(worst_occ) + " <= 1e-8 (10 instances)");

  double worst_pdl = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 3 + uniform_int(10, rng);
    const int a = 2 + uniform_int(3, rng);
    const Mdp mdp = random_mdp(s, a, 0.8 + 0.15 * uniform_double(rng), rng);
    const TabularPolicy pi = random_policy(s, a, rng);
    const TabularPolicy pi2 = random_policy(s, a, rng);
    const QTable q = q_values(mdp, evaluate_policy(mdp, pi));
    const Occupancy eta2 = occupancy(mdp, pi2);
    double rhs = 0.0;
    for (int st = 0; st < s; ++st)
      rhs += eta2(st) * q.row(st).dot(pi2.probs.row(st) - pi.probs.row(st));
    worst_pdl =
        std::max(worst_pdl, std::abs(objective(mdp, pi2) - objective(mdp, pi) - rhs));
  }
  c.require(worst_pdl <= 1e-9, "performance-difference identity: max violation " +
                                   num(worst_pdl) + " <= 1e-9 (100 policy pairs)");
  return c;
}

using CriterionFn = Criterion (*)();
constexpr CriterionFn kCriteria[] = {criterion1, criterion2, criterion3, criterion4,
                                     criterion5, criterion6, criterion7, criterion8,
                                     criterion9, criterion10};

int run_one(int index) {
  const Criterion c = kCriteria[index - 1]();
  std::printf("CRITERION %d: %s\n", index, c.pass ? "PASS" : "FAIL");
  for (const std::string& line : c.lines) std::printf("%s\n", line.c_str());
  std::fflush(stdout);
  return c.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const int index = std::atoi(argv[2]);
    if (index < 1 || index > 10) {
      std::fprintf(stderr, "criterion index must be 1..10\n");
      return 2;
    }
    return run_one(index);
  }
  int failures = 0;
  for (int index = 1; index <= 10; ++index) failures += run_one(index);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures > 0 ? 1 : 0;
}

#include "aggmdp/verify.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "aggmdp/adp.hpp"
#include "aggmdp/counterexamples.hpp"
#include "aggmdp/experiment.hpp"
#include "aggmdp/policy_gradient.hpp"
#include "aggmdp/random_instances.hpp"

namespace aggmdp {

namespace {

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(4);
  ss << std::scientific << x;
  return ss.str();
}

struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// ---------------------------------------------------------------------------
// independent oracles
// ---------------------------------------------------------------------------

ValueTable fixed_point_value(const Mdp& mdp, const TabularPolicy& pi, long iters) {
  ValueTable v = ValueTable::Zero(mdp.num_states);
  const Eigen::MatrixXd p = policy_transition_matrix(mdp, pi);
  const Eigen::VectorXd r = policy_rewards(mdp, pi);
  for (long k = 0; k < iters; ++k) v = r + mdp.gamma * (p * v);
  return v;
}

Occupancy truncated_occupancy(const Mdp& mdp, const TabularPolicy& pi, long horizon) {
  const Eigen::MatrixXd p = policy_transition_matrix(mdp, pi);
  Eigen::RowVectorXd dist = mdp.rho.transpose();
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(mdp.num_states);
  double w = 1.0 - mdp.gamma;
  for (long t = 0; t <= horizon; ++t) {
    acc += w * dist;
    dist *= p;
    w *= mdp.gamma;
  }
  return acc.transpose();
}

// brute-force simplex projection: best feasible equality-constrained
// candidate over all nonempty supports
Eigen::VectorXd projection_oracle(const Eigen::VectorXd& y) {
  const int k = static_cast<int>(y.size());
  Eigen::VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(k);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        sum += y(i);
        ++count;
      }
    const double beta = (sum - 1.0) / count;
    bool feasible = true;
    double dist = 0.0;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        x(i) = y(i) - beta;
        if (x(i) < -1e-12) {
          feasible = false;
          break;
        }
      } else {
        x(i) = 0.0;
      }
      const double d = x(i) - y(i);
      dist += d * d;
    }
    if (feasible && dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

struct RandomAggregatedInstance {
  Mdp mdp;
  Aggregation agg;
};

RandomAggregatedInstance random_instance(int max_states, int max_actions, double gamma_lo,
                                         double gamma_hi, std::mt19937_64& rng) {
  const int s = 2 + uniform_int(max_states - 1, rng);
  const int a = 2 + uniform_int(max_actions - 1, rng);
  const double gamma = gamma_lo + (gamma_hi - gamma_lo) * uniform_double(rng);
  RandomAggregatedInstance inst;
  inst.mdp = random_mdp(s, a, gamma, rng);
  const int m = 1 + uniform_int(s, rng);
  inst.agg = random_aggregation(s, m, rng);
  return inst;
}

}  // namespace

// ---------------------------------------------------------------------------
// grad
// ---------------------------------------------------------------------------

CheckReport check_gradients(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double h = 1e-6;
  double worst_rel = 0.0, worst_compat = 0.0, smallest_deriv = 1e300;

  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(20, 4, 0.8, 0.95, rng);
    const int na = inst.mdp.num_actions;

    // interior aggregated base point, aggregated direction endpoint
    AggregatedPolicy base = random_aggregated_policy(inst.agg.num_segments, na, rng);
    base.theta = 0.9 * base.theta +
                 Eigen::MatrixXd::Constant(inst.agg.num_segments, na, 0.1 / na);
    const TabularPolicy pi = lift_policy(inst.agg, base);
    const TabularPolicy pi2 =
        lift_policy(inst.agg, random_aggregated_policy(inst.agg.num_segments, na, rng));
    const Eigen::MatrixXd dir = pi2.probs - pi.probs;

    const GradientTable g = exact_gradient(inst.mdp, inst.agg, pi);
    const double analytic = (g.full.array() * dir.array()).sum();

    TabularPolicy plus{pi.probs + h * dir}, minus{pi.probs - h * dir};
    const double fd =
        (objective(inst.mdp, plus) - objective(inst.mdp, minus)) / (2.0 * h);
    worst_rel = std::max(worst_rel, std::abs(analytic - fd) / std::max(1e-8, std::abs(fd)));
    smallest_deriv = std::min(smallest_deriv, std::abs(fd));

    worst_compat = std::max(worst_compat, compatible_approx_check(inst.mdp, inst.agg, pi, pi2));
  }

  CheckReport report;
  report.results.push_back({"grad/finite-difference",
                            worst_rel <= 1e-6,
                            "max relative error " + fmt(worst_rel) + " over 50 instances (tol 1e-6, h=1e-6, min |deriv| " +
                                fmt(smallest_deriv) + ")"});
  report.results.push_back({"grad/compatible-approximation",
                            worst_compat <= 1e-10,
                            "max discrepancy " + fmt(worst_compat) + " (tol 1e-10)"});
  return report;
}

// ---------------------------------------------------------------------------
// proj
// ---------------------------------------------------------------------------

CheckReport check_projection(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst_oracle = 0.0, worst_idem = 0.0, worst_shift = 0.0;

  for (int trial = 0; trial < 10000; ++trial) {
    const int k = 2 + uniform_int(15, rng);
    Eigen::VectorXd y(k);
    for (int i = 0; i < k; ++i) y(i) = 4.0 * uniform_double(rng) - 2.0;
    if (trial % 5 == 0) y(uniform_int(k, rng)) = y(0);  // exercise ties

    const Eigen::VectorXd p = project_simplex(y);
    worst_oracle =
        std::max(worst_oracle, (p - projection_oracle(y)).lpNorm<Eigen::Infinity>());
    worst_idem = std::max(worst_idem, (project_simplex(p) - p).lpNorm<Eigen::Infinity>());
    const double c = 10.0 * uniform_double(rng) - 5.0;
    const Eigen::VectorXd shifted =
        project_simplex(y + Eigen::VectorXd::Constant(k, c));
    worst_shift = std::max(worst_shift, (shifted - p).lpNorm<Eigen::Infinity>());
  }

  CheckReport report;
  report.results.push_back({"proj/oracle-agreement", worst_oracle <= 1e-9,
                            "max deviation " + fmt(worst_oracle) +
                                " from support-enumeration oracle over 1e4 vectors (tol 1e-9)"});
  report.results.push_back({"proj/idempotence", worst_idem <= 1e-12,
                            "max drift " + fmt(worst_idem) + " (tol 1e-12)"});
  report.results.push_back({"proj/translation-invariance", worst_shift <= 1e-12,
                            "max deviation " + fmt(worst_shift) + " (tol 1e-12)"});
  return report;
}

// ---------------------------------------------------------------------------
// unbiased
// ---------------------------------------------------------------------------

CheckReport check_unbiasedness(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long samples = 100000;
  long total = 0, within = 0;
  double worst_z = 0.0;

  struct Case {
    Mdp mdp;
    Aggregation agg;
    AggregatedPolicy theta;
  };
  std::vector<Case> cases;
  {
    ExampleSpec spec;  // family 1, m=5, otherwise the fig1 parameters
    spec.m = 5;
    ExampleInstance ex = build_example1(spec);
    cases.push_back({std::move(ex.mdp), std::move(ex.agg), std::move(ex.initial_theta)});
  }
  for (int i = 0; i < 5; ++i) {
    const int s = 6 + uniform_int(9, rng);
    const int a = 2 + uniform_int(3, rng);
    Case c;
    c.mdp = random_mdp(s, a, 0.9, rng);
    c.agg = random_aggregation(s, std::min(s, 4 + uniform_int(5, rng)), rng);
    c.theta = random_aggregated_policy(c.agg.num_segments, a, rng);
    cases.push_back(std::move(c));
  }

  for (const Case& c : cases) {
    const Eigen::MatrixXd exact =
        exact_gradient(c.mdp, c.agg, lift_policy(c.agg, c.theta)).aggregated;
    const int m = c.agg.num_segments, na = c.mdp.num_actions;
    std::vector<Kahan> sum(m * na), sumsq(m * na);
    for (long k = 0; k < samples; ++k) {
      const Eigen::MatrixXd g = stochastic_gradient(c.mdp, c.agg, c.theta, rng);
      for (int i = 0; i < m; ++i)
        for (int a = 0; a < na; ++a) {
          sum[i * na + a].add(g(i, a));
          sumsq[i * na + a].add(g(i, a) * g(i, a));
        }
    }
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < na; ++a) {
        const double mean = sum[i * na + a].sum / samples;
        const double var =
            std::max(0.0, (sumsq[i * na + a].sum - samples * mean * mean) / (samples - 1));
        const double se = std::sqrt(var / samples);
        ++total;
        const double z = se > 0.0 ? std::abs(mean - exact(i, a)) / se
                                  : (std::abs(mean - exact(i, a)) > 0.0 ? 1e300 : 0.0);
        worst_z = std::max(worst_z, z);
        if (z <= 3.0) ++within;
      }
  }

  const double frac = static_cast<double>(within) / total;
  CheckReport report;
  report.results.push_back(
      {"unbiased/z-test", frac >= 0.99,
       std::to_string(within) + "/" + std::to_string(total) +
           " components within 3 standard errors of the exact gradient (need 99%, worst z " +
           fmt(worst_z) + ", 1e5 samples per instance)"});
  return report;
}

// ---------------------------------------------------------------------------
// equiv
// ---------------------------------------------------------------------------

namespace {

double sequence_max_diff(const RunTrace& a, const RunTrace& b) {
  if (a.records.size() != b.records.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.records.size(); ++k)
    worst = std::max(worst,
                     (a.records[k].theta - b.records[k].theta).lpNorm<Eigen::Infinity>());
  return worst;
}

double fw_vs_soft_api(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi1,
                      double alpha, long iters) {
  const TieBreak shared = TieBreak::smallest_index();
  ApiConfig cfg;
  cfg.weight_mode = WeightMode::kOnPolicy;
  cfg.step_alpha = alpha;
  cfg.tiebreak = shared;
  cfg.max_iters = iters;
  const RunTrace soft = api_iterate(mdp, agg, pi1, cfg);
  const RunTrace fw = fw_run(mdp, agg, pi1, alpha, shared, iters);
  return sequence_max_diff(soft, fw);
}

}  // namespace

CheckReport check_equivalence(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  {
    const ExampleInstance ex = build_example1(ExampleSpec::fig1());
    worst = std::max(worst, fw_vs_soft_api(ex.mdp, ex.agg, ex.initial_policy, 0.1, 100));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instance(30, 4, 0.8, 0.95, rng);
    const TabularPolicy pi1 = lift_policy(
        inst.agg, AggregatedPolicy::uniform(inst.agg.num_segments, inst.mdp.num_actions));
    worst = std::max(worst, fw_vs_soft_api(inst.mdp, inst.agg, pi1, 0.1, 100));
  }
  CheckReport report;
  report.results.push_back(
      {"equiv/frank-wolfe-vs-soft-api", worst <= 1e-12,
       "max policy-sequence deviation " + fmt(worst) +
           " over family 1 + 20 random instances, alpha=0.1, 100 iterations (tol 1e-12)"});
  return report;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

Example1ClosedForm example1_closed_form(const ExampleSpec& spec) {
  const int m = spec.m;
  const double gamma = spec.gamma, eps = spec.eps_phi, c = spec.c;
  const Eigen::VectorXd rho = spec.rho.build(m);

  // closed-form Stay rewards r(s) = -c (1 - gamma^{s-1}) / (1 - gamma)
  auto rstay = [&](int s) {
    return s <= 1 ? 0.0 : -c * (1.0 - std::pow(gamma, s - 1)) / (1.0 - gamma);
  };

  // cycle policies: segment 1 Stay; "odd iterates" play Stay on even
  // segments and Move on odd, "even iterates" the reverse
  Eigen::VectorXd va_b(m + 1), va_t(m + 1), vb_b(m + 1), vb_t(m + 1);
  for (int s = 1; s <= m; ++s) {
    if (s == 1) va_b(s) = 0.0;
    else if (s % 2 == 0) va_b(s) = rstay(s) / (1.0 - gamma);
    else va_b(s) = gamma * rstay(s - 1) / (1.0 - gamma);
  }
  for (int s = 1; s <= m; ++s) {
    if (s == 1) va_t(s) = eps;
    else if (s % 2 == 0) va_t(s) = rstay(s) + eps + gamma * va_b(s);
    else va_t(s) = gamma * va_b(s - 1);
  }
  for (int s = 1; s <= m; ++s) {
    if (s == 1) vb_b(s) = 0.0;
    else if (s % 2 == 0) vb_b(s) = gamma * vb_b(s - 1);
    else vb_b(s) = rstay(s) / (1.0 - gamma);
  }
  for (int s = 1; s <= m; ++s) {
    if (s == 1) vb_t(s) = eps;
    else if (s % 2 == 0) vb_t(s) = gamma * vb_b(s - 1);
    else vb_t(s) = rstay(s) + eps + gamma * vb_b(s);
  }

  Example1ClosedForm cf;
  double ja = 0.0, jb = 0.0, jstar = 0.0;
  for (int s = 1; s <= m; ++s) {
    ja += rho(s - 1) * va_b(s) + rho(m + s - 1) * va_t(s);
    jb += rho(s - 1) * vb_b(s) + rho(m + s - 1) * vb_t(s);
    // optimal values: 0 on the bottom chain; a mirror state cashes in its
    // Stay bonus once when it is positive
    jstar += rho(m + s - 1) * std::max(0.0, rstay(s) + eps);
  }
  cf.j_odd_iterates = (1.0 - gamma) * ja;
  cf.j_even_iterates = (1.0 - gamma) * jb;
  cf.j_opt = (1.0 - gamma) * jstar;
  cf.min_cycle_gap = cf.j_opt - std::max(cf.j_odd_iterates, cf.j_even_iterates);
  cf.finite_m_floor = -(gamma / 2.0) * rstay(m - 1);
  return cf;
}

CheckReport check_bounds(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckReport report;
  auto add = [&](std::string name, bool pass, std::string detail) {
    report.results.push_back({std::move(name), pass, std::move(detail)});
  };

  // family-1 cycle under fixed uniform weights
  const ExampleSpec spec1 = ExampleSpec::fig1();
  const ExampleInstance ex1 = build_example1(spec1);
  RunTrace api_trace;
  {
    ApiConfig cfg;
    cfg.weight_mode = WeightMode::kFixed;
    cfg.fixed_weights =
        Eigen::VectorXd::Constant(ex1.mdp.num_states, 1.0 / ex1.mdp.num_states);
    cfg.tiebreak = spec1.tiebreak;
    cfg.max_iters = 20;
    api_trace = api_iterate(ex1.mdp, ex1.agg, ex1.initial_policy, cfg);
    bool exact_period2 = api_trace.records.size() >= 3;
    for (std::size_t t = 0; t + 2 < api_trace.records.size(); ++t)
      exact_period2 = exact_period2 &&
                      (api_trace.records[t + 2].theta - api_trace.records[t].theta)
                              .lpNorm<Eigen::Infinity>() == 0.0;
    add("bounds/family1-exact-cycle",
        exact_period2 && api_trace.cycle && api_trace.cycle->period == 2 &&
            api_trace.cycle->start == 0,
        "fixed-weight API cycles with period 2 from the start, max-norm 0");

    const Example1ClosedForm cf = example1_closed_form(spec1);
    const double min_gap =
        api_trace.j_opt - std::max(api_trace.records[0].j, api_trace.records[1].j);
    add("bounds/family1-regret-floor", min_gap > cf.finite_m_floor,
        "min cycle gap " + fmt(min_gap) + " exceeds the finite-m floor " +
            fmt(cf.finite_m_floor) + " (asymptote " +
            fmt(regret_lower_bound(spec1.gamma, spec1.eps_phi)) + ")");
    add("bounds/family1-closed-form", std::abs(min_gap - cf.min_cycle_gap) <= 1e-8,
        "exact min cycle gap matches the geometric-series value within " +
            fmt(std::abs(min_gap - cf.min_cycle_gap)) + " (tol 1e-8)");
  }

  // family-2 cycle under on-policy weights
  {
    const ExampleSpec spec2 = ExampleSpec::fig2();
    const ExampleInstance ex2 = build_example2(spec2);
    ApiConfig cfg;
    cfg.weight_mode = WeightMode::kOnPolicy;
    cfg.tiebreak = spec2.tiebreak;
    cfg.max_iters = 4;
    const RunTrace trace = api_iterate(ex2.mdp, ex2.agg, ex2.initial_policy, cfg);
    const double back =
        (trace.records[2].theta - trace.records[0].theta).lpNorm<Eigen::Infinity>();
    const double moved =
        (trace.records[1].theta - trace.records[0].theta).lpNorm<Eigen::Infinity>();
    add("bounds/family2-exact-cycle", back == 0.0 && moved > 0.0,
        "on-policy API returns to pi_1 at iteration 3 exactly (pi_2 differs)");
  }

  // robustness of a certified stationary point (2 eps_phi bound), and the
  // stationary-point Bellman residual
  {
    PgConfig cfg;
    cfg.step_alpha = 0.05;
    cfg.max_iters = 20000;
    cfg.record_every = 1000;
    const RunTrace pg =
        pg_projected_run(ex1.mdp, ex1.agg, ex1.initial_theta, cfg);
    const TraceRecord& last = pg.records.back();
    add("bounds/pg-stationary", last.stat_gap <= cfg.stationarity_tol,
        "projected gradient reached stationarity gap " + fmt(last.stat_gap) + " at iteration " +
            std::to_string(last.iter) + " (alpha 0.05)");
    add("bounds/pg-2eps-bound", last.opt_gap <= 2.0 * spec1.eps_phi,
        "terminal optimality gap " + fmt(last.opt_gap) + " <= 2 eps_phi = " +
            fmt(2.0 * spec1.eps_phi));

    const TabularPolicy stationary =
        lift_policy(ex1.agg, AggregatedPolicy{last.theta});
    const double res = check_stationary_bellman(ex1.mdp, ex1.agg, stationary);
    const double res_cycle0 = check_stationary_bellman(
        ex1.mdp, ex1.agg, lift_policy(ex1.agg, AggregatedPolicy{api_trace.records[0].theta}));
    const double res_cycle1 = check_stationary_bellman(
        ex1.mdp, ex1.agg, lift_policy(ex1.agg, AggregatedPolicy{api_trace.records[1].theta}));
    add("bounds/bellman-residual",
        res <= 1e-6 && res_cycle0 > 0.01 && res_cycle1 > 0.01,
        "stationary residual " + fmt(res) + " (tol 1e-6); cycle residuals " + fmt(res_cycle0) +
            ", " + fmt(res_cycle1) + " (> 0.01)");
  }

  // eps_phi recovery on small instances of both families + identity
  {
    ExampleSpec small1;
    small1.m = 5;
    small1.gamma = 0.9;
    const ExampleInstance e1 = build_example1(small1);
    std::mt19937_64 r1(seed);
    const EpsilonPhiEstimate est1 = estimate_epsilon_phi(e1.mdp, e1.agg, 40, 40, r1);

    ExampleSpec small2;
    small2.m = 6;
    small2.gamma = 0.9;
    small2.c = 1.0 / 3.0;
    const ExampleInstance e2 = build_example2(small2);
    std::mt19937_64 r2(seed);
    const EpsilonPhiEstimate est2 = estimate_epsilon_phi(e2.mdp, e2.agg, 40, 40, r2);

    const Mdp rnd = random_mdp(6, 2, 0.9, rng);
    std::mt19937_64 r3(seed);
    const EpsilonPhiEstimate est3 =
        estimate_epsilon_phi(rnd, Aggregation::identity(6), 16, 16, r3);

    add("bounds/eps-phi-recovery",
        std::abs(est1.value - small1.eps_phi) <= 1e-9 &&
            std::abs(est2.value - small2.eps_phi) <= 1e-9 && est3.value <= 1e-12,
        "family 1: " + fmt(est1.value) + ", family 2: " + fmt(est2.value) +
            ", identity aggregation: " + fmt(est3.value));
  }

  // distribution-mismatch bound diagnostics. With rho equal to the
  // stationary distribution of P_{pi*}, the occupancy measure reproduces rho
  // and every segment ratio is 1.
  {
    const double kappa = kappa_rho_bound(ex1.mdp, ex1.agg);
    const Mdp rnd = random_mdp(8, 3, 0.9, rng);
    Mdp aligned = rnd;
    const Eigen::MatrixXd p_star =
        policy_transition_matrix(rnd, solve_optimal(rnd).policy);
    Eigen::RowVectorXd dist = Eigen::RowVectorXd::Constant(8, 1.0 / 8.0);
    for (int k = 0; k < 10000; ++k) dist = dist * p_star;
    aligned.rho = (dist / dist.sum()).transpose();
    const double kappa_aligned = kappa_rho_bound(aligned, Aggregation::identity(8));
    add("bounds/kappa-rho", kappa >= 1.0 - 1e-9 && std::abs(kappa_aligned - 1.0) <= 1e-9,
        "family 1 kappa " + fmt(kappa) +
            "; identity aggregation with rho stationary under pi* gives " +
            fmt(kappa_aligned));
  }

  // exactness oracles
  {
    double worst_eval = 0.0, worst_occ = 0.0, worst_pdl = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const int s = 4 + uniform_int(10, rng);
      const int a = 2 + uniform_int(3, rng);
      const Mdp mdp = random_mdp(s, a, 0.8 + 0.15 * uniform_double(rng), rng);
      const TabularPolicy pi = random_policy(s, a, rng);
      worst_eval = std::max(worst_eval, (evaluate_policy(mdp, pi) -
                                         fixed_point_value(mdp, pi, 10000))
                                            .lpNorm<Eigen::Infinity>());
      worst_occ = std::max(worst_occ, (occupancy(mdp, pi) - truncated_occupancy(mdp, pi, 2000))
                                          .lpNorm<Eigen::Infinity>());
    }
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
    add("bounds/oracle-fixed-point", worst_eval <= 1e-8,
        "max |evaluate - 1e4-step iteration| " + fmt(worst_eval) + " (tol 1e-8)");
    add("bounds/oracle-occupancy-series", worst_occ <= 1e-8,
        "max |occupancy - truncated series| " + fmt(worst_occ) + " (tol 1e-8)");
    add("bounds/performance-difference", worst_pdl <= 1e-9,
        "max identity violation " + fmt(worst_pdl) + " over 100 policy pairs (tol 1e-9)");
  }

  return report;
}

CheckReport run_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "grad") return check_gradients(seed);
  if (suite == "proj") return check_projection(seed);
  if (suite == "unbiased") return check_unbiasedness(seed);
  if (suite == "equiv") return check_equivalence(seed);
  if (suite == "bounds") return check_bounds(seed);
  if (suite == "all") {
    CheckReport all;
    for (const char* name : {"grad", "proj", "unbiased", "equiv", "bounds"}) {
      CheckReport part = run_suite(name, seed);
      for (auto& r : part.results) all.results.push_back(std::move(r));
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + suite +
                              "' (expected grad, proj, unbiased, equiv, bounds or all)");
}

}  // namespace aggmdp

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "aggmdp/aggregation.hpp"
#include "aggmdp/counterexamples.hpp"
#include "aggmdp/random_instances.hpp"
#include "oracles.hpp"

using namespace aggmdp;

TEST_CASE("lift_policy: identity, single segment, and the pairing map") {
  std::mt19937_64 rng(1);
  const AggregatedPolicy theta = random_aggregated_policy(4, 3, rng);
  const TabularPolicy identity_lift = lift_policy(Aggregation::identity(4), theta);
  CHECK((identity_lift.probs - theta.theta).lpNorm<Eigen::Infinity>() == 0.0);

  const Aggregation one = Aggregation::from_phi(1, {0, 0, 0});
  const TabularPolicy uniform_lift = lift_policy(one, AggregatedPolicy::uniform(1, 2));
  for (int s = 0; s < 3; ++s) CHECK(uniform_lift.probs(s, 0) == doctest::Approx(0.5));

  ExampleSpec spec;
  spec.m = 5;
  spec.gamma = 0.9;
  const ExampleInstance ex = build_example1(spec);
  const TabularPolicy lifted =
      lift_policy(ex.agg, AggregatedPolicy::deterministic({kStay, kMove, kStay, kMove, kMove}, 2));
  for (int s = 0; s < 5; ++s)
    CHECK((lifted.probs.row(s) - lifted.probs.row(s + 5)).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(is_aggregated(ex.agg, lifted));
}

TEST_CASE("fit_aggregated_q: weighted means, least-squares oracle, zero-mass fallback") {
  // two states in one segment, weights (0.25, 0.75), Q column (0, 4) -> 3
  const Aggregation one = Aggregation::from_phi(1, {0, 0});
  QTable q(2, 1);
  q << 0.0, 4.0;
  Eigen::VectorXd w(2);
  w << 0.25, 0.75;
  CHECK(fit_aggregated_q(one, q, w).qhat(0, 0) == doctest::Approx(3.0));

  // single segment with uniform weights: plain mean
  QTable q2(3, 2);
  q2 << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  const Aggregation all = Aggregation::from_phi(1, {0, 0, 0});
  const auto fit2 = fit_aggregated_q(all, q2, Eigen::VectorXd::Constant(3, 1.0 / 3.0));
  CHECK(fit2.qhat(0, 0) == doctest::Approx(3.0));
  CHECK(fit2.qhat(0, 1) == doctest::Approx(4.0));
  CHECK(fit2.zero_mass_segments.empty());

  // family 1 under uniform weights: the fit overestimates Stay by eps/2 at
  // bottom states
  ExampleSpec spec;
  spec.m = 5;
  spec.gamma = 0.9;
  const ExampleInstance ex = build_example1(spec);
  const QTable qpi = q_values(ex.mdp, evaluate_policy(ex.mdp, ex.initial_policy));
  const auto fit3 = fit_aggregated_q(ex.agg, qpi, Eigen::VectorXd::Constant(10, 0.1));
  for (int s = 1; s <= spec.m; ++s) {
    CHECK(fit3.qhat(s - 1, kStay) ==
          doctest::Approx(qpi(s - 1, kStay) + spec.eps_phi / 2.0).epsilon(1e-12));
    CHECK(fit3.qhat(s - 1, kMove) == doctest::Approx(qpi(s - 1, kMove)).epsilon(1e-12));
  }

  // zero-mass segment: flagged, filled with the unweighted mean
  Eigen::VectorXd w_dead(2);
  w_dead << 0.0, 0.0;
  const auto fit4 = fit_aggregated_q(one, q, w_dead);
  CHECK(fit4.zero_mass_segments == std::vector<int>{0});
  CHECK(fit4.qhat(0, 0) == doctest::Approx(2.0));

  // dense least-squares oracle and random-candidate optimality
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const int ns = 6 + trial;
    const Mdp mdp = random_mdp(ns, 3, 0.9, rng);
    const Aggregation agg = random_aggregation(ns, 3, rng);
    const TabularPolicy pi = random_policy(ns, 3, rng);
    const QTable qq = q_values(mdp, evaluate_policy(mdp, pi));
    Eigen::VectorXd ww = dirichlet_uniform(ns, rng).array() + 0.05;
    const auto fit = fit_aggregated_q(agg, qq, ww);
    CHECK((fit.qhat - oracles::ls_fit(agg, qq, ww)).lpNorm<Eigen::Infinity>() <= 1e-9);

    const double best = oracles::weighted_fit_objective(agg, qq, ww, fit.qhat);
    double runner_up = 1e300;
    for (int k = 0; k < 200000; ++k) {
      Eigen::MatrixXd cand = fit.qhat;
      for (int i = 0; i < cand.rows(); ++i)
        for (int a = 0; a < cand.cols(); ++a) cand(i, a) += 2.0 * uniform_double(rng) - 1.0;
      runner_up = std::min(runner_up, oracles::weighted_fit_objective(agg, qq, ww, cand));
    }
    CHECK(best <= runner_up + 1e-12);
  }
}

TEST_CASE("greedy_from_aggregated_q: tie semantics and shift invariance") {
  Eigen::MatrixXd qhat(1, 2);
  qhat << 1.0, 0.0;
  CHECK(greedy_policy(qhat, TieBreak::smallest_index()).theta(0, 0) == 1.0);

  qhat << 1.0, 1.0;
  CHECK(greedy_policy(qhat, TieBreak::smallest_index()).theta(0, 0) == 1.0);
  CHECK(greedy_policy(qhat, TieBreak::prefer_action(1)).theta(0, 1) == 1.0);
  CHECK(greedy_policy(qhat, TieBreak::largest_index()).theta(0, 1) == 1.0);

  std::mt19937_64 rng(9);
  Eigen::MatrixXd table(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 3; ++a) table(i, a) = uniform_double(rng);
  Eigen::MatrixXd shifted = table;
  for (int i = 0; i < 4; ++i) shifted.row(i).array() += 10.0 * uniform_double(rng) - 5.0;
  const TieBreak tb = TieBreak::smallest_index();
  CHECK((greedy_policy(table, tb).theta - greedy_policy(shifted, tb).theta)
            .lpNorm<Eigen::Infinity>() == 0.0);

  const Aggregation agg = Aggregation::from_phi(2, {0, 1, 0});
  Eigen::MatrixXd q2(2, 2);
  q2 << 0.0, 1.0, 1.0, 0.0;
  const TabularPolicy pi = greedy_from_aggregated_q(agg, q2, tb);
  CHECK(pi.probs(0, 1) == 1.0);
  CHECK(pi.probs(1, 0) == 1.0);
  CHECK(pi.probs(2, 1) == 1.0);
}

TEST_CASE("softmax_from_aggregated_q: symmetry, round trip, stability") {
  Eigen::MatrixXd equal_row = Eigen::MatrixXd::Constant(1, 4, 3.7);
  const AggregatedPolicy uniform = softmax_policy(equal_row);
  for (int a = 0; a < 4; ++a) CHECK(uniform.theta(0, a) == doctest::Approx(0.25));

  std::mt19937_64 rng(15);
  const AggregatedPolicy theta = random_aggregated_policy(3, 3, rng);
  const AggregatedPolicy back = softmax_policy(theta.theta.array().log().matrix());
  CHECK((back.theta - theta.theta).lpNorm<Eigen::Infinity>() <= 1e-12);

  Eigen::MatrixXd wide(1, 2);
  wide << 100.0, 0.0;
  const AggregatedPolicy stable = softmax_policy(wide);
  CHECK(stable.theta.allFinite());
  CHECK(stable.theta(0, 0) >= 1.0 - 1e-12);
  // extended-precision reference
  const long double e = expl(-100.0L);
  CHECK(stable.theta(0, 1) ==
        doctest::Approx(static_cast<double>(e / (1.0L + e))).epsilon(1e-10));
  CHECK(stable.theta(0, 1) > 0.0);

  const Aggregation agg = Aggregation::from_phi(1, {0, 0});
  const TabularPolicy lifted = softmax_from_aggregated_q(agg, wide);
  CHECK(std::abs(lifted.probs.row(0).sum() - 1.0) <= 1e-12);
  CHECK(is_aggregated(agg, lifted));
}

TEST_CASE("estimate_epsilon_phi: exact zeros and family-1 recovery") {
  std::mt19937_64 rng(21);
  const Mdp mdp = random_mdp(6, 2, 0.9, rng);
  std::mt19937_64 r1(3);
  CHECK(estimate_epsilon_phi(mdp, Aggregation::identity(6), 10, 10, r1).value == 0.0);

  Mdp constant = mdp;
  constant.rewards.setConstant(0.7);
  std::mt19937_64 r2(3);
  const auto est_const =
      estimate_epsilon_phi(constant, random_aggregation(6, 3, rng), 16, 16, r2);
  CHECK(est_const.value <= 1e-11);

  ExampleSpec spec;
  spec.m = 5;
  spec.gamma = 0.9;
  const ExampleInstance ex = build_example1(spec);
  std::mt19937_64 r3(3);
  const auto est = estimate_epsilon_phi(ex.mdp, ex.agg, 8, 8, r3);
  CHECK(std::abs(est.value - spec.eps_phi) <= 1e-9);
  CHECK_FALSE(est.deterministic_exhaustive);  // 2^5 = 32 > 8
  std::mt19937_64 r4(3);
  CHECK(estimate_epsilon_phi(ex.mdp, ex.agg, 40, 8, r4).deterministic_exhaustive);
}

TEST_CASE("estimate_epsilon_phi: monotone in both budgets at a fixed seed") {
  std::mt19937_64 rng(33);
  const Mdp mdp = random_mdp(8, 2, 0.9, rng);
  const Aggregation agg = random_aggregation(8, 3, rng);
  double previous = -1.0;
  for (long budget : {2L, 8L, 32L}) {
    std::mt19937_64 seeded(99);
    const auto est = estimate_epsilon_phi(mdp, agg, budget, budget, seeded);
    CHECK(est.value >= previous);
    previous = est.value;
  }
}

TEST_CASE("kappa_rho_bound: normalization cases and zero-mass precondition") {
  std::mt19937_64 rng(41);
  const Mdp mdp = random_mdp(6, 2, 0.9, rng);
  const Aggregation one = Aggregation::from_phi(1, {0, 0, 0, 0, 0, 0});
  CHECK(kappa_rho_bound(mdp, one) == doctest::Approx(1.0).epsilon(1e-10));

  ExampleSpec spec;
  spec.m = 5;
  spec.gamma = 0.9;
  const ExampleInstance ex = build_example1(spec);
  const double kappa = kappa_rho_bound(ex.mdp, ex.agg);
  // cross-check against the truncated-series occupancy of pi*
  const OptimalSolution opt = solve_optimal(ex.mdp);
  const Occupancy eta = oracles::truncated_occupancy(ex.mdp, opt.policy, 2000);
  double expected = 0.0;
  for (int i = 0; i < ex.agg.num_segments; ++i) {
    double em = 0.0, rm = 0.0;
    for (int s : ex.agg.segments[i]) {
      em += eta(s);
      rm += ex.mdp.rho(s);
    }
    expected = std::max(expected, em / rm);
  }
  CHECK(kappa == doctest::Approx(expected).epsilon(1e-7));

  Mdp degenerate = mdp;
  degenerate.rho.setZero();
  degenerate.rho(0) = 1.0;
  CHECK_THROWS_AS(kappa_rho_bound(degenerate, Aggregation::identity(6)),
                  std::invalid_argument);
}

TEST_CASE("aggregation json: round trip and loader checks") {
  const Aggregation agg = Aggregation::from_phi(3, {0, 1, 2, 1, 0});
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "aggmdp_agg.json").string();
  save_aggregation_json(agg, path);
  const Aggregation loaded = load_aggregation_json(path);
  CHECK(loaded.phi == agg.phi);
  CHECK(loaded.num_segments == 3);

  const std::string bad = (dir / "aggmdp_agg_bad.json").string();
  {
    std::ofstream out(bad);
    out << "{\"num_segments\": 3, \"phi\": [0, 1, 1, 0]}\n";  // segment 2 empty
  }
  CHECK_THROWS_AS(load_aggregation_json(bad), std::invalid_argument);
  {
    std::ofstream out(bad);
    out << "{\"num_segments\": 2, \"phi\": [0, 1, 2]}\n";  // out of range
  }
  CHECK_THROWS_AS(load_aggregation_json(bad), std::invalid_argument);
}

TEST_CASE("restrict_policy rejects non-aggregated tables") {
  const Aggregation agg = Aggregation::from_phi(1, {0, 0});
  TabularPolicy pi;
  pi.probs.resize(2, 2);
  pi.probs << 1.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(restrict_policy(agg, pi), ShapeError);
}

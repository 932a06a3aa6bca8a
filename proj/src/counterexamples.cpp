#include "aggmdp/counterexamples.hpp"

#include <cmath>

namespace aggmdp {

Eigen::VectorXd RhoSpec::build(int m) const {
  const int n = 2 * m;
  Eigen::VectorXd rho(n);
  switch (kind) {
    case Kind::kExample1Default:
      // mass 0.6 on the bottom end state, the rest spread uniformly; keeps
      // every segment reachable while satisfying rho(m) > 1/2
      rho.setConstant(0.4 / (n - 1));
      rho(m - 1) = 0.6;
      break;
    case Kind::kUniform:
      rho.setConstant(1.0 / n);
      break;
    case Kind::kFig2Ramp: {
      for (int s = 1; s <= m; ++s) {
        rho(s - 1) = 20.0 * s;      // bottom row, heavily favored
        rho(m + s - 1) = 1.0 * s;   // mirror row
      }
      rho /= rho.sum();
      break;
    }
    case Kind::kCustom:
      if (custom.size() != n)
        throw std::invalid_argument("rho spec: custom vector must have 2m entries");
      rho = custom;
      break;
  }
  return rho;
}

ExampleSpec ExampleSpec::fig1() {
  ExampleSpec spec;
  spec.m = 100;
  spec.gamma = 0.99;
  spec.eps_phi = 1.0;
  spec.c = 0.5;
  spec.rho = RhoSpec::example1_default();
  spec.tiebreak = TieBreak::prefer_action(kStay, defaults::kTieTol);
  return spec;
}

ExampleSpec ExampleSpec::fig2() {
  ExampleSpec spec;
  spec.m = 200;
  spec.gamma = 0.99;
  spec.eps_phi = 1.0;
  spec.c = 1.0 / 3.0;
  spec.rho = RhoSpec::fig2_ramp();
  // c < eps_phi/2, so no greedy ties arise
  spec.tiebreak = TieBreak::smallest_index(defaults::kTieTol);
  return spec;
}

void ExampleSpec::validate(bool require_odd_m) const {
  if (m < 3) throw std::invalid_argument("example spec: m must be at least 3");
  if (require_odd_m && m % 2 == 0)
    throw std::invalid_argument("example spec: the canonical construction needs odd m");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("example spec: gamma must be in (0,1)");
  if (!(eps_phi > 0.0)) throw std::invalid_argument("example spec: eps_phi must be positive");
  if (!(c > 0.0 && c <= eps_phi / 2.0))
    throw std::invalid_argument("example spec: need 0 < c <= eps_phi/2");
}

namespace {

// Segment pairing shared by both families: phi(s) = phi(s+m) = s.
Aggregation paired_aggregation(int m) {
  std::vector<int> phi(2 * m);
  for (int s = 0; s < m; ++s) {
    phi[s] = s;
    phi[m + s] = s;
  }
  return Aggregation::from_phi(m, std::move(phi));
}

// Stay rewards along the chain: r(1) = 0, r(s) = gamma r(s-1) - c. Index 0
// is unused.
Eigen::VectorXd stay_reward_chain(int m, double gamma, double c) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(m + 1);
  for (int s = 2; s <= m; ++s) r(s) = gamma * r(s - 1) - c;
  return r;
}

AggregatedPolicy parity_alternating(int m) {
  std::vector<int> actions(m, kMove);
  actions[0] = kStay;  // segment 1
  for (int i = 1; i < m; ++i) {
    const int s = i + 1;  // 1-based segment
    actions[i] = (s % 2 == 0) ? kStay : kMove;
  }
  return AggregatedPolicy::deterministic(actions, 2);
}

}  // namespace

AggregatedPolicy alternating_initial_policy(int m) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument(
        "alternating_initial_policy: the canonical construction needs odd m >= 3");
  return parity_alternating(m);
}

ExampleInstance build_example1(const ExampleSpec& spec) {
  spec.validate(/*require_odd_m=*/false);
  const int m = spec.m;
  const int n = 2 * m;

  ExampleInstance inst;
  Mdp& mdp = inst.mdp;
  mdp.num_states = n;
  mdp.num_actions = 2;
  mdp.gamma = spec.gamma;
  mdp.rewards = Eigen::MatrixXd::Zero(n, 2);
  mdp.transitions.assign(2, Eigen::MatrixXd::Zero(n, n));

  const Eigen::VectorXd rstay = stay_reward_chain(m, spec.gamma, spec.c);
  for (int s = 1; s <= m; ++s) {
    const int bot = s - 1;
    const int top = m + s - 1;
    if (s == 1) {
      // absorbing; Move is identical to Stay here
      mdp.transitions[kMove](bot, bot) = 1.0;
      mdp.transitions[kStay](bot, bot) = 1.0;
    } else {
      mdp.transitions[kMove](bot, bot - 1) = 1.0;
      mdp.transitions[kStay](bot, bot) = 1.0;
    }
    // mirror states share the partner's transition rows, so Stay at s+m
    // lands on bottom s and Move steps down the bottom chain
    mdp.transitions[kMove].row(top) = mdp.transitions[kMove].row(bot);
    mdp.transitions[kStay].row(top) = mdp.transitions[kStay].row(bot);

    mdp.rewards(bot, kStay) = rstay(s);
    mdp.rewards(top, kStay) = rstay(s) + spec.eps_phi;
  }
  mdp.rho = spec.rho.build(m);
  mdp.validate();

  inst.agg = paired_aggregation(m);
  inst.initial_theta = parity_alternating(m);
  inst.initial_policy = lift_policy(inst.agg, inst.initial_theta);
  return inst;
}

ExampleInstance build_example2(const ExampleSpec& spec) {
  spec.validate(/*require_odd_m=*/false);
  const int m = spec.m;
  const int n = 2 * m;

  ExampleInstance inst;
  Mdp& mdp = inst.mdp;
  mdp.num_states = n;
  mdp.num_actions = 2;
  mdp.gamma = spec.gamma;
  mdp.rewards = Eigen::MatrixXd::Zero(n, 2);
  mdp.transitions.assign(2, Eigen::MatrixXd::Zero(n, n));

  const Eigen::VectorXd rtop = stay_reward_chain(m, spec.gamma, spec.c);
  for (int s = 1; s <= m; ++s) {
    const int bot = s - 1;
    const int top = m + s - 1;
    // Stay swaps a state with its mirror; Move steps both down to bottom s-1
    mdp.transitions[kStay](bot, top) = 1.0;
    mdp.transitions[kStay](top, bot) = 1.0;
    if (s == 1) {
      // segment 1 swaps under both actions
      mdp.transitions[kMove](bot, top) = 1.0;
      mdp.transitions[kMove](top, bot) = 1.0;
    } else {
      mdp.transitions[kMove](bot, bot - 1) = 1.0;
      mdp.transitions[kMove](top, bot - 1) = 1.0;
    }
    mdp.rewards(top, kStay) = rtop(s);
    mdp.rewards(bot, kStay) = rtop(s) + spec.eps_phi;
  }
  mdp.rho = spec.rho.build(m);
  mdp.validate();

  inst.agg = paired_aggregation(m);
  inst.initial_theta = parity_alternating(m);
  inst.initial_policy = lift_policy(inst.agg, inst.initial_theta);
  return inst;
}

double regret_lower_bound(double gamma, double eps_phi) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("regret_lower_bound: gamma must be in (0,1)");
  if (eps_phi < 0.0) throw std::invalid_argument("regret_lower_bound: eps_phi must be >= 0");
  return gamma * eps_phi / (4.0 * (1.0 - gamma));
}

}  // namespace aggmdp

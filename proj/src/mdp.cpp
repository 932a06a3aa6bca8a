#include "aggmdp/mdp.hpp"

#include <cmath>
#include <sstream>

#include "aggmdp/random_instances.hpp"
#include "eval_core.hpp"

namespace aggmdp {

namespace detail {

void check_policy_shape(const Mdp& mdp, const Eigen::MatrixXd& pi_probs, const char* where) {
  if (pi_probs.rows() != mdp.num_states || pi_probs.cols() != mdp.num_actions) {
    std::ostringstream msg;
    msg << where << ": policy is " << pi_probs.rows() << "x" << pi_probs.cols()
        << " but the MDP has " << mdp.num_states << " states, " << mdp.num_actions
        << " actions";
    throw ShapeError(msg.str());
  }
}

void PolicyEval::compute(const Mdp& mdp, const Eigen::MatrixXd& pi_probs, double tol,
                         bool want_eta, bool want_q) {
  check_policy_shape(mdp, pi_probs, "evaluate");
  const int n = mdp.num_states;
  const double gamma = mdp.gamma;

  p_pi.setZero(n, n);
  for (int a = 0; a < mdp.num_actions; ++a)
    p_pi.noalias() += pi_probs.col(a).asDiagonal() * mdp.transitions[a];
  r_pi = (pi_probs.array() * mdp.rewards.array()).rowwise().sum();

  a_mat = -gamma * p_pi;
  a_mat.diagonal().array() += 1.0;
  lu.compute(a_mat);

  v = lu.solve(r_pi);
  scratch.noalias() = r_pi - a_mat * v;  // refinement
  v += lu.solve(scratch);
  scratch.noalias() = r_pi - a_mat * v;
  if (!v.allFinite()) throw NumericError("evaluate: value solve produced non-finite entries");
  if (scratch.lpNorm<Eigen::Infinity>() > tol)
    throw NumericError("evaluate: Bellman residual " +
                       std::to_string(scratch.lpNorm<Eigen::Infinity>()) + " exceeds " +
                       std::to_string(tol));

  if (want_eta) {
    const Eigen::VectorXd b = (1.0 - gamma) * mdp.rho;
    eta = lu.transpose().solve(b);
    scratch.noalias() = b - a_mat.transpose() * eta;
    const Eigen::VectorXd correction = lu.transpose().solve(scratch);
    eta += correction;
    if (!eta.allFinite())
      throw NumericError("evaluate: occupancy solve produced non-finite entries");
  }

  if (want_q) {
    q.resize(n, mdp.num_actions);
    for (int a = 0; a < mdp.num_actions; ++a)
      q.col(a) = mdp.rewards.col(a) + gamma * (mdp.transitions[a] * v);
  }
}

void segment_weighted_sums(const Aggregation& agg, const Eigen::MatrixXd& q,
                           const Eigen::VectorXd& w, Eigen::MatrixXd& out) {
  out.setZero(agg.num_segments, q.cols());
  for (int i = 0; i < agg.num_segments; ++i)
    for (int s : agg.segments[i]) out.row(i) += w(s) * q.row(s);
}

}  // namespace detail

void Mdp::validate(double tol) const {
  if (num_states <= 0 || num_actions <= 0)
    throw std::invalid_argument("mdp: state and action counts must be positive");
  if (rewards.rows() != num_states || rewards.cols() != num_actions)
    throw std::invalid_argument("mdp: rewards table must be |S| x |A|");
  if (!rewards.allFinite()) throw std::invalid_argument("mdp: rewards must be finite");
  if (static_cast<int>(transitions.size()) != num_actions)
    throw std::invalid_argument("mdp: expected one transition matrix per action");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("mdp: gamma must lie strictly in (0,1)");
  for (int a = 0; a < num_actions; ++a) {
    const auto& p = transitions[a];
    if (p.rows() != num_states || p.cols() != num_states)
      throw std::invalid_argument("mdp: transitions[" + std::to_string(a) +
                                  "] must be |S| x |S|");
    for (int s = 0; s < num_states; ++s) {
      double sum = 0.0;
      for (int sp = 0; sp < num_states; ++sp) {
        const double x = p(s, sp);
        if (!(x >= 0.0) || !std::isfinite(x))
          throw std::invalid_argument("mdp: transitions entry (s=" + std::to_string(s) +
                                      ", a=" + std::to_string(a) + ", s'=" +
                                      std::to_string(sp) + ") is negative or non-finite");
        sum += x;
      }
      if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("mdp: transition row (s=" + std::to_string(s) +
                                    ", a=" + std::to_string(a) + ") sums to " +
                                    std::to_string(sum));
    }
  }
  if (rho.size() != num_states) throw std::invalid_argument("mdp: rho must have |S| entries");
  double rho_sum = 0.0;
  for (int s = 0; s < num_states; ++s) {
    if (!(rho(s) >= 0.0) || !std::isfinite(rho(s)))
      throw std::invalid_argument("mdp: rho(" + std::to_string(s) +
                                  ") is negative or non-finite");
    rho_sum += rho(s);
  }
  if (std::abs(rho_sum - 1.0) > tol)
    throw std::invalid_argument("mdp: rho sums to " + std::to_string(rho_sum));
}

void TabularPolicy::validate(double tol) const {
  for (int s = 0; s < probs.rows(); ++s) {
    double sum = 0.0;
    for (int a = 0; a < probs.cols(); ++a) {
      const double x = probs(s, a);
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("policy: entry (s=" + std::to_string(s) + ", a=" +
                                    std::to_string(a) + ") is negative or non-finite");
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("policy: row " + std::to_string(s) + " sums to " +
                                  std::to_string(sum));
  }
}

TabularPolicy TabularPolicy::uniform(int num_states, int num_actions) {
  TabularPolicy pi;
  pi.probs = Eigen::MatrixXd::Constant(num_states, num_actions, 1.0 / num_actions);
  return pi;
}

TabularPolicy TabularPolicy::deterministic(const std::vector<int>& actions, int num_actions) {
  TabularPolicy pi;
  pi.probs = Eigen::MatrixXd::Zero(static_cast<int>(actions.size()), num_actions);
  for (int s = 0; s < static_cast<int>(actions.size()); ++s) pi.probs(s, actions[s]) = 1.0;
  return pi;
}

Eigen::MatrixXd policy_transition_matrix(const Mdp& mdp, const TabularPolicy& pi) {
  detail::check_policy_shape(mdp, pi.probs, "policy_transition_matrix");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(mdp.num_states, mdp.num_states);
  for (int a = 0; a < mdp.num_actions; ++a)
    p.noalias() += pi.probs.col(a).asDiagonal() * mdp.transitions[a];
  return p;
}

Eigen::VectorXd policy_rewards(const Mdp& mdp, const TabularPolicy& pi) {
  detail::check_policy_shape(mdp, pi.probs, "policy_rewards");
  return (pi.probs.array() * mdp.rewards.array()).rowwise().sum();
}

ValueTable evaluate_policy(const Mdp& mdp, const TabularPolicy& pi, double tol) {
  detail::PolicyEval eval;
  eval.compute(mdp, pi.probs, tol, /*want_eta=*/false, /*want_q=*/false);
  return eval.v;
}

QTable q_values(const Mdp& mdp, const ValueTable& v) {
  if (v.size() != mdp.num_states)
    throw ShapeError("q_values: value table has " + std::to_string(v.size()) +
                     " entries, expected " + std::to_string(mdp.num_states));
  QTable q(mdp.num_states, mdp.num_actions);
  for (int a = 0; a < mdp.num_actions; ++a)
    q.col(a) = mdp.rewards.col(a) + mdp.gamma * (mdp.transitions[a] * v);
  return q;
}

ValueTable bellman_apply(const Mdp& mdp, const ValueTable& v) {
  return q_values(mdp, v).rowwise().maxCoeff();
}

ValueTable bellman_apply(const Mdp& mdp, const ValueTable& v, const TabularPolicy& pi) {
  detail::check_policy_shape(mdp, pi.probs, "bellman_apply");
  const QTable q = q_values(mdp, v);
  return (pi.probs.array() * q.array()).rowwise().sum();
}

Occupancy occupancy(const Mdp& mdp, const TabularPolicy& pi, double tol) {
  detail::PolicyEval eval;
  eval.compute(mdp, pi.probs, tol, /*want_eta=*/true, /*want_q=*/false);
  return eval.eta;
}

double objective(const Mdp& mdp, const TabularPolicy& pi) {
  return (1.0 - mdp.gamma) * mdp.rho.dot(evaluate_policy(mdp, pi));
}

OptimalSolution solve_optimal(const Mdp& mdp, TieBreak tiebreak) {
  mdp.validate();
  const int n = mdp.num_states;
  std::vector<int> actions(n, 0);
  // start greedy w.r.t. V = 0, i.e. argmax of the immediate reward
  for (int s = 0; s < n; ++s) actions[s] = tiebreak.pick(mdp.rewards.row(s));

  OptimalSolution sol;
  const long guard = 100 + 10L * n * mdp.num_actions;
  for (long it = 0; it < guard; ++it) {
    TabularPolicy pi = TabularPolicy::deterministic(actions, mdp.num_actions);
    const ValueTable v = evaluate_policy(mdp, pi);
    const QTable q = q_values(mdp, v);
    const double residual = (q.rowwise().maxCoeff() - v).lpNorm<Eigen::Infinity>();
    for (int s = 0; s < n; ++s) actions[s] = tiebreak.pick(q.row(s));
    if (residual <= defaults::kSolveTol) {
      sol.policy = TabularPolicy::deterministic(actions, mdp.num_actions);
      sol.value = v;
      sol.iterations = static_cast<int>(it) + 1;
      return sol;
    }
  }
  throw NumericError("solve_optimal: policy iteration failed to reach the residual target");
}

MdpSimulator::MdpSimulator(const Mdp& mdp) : mdp_(&mdp) {}

int MdpSimulator::sample_initial(std::mt19937_64& rng) const {
  return sample_index(mdp_->rho, rng);
}

MdpSimulator::Step MdpSimulator::step(int state, int action, std::mt19937_64& rng) const {
  const int next = sample_index(mdp_->transitions[action].row(state).transpose(), rng);
  return {mdp_->rewards(state, action), next};
}

}  // namespace aggmdp

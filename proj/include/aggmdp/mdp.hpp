#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aggmdp/types.hpp"

namespace aggmdp {

/// Finite discounted MDP (S, A, r, P, gamma, rho). Transition tensors are
/// stored per action: transitions[a](s, s') = P(s' | s, a).
struct Mdp {
  int num_states = 0;
  int num_actions = 0;
  Eigen::MatrixXd rewards;                  // |S| x |A|
  std::vector<Eigen::MatrixXd> transitions; // per action, |S| x |S|
  double gamma = 0.0;
  Eigen::VectorXd rho;                      // initial distribution over states

  /// Throws std::invalid_argument naming the first violated invariant:
  /// row-stochastic transitions, gamma in (0,1), rho a distribution.
  void validate(double tol = defaults::kStochasticTol) const;

  double max_abs_reward() const { return rewards.size() ? rewards.cwiseAbs().maxCoeff() : 0.0; }
};

/// Row-stochastic |S| x |A| policy table.
struct TabularPolicy {
  Eigen::MatrixXd probs;

  void validate(double tol = defaults::kStochasticTol) const;
  static TabularPolicy uniform(int num_states, int num_actions);
  static TabularPolicy deterministic(const std::vector<int>& actions, int num_actions);
};

/// P_pi(s, s') = sum_a pi(s,a) P(s'|s,a).
Eigen::MatrixXd policy_transition_matrix(const Mdp& mdp, const TabularPolicy& pi);

/// r_pi(s) = sum_a pi(s,a) r(s,a).
Eigen::VectorXd policy_rewards(const Mdp& mdp, const TabularPolicy& pi);

/// Fixed point of T_pi, solved exactly via (I - gamma P_pi) V = r_pi with one
/// step of iterative refinement. Guarantees ||T_pi V - V||_inf <= tol.
ValueTable evaluate_policy(const Mdp& mdp, const TabularPolicy& pi,
                           double tol = defaults::kSolveTol);

/// Q(s,a) = r(s,a) + gamma sum_{s'} P(s'|s,a) V(s').
QTable q_values(const Mdp& mdp, const ValueTable& v);

/// Bellman optimality operator T: (TV)(s) = max_a Q_V(s,a).
ValueTable bellman_apply(const Mdp& mdp, const ValueTable& v);

/// Policy backup T_pi: (T_pi V)(s) = r(s,pi(s)) + gamma sum P(s'|s,pi(s)) V(s').
ValueTable bellman_apply(const Mdp& mdp, const ValueTable& v, const TabularPolicy& pi);

/// Discounted state occupancy eta_pi = (1-gamma) sum_t gamma^t rho P_pi^t,
/// solved via the row system eta (I - gamma P_pi) = (1-gamma) rho.
Occupancy occupancy(const Mdp& mdp, const TabularPolicy& pi,
                    double tol = defaults::kSolveTol);

/// Scalar objective J(pi) = (1-gamma) rho . V_pi.
double objective(const Mdp& mdp, const TabularPolicy& pi);

struct OptimalSolution {
  TabularPolicy policy;  // deterministic, greedy w.r.t. value
  ValueTable value;      // ||T V - V||_inf <= kSolveTol
  int iterations = 0;
};

/// Exact policy iteration over deterministic policies.
OptimalSolution solve_optimal(const Mdp& mdp,
                              TieBreak tiebreak = TieBreak::smallest_index(defaults::kTieTol));

/// Sample access to an MDP: (state, action) -> (expected reward, next state).
/// Simulation-only algorithms go through this interface rather than the
/// transition tables.
class MdpSimulator {
 public:
  explicit MdpSimulator(const Mdp& mdp);

  int sample_initial(std::mt19937_64& rng) const;

  struct Step {
    double reward;
    int next_state;
  };
  Step step(int state, int action, std::mt19937_64& rng) const;

  int num_states() const { return mdp_->num_states; }
  int num_actions() const { return mdp_->num_actions; }
  double gamma() const { return mdp_->gamma; }

 private:
  const Mdp* mdp_;
};

// JSON file format:
//   {"gamma": g, "rho": [...], "rewards": [[...]], "transitions": [[[...]]]}
// The loader validates all invariants and reports the first violating index.
Mdp load_mdp_json(const std::string& path);
void save_mdp_json(const Mdp& mdp, const std::string& path);

}  // namespace aggmdp

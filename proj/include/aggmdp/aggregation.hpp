#pragma once

#include <random>
#include <string>
#include <vector>

#include "aggmdp/mdp.hpp"
#include "aggmdp/types.hpp"

namespace aggmdp {

/// Hard state aggregation: a surjective map phi from states onto segments
/// {0..m-1}, with the inverse segment lists kept alongside (states in
/// ascending order).
struct Aggregation {
  int num_segments = 0;
  std::vector<int> phi;                    // state -> segment
  std::vector<std::vector<int>> segments;  // segment -> states

  static Aggregation from_phi(int num_segments, std::vector<int> phi);
  static Aggregation identity(int num_states);

  int num_states() const { return static_cast<int>(phi.size()); }
  void validate() const;
};

/// Row-stochastic m x |A| parameter table theta of a state-aggregated policy.
struct AggregatedPolicy {
  Eigen::MatrixXd theta;

  void validate(double tol = defaults::kStochasticTol) const;
  static AggregatedPolicy uniform(int num_segments, int num_actions);
  static AggregatedPolicy deterministic(const std::vector<int>& actions, int num_actions);
};

/// pi(s, .) = theta(phi(s), .). The image is exactly Pi_phi.
TabularPolicy lift_policy(const Aggregation& agg, const AggregatedPolicy& theta);

/// Whether pi is constant over each segment (within tol).
bool is_aggregated(const Aggregation& agg, const TabularPolicy& pi,
                   double tol = defaults::kMembershipTol);

/// Inverse of lift_policy: segment-representative rows. Throws ShapeError if
/// pi is not in Pi_phi within tol.
AggregatedPolicy restrict_policy(const Aggregation& agg, const TabularPolicy& pi,
                                 double tol = defaults::kMembershipTol);

struct AggregatedQFit {
  Eigen::MatrixXd qhat;                 // m x |A|
  std::vector<int> zero_mass_segments;  // segments that used the fallback
};

/// Weighted least-squares fit of q over Q_phi; the minimizer is the
/// per-segment weighted mean qhat(i,a) = sum_{s in seg i} w(s) q(s,a) / W_i.
/// Segments with W_i <= 1e-300 fall back to the unweighted mean and are
/// flagged (the argmin is non-unique there).
AggregatedQFit fit_aggregated_q(const Aggregation& agg, const QTable& q,
                                const Eigen::VectorXd& weights);

/// Per-segment argmax of qhat, ties resolved by the rule.
AggregatedPolicy greedy_policy(const Eigen::MatrixXd& qhat, const TieBreak& tiebreak);
TabularPolicy greedy_from_aggregated_q(const Aggregation& agg, const Eigen::MatrixXd& qhat,
                                       const TieBreak& tiebreak);

/// Row-wise softmax of qhat, stabilized by max subtraction. Output rows are
/// strictly positive and sum to 1.
AggregatedPolicy softmax_policy(const Eigen::MatrixXd& qhat);
TabularPolicy softmax_from_aggregated_q(const Aggregation& agg, const Eigen::MatrixXd& qhat);

struct EpsilonPhiEstimate {
  double value = 0.0;
  bool deterministic_exhaustive = false;
  long long policies_evaluated = 0;
};

/// Certified lower estimate of the inherent aggregation error eps_phi: the
/// largest within-segment gap |Q_pi(s,a) - Q_pi(s',a)| seen over (a) up to
/// det_budget deterministic aggregated policies, enumerated in lexicographic
/// order (exhaustive when |A|^m <= det_budget), and (b) sample_budget
/// randomized aggregated policies with per-segment Dirichlet(1) rows.
EpsilonPhiEstimate estimate_epsilon_phi(const Mdp& mdp, const Aggregation& agg,
                                        long long det_budget, long long sample_budget,
                                        std::mt19937_64& rng);

/// max_i eta_{pi*}(phi^-1(i)) / rho(phi^-1(i)). Requires rho(phi^-1(i)) > 0.
double kappa_rho_bound(const Mdp& mdp, const Aggregation& agg);

// JSON file format: {"num_segments": m, "phi": [...]}. The loader checks
// surjectivity onto {0..m-1} and non-empty segments.
Aggregation load_aggregation_json(const std::string& path);
void save_aggregation_json(const Aggregation& agg, const std::string& path);

}  // namespace aggmdp

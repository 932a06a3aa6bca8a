#include "aggmdp/aggregation.hpp"

#include <algorithm>
#include <cmath>

#include "aggmdp/random_instances.hpp"
#include "eval_core.hpp"

namespace aggmdp {

Aggregation Aggregation::from_phi(int num_segments, std::vector<int> phi) {
  Aggregation agg;
  agg.num_segments = num_segments;
  agg.phi = std::move(phi);
  agg.segments.assign(num_segments, {});
  for (int s = 0; s < static_cast<int>(agg.phi.size()); ++s) {
    const int i = agg.phi[s];
    if (i < 0 || i >= num_segments)
      throw std::invalid_argument("aggregation: phi(" + std::to_string(s) + ") = " +
                                  std::to_string(i) + " is outside {0.." +
                                  std::to_string(num_segments - 1) + "}");
    agg.segments[i].push_back(s);  // ascending by construction
  }
  agg.validate();
  return agg;
}

Aggregation Aggregation::identity(int num_states) {
  std::vector<int> phi(num_states);
  for (int s = 0; s < num_states; ++s) phi[s] = s;
  return from_phi(num_states, std::move(phi));
}

void Aggregation::validate() const {
  if (num_segments <= 0) throw std::invalid_argument("aggregation: needs at least one segment");
  if (static_cast<int>(segments.size()) != num_segments)
    throw std::invalid_argument("aggregation: segment list size mismatch");
  for (int i = 0; i < num_segments; ++i)
    if (segments[i].empty())
      throw std::invalid_argument("aggregation: segment " + std::to_string(i) + " is empty");
}

void AggregatedPolicy::validate(double tol) const {
  for (int i = 0; i < theta.rows(); ++i) {
    double sum = 0.0;
    for (int a = 0; a < theta.cols(); ++a) {
      if (!(theta(i, a) >= 0.0) || !std::isfinite(theta(i, a)))
        throw std::invalid_argument("theta: entry (" + std::to_string(i) + "," +
                                    std::to_string(a) + ") is negative or non-finite");
      sum += theta(i, a);
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("theta: row " + std::to_string(i) + " sums to " +
                                  std::to_string(sum));
  }
}

AggregatedPolicy AggregatedPolicy::uniform(int num_segments, int num_actions) {
  AggregatedPolicy p;
  p.theta = Eigen::MatrixXd::Constant(num_segments, num_actions, 1.0 / num_actions);
  return p;
}

AggregatedPolicy AggregatedPolicy::deterministic(const std::vector<int>& actions,
                                                 int num_actions) {
  AggregatedPolicy p;
  p.theta = Eigen::MatrixXd::Zero(static_cast<int>(actions.size()), num_actions);
  for (int i = 0; i < static_cast<int>(actions.size()); ++i) p.theta(i, actions[i]) = 1.0;
  return p;
}

TabularPolicy lift_policy(const Aggregation& agg, const AggregatedPolicy& theta) {
  if (theta.theta.rows() != agg.num_segments)
    throw ShapeError("lift_policy: theta has " + std::to_string(theta.theta.rows()) +
                     " rows, aggregation has " + std::to_string(agg.num_segments) +
                     " segments");
  TabularPolicy pi;
  pi.probs.resize(agg.num_states(), theta.theta.cols());
  for (int s = 0; s < agg.num_states(); ++s) pi.probs.row(s) = theta.theta.row(agg.phi[s]);
  return pi;
}

bool is_aggregated(const Aggregation& agg, const TabularPolicy& pi, double tol) {
  if (pi.probs.rows() != agg.num_states()) return false;
  for (int i = 0; i < agg.num_segments; ++i) {
    const int rep = agg.segments[i].front();
    for (int s : agg.segments[i])
      if ((pi.probs.row(s) - pi.probs.row(rep)).lpNorm<Eigen::Infinity>() > tol) return false;
  }
  return true;
}

AggregatedPolicy restrict_policy(const Aggregation& agg, const TabularPolicy& pi, double tol) {
  if (!is_aggregated(agg, pi, tol))
    throw ShapeError("restrict_policy: policy is not constant over segments");
  AggregatedPolicy theta;
  theta.theta.resize(agg.num_segments, pi.probs.cols());
  for (int i = 0; i < agg.num_segments; ++i)
    theta.theta.row(i) = pi.probs.row(agg.segments[i].front());
  return theta;
}

AggregatedQFit fit_aggregated_q(const Aggregation& agg, const QTable& q,
                                const Eigen::VectorXd& weights) {
  if (q.rows() != agg.num_states())
    throw ShapeError("fit_aggregated_q: Q table has " + std::to_string(q.rows()) +
                     " rows, aggregation covers " + std::to_string(agg.num_states()) +
                     " states");
  if (weights.size() != q.rows())
    throw ShapeError("fit_aggregated_q: weight vector length mismatch");

  AggregatedQFit fit;
  fit.qhat.setZero(agg.num_segments, q.cols());
  for (int i = 0; i < agg.num_segments; ++i) {
    double mass = 0.0;
    for (int s : agg.segments[i]) {
      fit.qhat.row(i) += weights(s) * q.row(s);
      mass += weights(s);
    }
    if (mass <= defaults::kZeroMassWeight) {
      fit.qhat.row(i).setZero();
      for (int s : agg.segments[i]) fit.qhat.row(i) += q.row(s);
      fit.qhat.row(i) /= static_cast<double>(agg.segments[i].size());
      fit.zero_mass_segments.push_back(i);
    } else {
      fit.qhat.row(i) /= mass;
    }
  }
  return fit;
}

AggregatedPolicy greedy_policy(const Eigen::MatrixXd& qhat, const TieBreak& tiebreak) {
  AggregatedPolicy theta;
  theta.theta = Eigen::MatrixXd::Zero(qhat.rows(), qhat.cols());
  for (int i = 0; i < qhat.rows(); ++i) theta.theta(i, tiebreak.pick(qhat.row(i))) = 1.0;
  return theta;
}

TabularPolicy greedy_from_aggregated_q(const Aggregation& agg, const Eigen::MatrixXd& qhat,
                                       const TieBreak& tiebreak) {
  return lift_policy(agg, greedy_policy(qhat, tiebreak));
}

AggregatedPolicy softmax_policy(const Eigen::MatrixXd& qhat) {
  AggregatedPolicy theta;
  theta.theta.resize(qhat.rows(), qhat.cols());
  for (int i = 0; i < qhat.rows(); ++i) {
    const double mx = qhat.row(i).maxCoeff();
    Eigen::RowVectorXd e = (qhat.row(i).array() - mx).exp();
    theta.theta.row(i) = e / e.sum();
  }
  return theta;
}

TabularPolicy softmax_from_aggregated_q(const Aggregation& agg, const Eigen::MatrixXd& qhat) {
  return lift_policy(agg, softmax_policy(qhat));
}

namespace {

// Largest within-segment gap max_a max_{s,s' in seg} |Q(s,a) - Q(s',a)|.
double within_segment_gap(const Aggregation& agg, const QTable& q) {
  double gap = 0.0;
  for (int i = 0; i < agg.num_segments; ++i) {
    if (agg.segments[i].size() < 2) continue;
    for (int a = 0; a < q.cols(); ++a) {
      double lo = q(agg.segments[i][0], a), hi = lo;
      for (int s : agg.segments[i]) {
        lo = std::min(lo, q(s, a));
        hi = std::max(hi, q(s, a));
      }
      gap = std::max(gap, hi - lo);
    }
  }
  return gap;
}

}  // namespace

EpsilonPhiEstimate estimate_epsilon_phi(const Mdp& mdp, const Aggregation& agg,
                                        long long det_budget, long long sample_budget,
                                        std::mt19937_64& rng) {
  if (det_budget < 0 || sample_budget < 0)
    throw std::invalid_argument("estimate_epsilon_phi: budgets must be nonnegative");
  const int m = agg.num_segments;
  const int na = mdp.num_actions;

  EpsilonPhiEstimate est;
  detail::PolicyEval eval;
  AggregatedPolicy theta = AggregatedPolicy::uniform(m, na);

  auto probe = [&](const AggregatedPolicy& th) {
    eval.compute(mdp, lift_policy(agg, th).probs, defaults::kSolveTol, false, true);
    est.value = std::max(est.value, within_segment_gap(agg, eval.q));
    ++est.policies_evaluated;
  };

  // deterministic enumeration, lexicographic odometer from all-zeros
  long long det_total = 1;
  bool overflow = false;
  for (int i = 0; i < m && !overflow; ++i) {
    if (det_total > (1LL << 62) / na) overflow = true;
    else det_total *= na;
  }
  est.deterministic_exhaustive = !overflow && det_total <= det_budget;

  std::vector<int> actions(m, 0);
  const long long det_count = est.deterministic_exhaustive ? det_total : det_budget;
  for (long long k = 0; k < det_count; ++k) {
    probe(AggregatedPolicy::deterministic(actions, na));
    for (int i = m - 1; i >= 0; --i) {
      if (++actions[i] < na) break;
      actions[i] = 0;
    }
  }

  for (long long k = 0; k < sample_budget; ++k) {
    for (int i = 0; i < m; ++i) theta.theta.row(i) = dirichlet_uniform(na, rng).transpose();
    probe(theta);
  }
  return est;
}

double kappa_rho_bound(const Mdp& mdp, const Aggregation& agg) {
  const OptimalSolution opt = solve_optimal(mdp);
  const Occupancy eta = occupancy(mdp, opt.policy);
  double kappa = 0.0;
  for (int i = 0; i < agg.num_segments; ++i) {
    double rho_mass = 0.0, eta_mass = 0.0;
    for (int s : agg.segments[i]) {
      rho_mass += mdp.rho(s);
      eta_mass += eta(s);
    }
    if (!(rho_mass > 0.0))
      throw std::invalid_argument("kappa_rho_bound: segment " + std::to_string(i) +
                                  " has zero mass under rho");
    kappa = std::max(kappa, eta_mass / rho_mass);
  }
  return kappa;
}

}  // namespace aggmdp

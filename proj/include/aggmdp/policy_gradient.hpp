#pragma once

#include <random>

#include "aggmdp/aggregation.hpp"
#include "aggmdp/mdp.hpp"
#include "aggmdp/trace.hpp"
#include "aggmdp/types.hpp"

namespace aggmdp {

/// Gradient of J at pi. full(s,a) = eta_pi(s) Q_pi(s,a); aggregated(i,a) sums
/// full over the states of segment i (the chain rule for theta-level
/// parameters when pi is in Pi_phi).
struct GradientTable {
  Eigen::MatrixXd full;        // |S| x |A|
  Eigen::MatrixXd aggregated;  // m x |A|
};

GradientTable exact_gradient(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi);

/// Euclidean projection onto the probability simplex via sort-and-threshold:
/// sort descending, beta = (sum of the kept prefix - 1)/J, clip at zero.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& y);

struct PgConfig {
  double step_alpha = 0.0;     // > 0; a warning is recorded if it exceeds 1/L
  long max_iters = 100;
  double stationarity_tol = defaults::kStationarityTol;
  long record_every = 1;       // full records are kept every this many iters
};

/// Projected policy gradient on theta: theta_{t+1}(i,.) =
/// project_simplex(theta_t(i,.) + alpha * gbar_t(i,.)). Stops when the
/// stationarity gap falls to stationarity_tol or max_iters is reached. The
/// first and last iterates are always recorded.
RunTrace pg_projected_run(const Mdp& mdp, const Aggregation& agg,
                          const AggregatedPolicy& theta1, const PgConfig& cfg);

struct FwStepResult {
  TabularPolicy next;        // alpha * linearizer + (1-alpha) * pi
  TabularPolicy linearizer;  // argmax over Pi_phi of the linearized objective
};

/// One Frank-Wolfe step. The linear program over Pi_phi decomposes per
/// segment: the linearizer picks argmax_a gbar(i,a) in each segment,
/// evaluated through the eta-weighted fit (same argmax, and bit-identical
/// tie sets with the soft-API improvement step).
FwStepResult fw_step(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi,
                     double alpha, const TieBreak& tiebreak);

RunTrace fw_run(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi1,
                double alpha, const TieBreak& tiebreak, long iters);

/// Frank-Wolfe gap max_{pi' in Pi_phi} <grad J(pi), pi' - pi>
///   = sum_i max_a gbar(i,a) - sum_i sum_a gbar(i,a) theta(i,a).
/// Nonnegative; zero iff pi is first-order stationary on Pi_phi.
double stationarity_gap(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi);

/// Residual of the approximate Bellman equation satisfied at stationary
/// points: | max_{pi' in Pi_phi} E[T_{pi'} V_pi (S)] - E[V_pi(S)] |,
/// S ~ eta_pi. The max decomposes per segment.
double check_stationary_bellman(const Mdp& mdp, const Aggregation& agg,
                                const TabularPolicy& pi);

/// Compatible function approximation discrepancy
/// | <grad J(pi), pi2 - pi> - <qhat_pi, pi2 - pi>_{eta_pi x 1} | where
/// qhat_pi is the eta_pi-weighted projection of Q_pi onto Q_phi. Zero in
/// exact arithmetic for pi, pi2 in Pi_phi.
double compatible_approx_check(const Mdp& mdp, const Aggregation& agg,
                               const TabularPolicy& pi, const TabularPolicy& pi2);

/// Single-rollout unbiased estimate of grad_theta J(pi_theta): draw
/// s0 ~ eta_pi by rolling the policy to an independent Geometric(1-gamma)
/// horizon, draw a0 uniformly over actions, estimate Q(s0,a0) by a second
/// geometric rollout, and place |A| * qhat at (phi(s0), a0). All environment
/// access goes through MdpSimulator.
Eigen::MatrixXd stochastic_gradient(const Mdp& mdp, const Aggregation& agg,
                                    const AggregatedPolicy& theta, std::mt19937_64& rng);

/// Smoothness constant L = 2 gamma |A| ||r||_inf / (1-gamma)^2.
double smoothness_constant(const Mdp& mdp);

}  // namespace aggmdp

#pragma once

// Internal: reusable policy-evaluation workspace. One LU factorization of
// (I - gamma P_pi) serves both the value solve and the (transposed)
// occupancy solve; each solve gets one step of iterative refinement so the
// Bellman residuals sit well below the 1e-10 contract even at gamma = 0.99.

#include <Eigen/Dense>

#include "aggmdp/aggregation.hpp"
#include "aggmdp/mdp.hpp"

namespace aggmdp::detail {

struct PolicyEval {
  Eigen::MatrixXd p_pi;   // S x S
  Eigen::MatrixXd a_mat;  // I - gamma P_pi
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::VectorXd r_pi;
  Eigen::VectorXd v;
  Eigen::VectorXd eta;
  Eigen::MatrixXd q;      // S x A
  Eigen::VectorXd scratch;

  // pi_probs must be row-stochastic S x A. Fills v, q and (optionally) eta.
  void compute(const Mdp& mdp, const Eigen::MatrixXd& pi_probs, double tol, bool want_eta,
               bool want_q);

  double j(const Mdp& mdp) const { return (1.0 - mdp.gamma) * mdp.rho.dot(v); }
};

// out(i,a) = sum_{s in segment i} w(s) q(s,a), states in ascending order.
void segment_weighted_sums(const Aggregation& agg, const Eigen::MatrixXd& q,
                           const Eigen::VectorXd& w, Eigen::MatrixXd& out);

void check_policy_shape(const Mdp& mdp, const Eigen::MatrixXd& pi_probs, const char* where);

}  // namespace aggmdp::detail

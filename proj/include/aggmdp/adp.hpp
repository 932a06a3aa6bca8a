#pragma once

#include <optional>

#include "aggmdp/aggregation.hpp"
#include "aggmdp/mdp.hpp"
#include "aggmdp/trace.hpp"
#include "aggmdp/types.hpp"

namespace aggmdp {

enum class WeightMode {
  kFixed,    // fixed state-relevance weights w
  kOnPolicy  // eta_{pi_t} at every iteration
};

struct ApiConfig {
  WeightMode weight_mode = WeightMode::kFixed;
  Eigen::VectorXd fixed_weights;  // distribution over states; used when kFixed
  double step_alpha = 1.0;        // in (0,1]; 1 = hard update
  TieBreak tiebreak = TieBreak::smallest_index();
  long max_iters = 100;
  double cycle_tol = defaults::kCycleTol;
};

/// Approximate policy iteration. Each iteration evaluates pi_t exactly, fits
/// qhat_t by weighted least squares over Q_phi (weights w or eta_{pi_t}),
/// extracts the greedy aggregated policy, and blends:
///   pi_{t+1} = alpha * greedy + (1 - alpha) * pi_t.
/// alpha=1 with fixed weights is plain API; alpha=1 with on-policy weights is
/// API with adaptive state weighting; alpha<1 with on-policy weights is the
/// soft variant. Requires pi1 in Pi_phi. Cycle detection runs on the finished
/// trace.
RunTrace api_iterate(const Mdp& mdp, const Aggregation& agg, const TabularPolicy& pi1,
                     const ApiConfig& cfg);

/// Smallest period p and earliest start t such that
/// ||theta_{t'+p} - theta_{t'}||_inf <= tol for every recorded t' >= t.
std::optional<CycleInfo> detect_cycle(const RunTrace& trace,
                                      double tol = defaults::kCycleTol);

}  // namespace aggmdp

#pragma once

#include <random>

#include "aggmdp/aggregation.hpp"
#include "aggmdp/mdp.hpp"

namespace aggmdp {

// Deterministic, platform-independent draws on top of mt19937_64. The
// standard distribution objects are implementation-defined, so sampling is
// hand-rolled from raw 64-bit outputs.

/// Uniform on [0, 1), 53-bit resolution.
double uniform_double(std::mt19937_64& rng);

/// Uniform on (0, 1].
double uniform_double_positive(std::mt19937_64& rng);

/// Uniform integer in [0, n).
int uniform_int(int n, std::mt19937_64& rng);

/// Failures-before-success count with P(t) = (1-gamma) gamma^t.
long geometric_failures(double gamma, std::mt19937_64& rng);

/// Index drawn from a probability row (CDF walk).
int sample_index(const Eigen::Ref<const Eigen::VectorXd>& probs, std::mt19937_64& rng);

/// Symmetric Dirichlet(1): uniform on the simplex.
Eigen::VectorXd dirichlet_uniform(int k, std::mt19937_64& rng);

/// Dense random MDP: Dirichlet(1) transition rows, U[0,1) rewards, and an
/// everywhere-positive rho (Dirichlet blended half-and-half with uniform).
Mdp random_mdp(int num_states, int num_actions, double gamma, std::mt19937_64& rng);

/// Random surjective aggregation: each segment seeded with one state, the
/// remaining states assigned uniformly.
Aggregation random_aggregation(int num_states, int num_segments, std::mt19937_64& rng);

TabularPolicy random_policy(int num_states, int num_actions, std::mt19937_64& rng);
AggregatedPolicy random_aggregated_policy(int num_segments, int num_actions,
                                          std::mt19937_64& rng);

}  // namespace aggmdp

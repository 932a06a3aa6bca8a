#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aggmdp {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// Self-verification battery behind `check --suite ...`. Every check states
// its tolerance in the detail string and is deterministic given the seed.

/// Directional derivatives vs central finite differences on 50 random MDPs
/// (|S|<=20, |A|<=4, h=1e-6, relative error <= 1e-6), plus the compatible
/// function approximation identity (discrepancy <= 1e-10).
CheckReport check_gradients(std::uint64_t seed);

/// Simplex projection vs a brute-force support-enumeration oracle on 1e4
/// random vectors (lengths 2..16, agreement <= 1e-9); idempotence and
/// translation invariance within 1e-12.
CheckReport check_projection(std::uint64_t seed);

/// Mean of 1e5 stochastic gradients vs the exact gradient, componentwise
/// 3-standard-error test, on family-1 (m=5) and five random instances.
CheckReport check_unbiasedness(std::uint64_t seed);

/// Frank-Wolfe policy gradient vs soft API with identical inputs (alpha=0.1,
/// 100 iterations) on family 1 and 20 random instances; sequences must agree
/// within 1e-12 max-norm.
CheckReport check_equivalence(std::uint64_t seed);

/// Counterexample reproduction and bound battery: exact cycles of both
/// families, the finite-m regret floor, the 2 eps_phi robustness bound at a
/// certified stationary point, the stationary-point Bellman residual, eps_phi
/// recovery, and the exactness oracles (fixed-point iteration, truncated
/// occupancy series, performance-difference identity).
CheckReport check_bounds(std::uint64_t seed);

/// suite in {grad, proj, unbiased, equiv, bounds, all}.
CheckReport run_suite(const std::string& suite, std::uint64_t seed);

struct ExampleSpec;

/// Closed-form J values for family 1: the optimal policy and the two policies
/// of the fixed-weight API cycle, assembled from geometric series with no
/// linear solves. Independent oracle for the cycle-gap checks.
struct Example1ClosedForm {
  double j_opt = 0.0;
  double j_odd_iterates = 0.0;   // the alternating pi_1 and every pi_{2k+1}
  double j_even_iterates = 0.0;  // pi_2 and every pi_{2k}
  double min_cycle_gap = 0.0;
  double finite_m_floor = 0.0;   // -(gamma/2) r(m-1, Stay)
};
Example1ClosedForm example1_closed_form(const ExampleSpec& spec);

}  // namespace aggmdp

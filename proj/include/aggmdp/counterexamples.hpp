#pragma once

#include "aggmdp/aggregation.hpp"
#include "aggmdp/mdp.hpp"
#include "aggmdp/types.hpp"

namespace aggmdp {

// Action encoding shared by both counterexample families.
inline constexpr int kMove = 0;
inline constexpr int kStay = 1;

/// Recipe for the initial distribution of a counterexample instance with m
/// segments (n = 2m states; bottom states first, mirrors after).
struct RhoSpec {
  enum class Kind {
    kExample1Default,  // rho(bottom m) = 0.6, rest uniform
    kUniform,
    kFig2Ramp,         // rho(bottom s) = C*20s, rho(top s) = C*s
    kCustom
  };
  Kind kind = Kind::kExample1Default;
  Eigen::VectorXd custom;

  Eigen::VectorXd build(int m) const;

  static RhoSpec example1_default() { return {Kind::kExample1Default, {}}; }
  static RhoSpec uniform() { return {Kind::kUniform, {}}; }
  static RhoSpec fig2_ramp() { return {Kind::kFig2Ramp, {}}; }
  static RhoSpec custom_vector(Eigen::VectorXd rho) { return {Kind::kCustom, std::move(rho)}; }
};

/// Parameters of the two counterexample families. States come in mirror
/// pairs: bottom 1..m map onto segments 1..m together with their mirrors.
/// Everything here uses the 1-based convention of the write-ups; the built
/// MDPs are 0-based (bottom s -> index s-1, mirror -> index m+s-1).
struct ExampleSpec {
  int m = 5;             // segments; n = 2m states
  double gamma = 0.99;
  double eps_phi = 1.0;  // construction gap; the inherent aggregation error
  double c = 0.5;        // stay-cost parameter, 0 < c <= eps_phi/2
  RhoSpec rho = RhoSpec::example1_default();
  TieBreak tiebreak = TieBreak::prefer_action(kStay, defaults::kTieTol);

  static ExampleSpec fig1();  // m=100, gamma=0.99, eps=1, c=0.5, prefer-Stay
  static ExampleSpec fig2();  // m=200, gamma=0.99, eps=1, c=1/3, ramp rho

  void validate(bool require_odd_m) const;
};

/// c infinitesimally below eps_phi/2: removes the engineered greedy ties so
/// that no tie-breaking rule is needed.
inline double tieless_c(double eps_phi) { return 0.5 * eps_phi * (1.0 - 1e-9); }

struct ExampleInstance {
  Mdp mdp;
  Aggregation agg;
  TabularPolicy initial_policy;    // the alternating pi_1, lifted
  AggregatedPolicy initial_theta;  // same policy at segment level
};

/// Example family 1 (fixed-weight API fails). Chain of m bottom states:
/// Move steps down with zero reward, Stay self-loops with cost
/// r(s,Stay) = gamma r(s-1,Stay) - c. Mirror states share transitions with
/// their partner and add eps_phi to the Stay reward. State 1 is absorbing
/// with both actions identical. m >= 3; for even m the initial policy uses
/// the parity completion of the alternating assignment.
ExampleInstance build_example1(const ExampleSpec& spec);

/// Example family 2 (on-policy-weight API fails). Move steps down to bottom
/// s-1 from both partners with zero reward; Stay swaps a state with its
/// mirror. Mirror-row Stay rewards follow the recursion; bottom rows add
/// eps_phi. Segment 1 swaps under both actions. m >= 3, even allowed.
ExampleInstance build_example2(const ExampleSpec& spec);

/// The alternating initial policy of the cycling construction: segment 1
/// plays Stay, even segments play Stay, odd segments >= 3 play Move.
/// Requires odd m >= 3 (the canonical construction assumes odd m; the
/// builders extend it to even m by the same parity rule).
AggregatedPolicy alternating_initial_policy(int m);

/// Asymptotic per-period regret floor of fixed-weight API on family 1:
/// gamma * eps_phi / (4 (1-gamma)).
double regret_lower_bound(double gamma, double eps_phi);

}  // namespace aggmdp

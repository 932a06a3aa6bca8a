#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace aggmdp {

// V(s), Q(s,a) and eta(s) tables. Shapes are |S|, |S|x|A| and |S|.
using ValueTable = Eigen::VectorXd;
using QTable = Eigen::MatrixXd;
using Occupancy = Eigen::VectorXd;

/// Dimension mismatch between two inputs (policy vs MDP, value vs MDP, ...).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear solve produced non-finite values or failed its residual contract.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace defaults {
// Module tolerance constants. The callers that need different values take
// them as parameters.
inline constexpr double kSolveTol = 1e-10;       // Bellman residual of solves
inline constexpr double kStochasticTol = 1e-12;  // row-sum / distribution checks
inline constexpr double kCycleTol = 1e-9;        // policy-table cycle detection
inline constexpr double kStationarityTol = 1e-8; // Frank-Wolfe gap stopping
inline constexpr double kTieTol = 1e-9;          // greedy tie detection (counterexamples)
inline constexpr double kMembershipTol = 1e-12;  // Pi_phi membership checks
inline constexpr double kZeroMassWeight = 1e-300;
}  // namespace defaults

/// Deterministic argmax tie resolution. `tol` widens the tie set: entries
/// within `tol` of the row maximum count as tied. The default is exact
/// comparison; the shipped counterexamples use kTieTol because their
/// constructions produce ties that floating point realizes only
/// approximately.
struct TieBreak {
  enum class Kind { kSmallestIndex, kLargestIndex, kPreferAction };

  Kind kind = Kind::kSmallestIndex;
  int preferred = 0;  // only read for kPreferAction
  double tol = 0.0;

  static TieBreak smallest_index(double tol = 0.0) { return {Kind::kSmallestIndex, 0, tol}; }
  static TieBreak largest_index(double tol = 0.0) { return {Kind::kLargestIndex, 0, tol}; }
  static TieBreak prefer_action(int action, double tol = 0.0) {
    return {Kind::kPreferAction, action, tol};
  }

  /// Index of the maximal entry of `row`, ties resolved by this rule.
  template <class Derived>
  int pick(const Eigen::MatrixBase<Derived>& row) const {
    const int n = static_cast<int>(row.size());
    if (n == 0) throw ShapeError("TieBreak::pick: empty row");
    double best = row(0);
    for (int i = 1; i < n; ++i) best = std::max(best, double(row(i)));
    const double cutoff = best - tol;
    int first = -1, last = -1;
    bool preferred_tied = false;
    for (int i = 0; i < n; ++i) {
      if (row(i) >= cutoff) {
        if (first < 0) first = i;
        last = i;
        if (i == preferred) preferred_tied = true;
      }
    }
    switch (kind) {
      case Kind::kLargestIndex: return last;
      case Kind::kPreferAction: return preferred_tied ? preferred : first;
      case Kind::kSmallestIndex: default: return first;
    }
  }

  std::string describe() const {
    switch (kind) {
      case Kind::kLargestIndex: return "largest-index";
      case Kind::kPreferAction: return "prefer-action(" + std::to_string(preferred) + ")";
      case Kind::kSmallestIndex: default: return "smallest-index";
    }
  }
};

}  // namespace aggmdp

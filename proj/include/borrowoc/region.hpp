#pragma once

// Rejection regions of the one-arm borrowing test in sample-mean space, and
// exact rejection probabilities computed from them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "borrowoc/borrow.hpp"
#include "borrowoc/scenario.hpp"
#include "borrowoc/statmath.hpp"

namespace borrowoc {

/// Union of disjoint open intervals of the current sample mean on which the
/// test rejects, sorted ascending.
struct RejectionRegion {
  std::vector<Interval> intervals;
  Interval scan_bounds{-1.0, 1.0};
  double refinement_tol = kDefaultSolverTol;
  /// Set when the decision had the same value over the whole scan range, so
  /// the region is empty or the whole line.
  bool trivial = false;
  /// Set when the coarse and fine scans disagreed and a denser scan was used.
  bool rescanned = false;
};

inline constexpr std::size_t kRegionScanPoints = 4001;

/// Locates every boundary of {dbar : P(theta > theta0 | dbar; dE) > c}.
RejectionRegion rejection_region(const ScenarioOneArm& scen, double external_mean,
                                 const BorrowingMethod& method, double c);

/// As above with c taken from the scenario.
RejectionRegion rejection_region(const ScenarioOneArm& scen, double external_mean,
                                 const BorrowingMethod& method);

/// P(Dbar in region) for Dbar ~ N(theta, sigma^2 / n).
double rejection_prob(const RejectionRegion& region, double theta, std::int64_t n,
                      double sigma);

std::size_t interval_count(const RejectionRegion& region) noexcept;

}  // namespace borrowoc

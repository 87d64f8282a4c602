#pragma once

// Two-arm hybrid-control trial: external data borrowed into the control arm,
// flat prior on the treatment arm.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "borrowoc/borrow.hpp"
#include "borrowoc/scenario.hpp"
#include "borrowoc/statmath.hpp"

namespace borrowoc {

/// Rejection probabilities along standardized offsets x = (theta_c - m) / sigma,
/// where m is the external mean (fixed external data) or theta_E (random).
struct OCProfile {
  std::vector<double> grid;
  /// Null rejection probability at theta_t = theta_c.
  std::vector<double> t1e;
  /// Rejection probability at theta_t = theta_c + theta1. Empty for t1e-only profiles.
  std::vector<double> power_borrow;
  /// Supremum of the null rejection probability over theta_c.
  double alphaB_max = 0.0;
  double argmax_offset = 0.0;
  /// Power of the two-sample z-test at level alphaB_max (independent of theta_c).
  double power_calibrated = 0.0;
  std::vector<double> power_diff;
};

/// P(reject) for true means (theta_c, theta_t) and a fixed external mean.
/// Fixed power prior and no borrowing use the exact Gaussian closed form,
/// Empirical Bayes integrates over the control mean.
double reject_prob_two_arm(const ScenarioTwoArm& scen, double theta_c, double theta_t,
                           double external_mean, const BorrowingMethod& method,
                           double tol = kDefaultQuadTol);

/// Same probability by quadrature over the control mean for every method.
double reject_prob_two_arm_quadrature(const ScenarioTwoArm& scen, double theta_c,
                                      double theta_t, double external_mean,
                                      const BorrowingMethod& method,
                                      double tol = kDefaultQuadTol);

/// Power of the two-sample z-test without borrowing at level alpha.
double power_two_sample(double alpha, const ScenarioTwoArm& scen);

/// Maximum of a null rejection profile h(x) over offsets: [-6, 6], extended by
/// doubling while the profile still rises towards an edge and has not
/// saturated at 1.
Maximum null_boundary_max(const std::function<double(double)>& h);

OCProfile t1e_profile(const ScenarioTwoArm& scen, double external_mean,
                      const BorrowingMethod& method, std::span<const double> offsets,
                      double tol = kDefaultQuadTol);

OCProfile power_profile(const ScenarioTwoArm& scen, double external_mean,
                        const BorrowingMethod& method, std::span<const double> offsets,
                        double tol = kDefaultQuadTol);

/// Outer expectation over the external mean by Monte Carlo instead of
/// quadrature.
struct ExternalMonteCarlo {
  std::size_t nsim = 10000;
  std::uint64_t seed = 0;
  bool observation_level = false;
};

/// Profile when the external mean is random, Dbar_E ~ N(theta_e, sigmaE^2/nE).
/// Offsets are (theta_c - theta_e) / sigma.
OCProfile oc_random_external_two_arm(const ScenarioTwoArm& scen, double theta_e,
                                     const BorrowingMethod& method,
                                     std::span<const double> offsets,
                                     double tol = kDefaultQuadTol,
                                     const std::optional<ExternalMonteCarlo>& mc = std::nullopt);

}  // namespace borrowoc

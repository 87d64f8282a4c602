#pragma once

// Operating characteristics of the one-arm borrowing test and of the z-test
// calibrated to its type I error rate.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "borrowoc/borrow.hpp"
#include "borrowoc/scenario.hpp"
#include "borrowoc/simulation.hpp"

namespace borrowoc {

/// Fixed external mean: type I error (sup over theta <= theta0), power at
/// theta1, and power of the z-test run at that type I error rate.
OCPoint oc_fixed_external(const ScenarioOneArm& scen, double external_mean,
                          const BorrowingMethod& method);

/// Closed-form type I error of the fixed power prior test for a fixed
/// external mean. delta = 0 gives the nominal level.
double t1e_closed_form_fixed_pp(const ScenarioOneArm& scen, double external_mean,
                                double delta);

/// Power at theta1 of the one-sided z-test at level alpha_b.
double power_calibrated(double alpha_b, const ScenarioOneArm& scen);

/// Closed-form characteristics of the fixed power prior test when the
/// external mean is random with generating parameter theta_e.
OCPoint oc_random_external_fixed_pp(const ScenarioOneArm& scen, double theta_e,
                                    double delta);

struct RandomExternalEstimate {
  OCPoint point;
  /// Monte Carlo standard errors of point.t1e_borrow and point.power_borrow.
  double t1e_se = 0.0;
  double power_se = 0.0;
  std::size_t nsim = 0;
};

/// Per-replicate values behind oc_random_external_mc.
struct RandomExternalDraws {
  std::vector<double> external_mean;
  /// Rejection probability (or literal decision) under theta0.
  std::vector<double> null_rate;
  /// Rejection probability (or literal decision) under theta1.
  std::vector<double> alt_rate;
};

RandomExternalDraws random_external_replicates(const ScenarioOneArm& scen, double theta_e,
                                               const BorrowingMethod& method,
                                               std::size_t nsim, std::uint64_t seed,
                                               const SimulationOptions& options = {});

/// Literal Monte Carlo version of oc_fixed_external: rejection probabilities
/// estimated from options.inner_draws current data sets per hypothesis, drawn
/// from stream (seed, stream_id).
OCPoint oc_fixed_external_mc(const ScenarioOneArm& scen, double external_mean,
                             const BorrowingMethod& method, std::uint64_t seed,
                             std::uint64_t stream_id, const SimulationOptions& options);

/// Random external data by simulation. Each replicate draws one external mean
/// from stream (seed, replicate); by default the current-data rejection
/// probabilities at theta0 and theta1 are then evaluated exactly from the
/// rejection region. options.literal_mc draws one current data set under each
/// of theta0 and theta1 instead and records the test decisions.
RandomExternalEstimate oc_random_external_mc(const ScenarioOneArm& scen, double theta_e,
                                             const BorrowingMethod& method,
                                             std::size_t nsim, std::uint64_t seed,
                                             const SimulationOptions& options = {});

}  // namespace borrowoc

#pragma once

#include <cstdint>
#include <optional>

namespace borrowoc {

/// One-arm trial: H0: theta <= theta0 vs H1: theta > theta0, normal endpoint
/// with known sigma, external data of size nE with sd sigmaE. Defaults are
/// the n = 25 / nE = 20 reference configuration.
struct ScenarioOneArm {
  std::int64_t n = 25;
  double sigma = 1.0;
  double theta0 = 0.0;
  double alpha = 0.025;
  /// Posterior-probability threshold; 1 - alpha when unset.
  std::optional<double> c;
  std::int64_t nE = 20;
  double sigmaE = 1.0;
  /// Point alternative for power.
  double theta1 = 0.5;

  double threshold() const noexcept { return c.value_or(1.0 - alpha); }
  /// Standard error of the current mean.
  double sigma_n() const noexcept;
  /// Standard error of the external mean.
  double sigma_nE() const noexcept;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Two-arm hybrid-control trial: H0: theta_t <= theta_c, external data
/// augment the control arm only. Defaults are nc = nt = 15, nE = 10.
struct ScenarioTwoArm {
  std::int64_t nc = 15;
  std::int64_t nt = 15;
  std::int64_t nE = 10;
  double sigma = 1.0;
  double sigmaE = 1.0;
  /// Treatment effect theta_t - theta_c at which power is evaluated.
  double theta1 = 1.0;
  double alpha = 0.025;
  std::optional<double> c;
  /// Control mean used when a single power value per external data set is
  /// needed (replicate studies).
  double theta_c = 0.0;

  double threshold() const noexcept { return c.value_or(1.0 - alpha); }
  void validate() const;
};

/// Operating characteristics of one borrowing test against the test
/// calibrated to its type I error rate.
struct OCPoint {
  double t1e_borrow = 0.0;
  double power_borrow = 0.0;
  double power_calibrated = 0.0;
  double power_diff = 0.0;

  static OCPoint make(double t1e, double power_borrow, double power_calibrated) noexcept {
    return {t1e, power_borrow, power_calibrated, power_borrow - power_calibrated};
  }
};

}  // namespace borrowoc

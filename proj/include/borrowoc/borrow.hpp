#pragma once

// Power-prior posteriors for a normal mean with known variance, and the
// posterior-probability test decisions built on them.

#include <cstdint>
#include <span>
#include <string>

#include "borrowoc/statmath.hpp"

namespace borrowoc {

/// Sufficient statistics of one arm: sample mean, sample size and the known
/// per-observation standard deviation.
struct ArmSummary {
  double mean;
  std::int64_t n;
  double sigma;

  ArmSummary(double mean, std::int64_t n, double sigma);

  /// Reduces raw observations to their mean.
  static ArmSummary from_observations(std::span<const double> values, double sigma);

  /// Variance of the sample mean, sigma^2 / n.
  double mean_variance() const noexcept;
};

enum class BorrowingKind { kNone, kFixedPowerPrior, kEmpiricalBayes };

class BorrowingMethod {
 public:
  static BorrowingMethod none() noexcept;
  static BorrowingMethod fixed(double delta);
  static BorrowingMethod empirical_bayes() noexcept;

  BorrowingKind kind() const noexcept { return kind_; }
  /// Power-prior weight; only meaningful for kFixedPowerPrior.
  double delta() const noexcept { return delta_; }

  /// "none", "fixed-pp" or "eb-pp".
  std::string name() const;

  friend bool operator==(const BorrowingMethod&, const BorrowingMethod&) = default;

 private:
  BorrowingMethod(BorrowingKind kind, double delta) : kind_(kind), delta_(delta) {}

  BorrowingKind kind_;
  double delta_;
};

struct NormalPosterior {
  double mean;
  double sd;
};

/// Flat initial prior, external likelihood raised to delta in [0, 1].
NormalPosterior fixed_pp_posterior(const ArmSummary& current, const ArmSummary& external,
                                   double delta);

/// Empirical Bayes power-prior weight: the maximizer over (0, 1] of the
/// marginal likelihood N(dbar; dbar_E, sigma^2/n + sigma_E^2/(delta n_E)).
double eb_delta(const ArmSummary& current, const ArmSummary& external) noexcept;

/// Same estimator by direct numerical maximization of the log marginal
/// likelihood over [1e-12, 1].
double eb_delta_numeric(const ArmSummary& current, const ArmSummary& external,
                        double tol = kDefaultSolverTol);

/// Posterior of the current-arm mean under the given borrowing method.
NormalPosterior borrowing_posterior(const ArmSummary& current, const ArmSummary& external,
                                    const BorrowingMethod& method);

/// P(theta > theta0 | data).
double posterior_tail(const NormalPosterior& post, double theta0) noexcept;

/// Standardized distance (mean - theta0) / sd. posterior_tail > c is
/// equivalent to posterior_z > norm_quantile(c).
double posterior_z(const NormalPosterior& post, double theta0) noexcept;

/// Bayesian test with borrowing: rejects iff P(theta > theta0 | d; d_E) > c.
bool decide_borrow(const ArmSummary& current, const ArmSummary& external,
                   const BorrowingMethod& method, double theta0, double c);

/// One-sided z-test at level alpha; alpha = 0 never rejects and alpha = 1
/// always rejects.
bool decide_no_borrow(const ArmSummary& current, double theta0, double alpha);

}  // namespace borrowoc

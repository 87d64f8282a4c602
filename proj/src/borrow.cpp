#include "borrowoc/borrow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace borrowoc {

ArmSummary::ArmSummary(double mean_, std::int64_t n_, double sigma_)
    : mean(mean_), n(n_), sigma(sigma_) {
  if (!std::isfinite(mean)) throw std::invalid_argument("ArmSummary: mean must be finite");
  if (n < 1) throw std::invalid_argument("ArmSummary: n must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("ArmSummary: sigma must be positive and finite");
  }
}

ArmSummary ArmSummary::from_observations(std::span<const double> values, double sigma) {
  if (values.empty()) throw std::invalid_argument("ArmSummary: no observations");
  const double mean = compensated_sum(values) / static_cast<double>(values.size());
  return ArmSummary(mean, static_cast<std::int64_t>(values.size()), sigma);
}

double ArmSummary::mean_variance() const noexcept {
  return sigma * sigma / static_cast<double>(n);
}

BorrowingMethod BorrowingMethod::none() noexcept {
  return BorrowingMethod(BorrowingKind::kNone, 0.0);
}

BorrowingMethod BorrowingMethod::fixed(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("BorrowingMethod: delta must lie in [0, 1]");
  }
  return BorrowingMethod(BorrowingKind::kFixedPowerPrior, delta);
}

BorrowingMethod BorrowingMethod::empirical_bayes() noexcept {
  return BorrowingMethod(BorrowingKind::kEmpiricalBayes, 0.0);
}

std::string BorrowingMethod::name() const {
  switch (kind_) {
    case BorrowingKind::kNone:
      return "none";
    case BorrowingKind::kFixedPowerPrior:
      return "fixed-pp";
    case BorrowingKind::kEmpiricalBayes:
      return "eb-pp";
  }
  return "unknown";
}

NormalPosterior fixed_pp_posterior(const ArmSummary& current, const ArmSummary& external,
                                   double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("fixed_pp_posterior: delta must lie in [0, 1]");
  }
  const double current_precision = 1.0 / current.mean_variance();
  const double prior_precision = delta / external.mean_variance();
  const double precision = current_precision + prior_precision;
  const double mean =
      (current_precision * current.mean + prior_precision * external.mean) / precision;
  return {mean, 1.0 / std::sqrt(precision)};
}

double eb_delta(const ArmSummary& current, const ArmSummary& external) noexcept {
  const double diff = current.mean - external.mean;
  const double v_current = current.mean_variance();
  const double v_external = external.mean_variance();
  const double spread = std::max(diff * diff, v_current + v_external);
  return std::min(1.0, v_external / (spread - v_current));
}

double eb_delta_numeric(const ArmSummary& current, const ArmSummary& external,
                        double tol) {
  const double diff = current.mean - external.mean;
  const double v_current = current.mean_variance();
  const double v_external = external.mean_variance();
  auto log_marginal = [&](double delta) {
    const double v = v_current + v_external / delta;
    return -0.5 * std::log(v) - 0.5 * diff * diff / v;
  };
  return maximize_1d(log_marginal, Interval(1e-12, 1.0), tol).argmax;
}

NormalPosterior borrowing_posterior(const ArmSummary& current, const ArmSummary& external,
                                    const BorrowingMethod& method) {
  switch (method.kind()) {
    case BorrowingKind::kNone:
      return {current.mean, std::sqrt(current.mean_variance())};
    case BorrowingKind::kFixedPowerPrior:
      return fixed_pp_posterior(current, external, method.delta());
    case BorrowingKind::kEmpiricalBayes:
      return fixed_pp_posterior(current, external, eb_delta(current, external));
  }
  throw std::logic_error("borrowing_posterior: unknown method");
}

double posterior_tail(const NormalPosterior& post, double theta0) noexcept {
  return norm_sf((theta0 - post.mean) / post.sd);
}

double posterior_z(const NormalPosterior& post, double theta0) noexcept {
  return (post.mean - theta0) / post.sd;
}

bool decide_borrow(const ArmSummary& current, const ArmSummary& external,
                   const BorrowingMethod& method, double theta0, double c) {
  if (!(c >= 0.0 && c < 1.0)) {
    throw std::invalid_argument("decide_borrow: c must lie in [0, 1)");
  }
  return posterior_tail(borrowing_posterior(current, external, method), theta0) > c;
}

bool decide_no_borrow(const ArmSummary& current, double theta0, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("decide_no_borrow: alpha must lie in [0, 1]");
  }
  if (alpha == 0.0) return false;
  if (alpha == 1.0) return true;
  const double z = (current.mean - theta0) / std::sqrt(current.mean_variance());
  return z > -norm_quantile(alpha);
}

}  // namespace borrowoc

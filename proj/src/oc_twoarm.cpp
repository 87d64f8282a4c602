#include "borrowoc/oc_twoarm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "borrowoc/rng.hpp"
#include "borrowoc/simulation.hpp"

namespace borrowoc {

namespace {

constexpr double kCoreOffset = 6.0;
constexpr int kMaxDoublings = 6;
constexpr double kSaturated = 1.0 - 1e-9;
constexpr double kSlopeStep = 0.05;

double closed_form(const ScenarioTwoArm& scen, double theta_c, double theta_t,
                   double external_mean, double delta) {
  const double var = scen.sigma * scen.sigma;
  const double current_precision = static_cast<double>(scen.nc) / var;
  const double prior_precision =
      delta * static_cast<double>(scen.nE) / (scen.sigmaE * scen.sigmaE);
  const double precision = current_precision + prior_precision;
  const double w = current_precision / precision;
  const double post_sd = std::sqrt(var / static_cast<double>(scen.nt) + 1.0 / precision);
  // Reject iff dbar_t - w dbar_c > (1 - w) dbar_E + z_c * post_sd, where the
  // lhs is N(theta_t - w theta_c, var/nt + w^2 var/nc).
  const double cut = (1.0 - w) * external_mean + norm_quantile(scen.threshold()) * post_sd;
  const double sd = std::sqrt(var / static_cast<double>(scen.nt) +
                              w * w * var / static_cast<double>(scen.nc));
  return norm_sf((cut - (theta_t - w * theta_c)) / sd);
}

}  // namespace

double reject_prob_two_arm_quadrature(const ScenarioTwoArm& scen, double theta_c,
                                      double theta_t, double external_mean,
                                      const BorrowingMethod& method, double tol) {
  scen.validate();
  const ArmSummary external(external_mean, scen.nE, scen.sigmaE);
  const double se_c = scen.sigma / std::sqrt(static_cast<double>(scen.nc));
  const double var_t = scen.sigma * scen.sigma / static_cast<double>(scen.nt);
  const double se_t = std::sqrt(var_t);
  const double z_c = norm_quantile(scen.threshold());

  auto integrand = [&](double dbar_c) {
    const ArmSummary control(dbar_c, scen.nc, scen.sigma);
    const NormalPosterior post = borrowing_posterior(control, external, method);
    const double cut = post.mean + z_c * std::sqrt(var_t + post.sd * post.sd);
    return norm_pdf((dbar_c - theta_c) / se_c) / se_c * norm_sf((cut - theta_t) / se_t);
  };

  // Empirical Bayes weight has kinks where the conflict switch flips.
  const double reach = std::sqrt(se_c * se_c + external.mean_variance());
  const double kinks[] = {external_mean - reach, external_mean + reach};
  return std::clamp(integrate_piecewise(integrand, Interval(-kInf, kInf), kinks, tol,
                                        GaussianScale{theta_c, se_c}),
                    0.0, 1.0);
}

double reject_prob_two_arm(const ScenarioTwoArm& scen, double theta_c, double theta_t,
                           double external_mean, const BorrowingMethod& method,
                           double tol) {
  switch (method.kind()) {
    case BorrowingKind::kNone:
      scen.validate();
      return closed_form(scen, theta_c, theta_t, external_mean, 0.0);
    case BorrowingKind::kFixedPowerPrior:
      scen.validate();
      return closed_form(scen, theta_c, theta_t, external_mean, method.delta());
    case BorrowingKind::kEmpiricalBayes:
      return reject_prob_two_arm_quadrature(scen, theta_c, theta_t, external_mean, method,
                                            tol);
  }
  throw std::logic_error("reject_prob_two_arm: unknown method");
}

double power_two_sample(double alpha, const ScenarioTwoArm& scen) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("power_two_sample: alpha must lie in [0, 1]");
  }
  if (alpha == 0.0) return 0.0;
  if (alpha == 1.0) return 1.0;
  const double var = scen.sigma * scen.sigma;
  const double se = std::sqrt(var / static_cast<double>(scen.nc) +
                              var / static_cast<double>(scen.nt));
  return norm_cdf(scen.theta1 / se + norm_quantile(alpha));
}

Maximum null_boundary_max(const std::function<double(double)>& h) {
  Maximum best = maximize_1d(h, Interval(-kCoreOffset, kCoreOffset));

  double hi = kCoreOffset;
  for (int k = 0; k < kMaxDoublings; ++k) {
    const double edge = h(hi);
    if (edge > kSaturated || !(edge - h(hi - kSlopeStep) > 0.0)) break;
    const Maximum m = maximize_1d(h, Interval(hi, 2.0 * hi));
    if (m.value > best.value) best = m;
    hi *= 2.0;
  }
  double lo = -kCoreOffset;
  for (int k = 0; k < kMaxDoublings; ++k) {
    const double edge = h(lo);
    if (edge > kSaturated || !(edge - h(lo + kSlopeStep) > 0.0)) break;
    const Maximum m = maximize_1d(h, Interval(2.0 * lo, lo));
    if (m.value >= best.value) best = m;
    lo *= 2.0;
  }
  return best;
}

namespace {

using RejectFn = std::function<double(double theta_c, double theta_t)>;

OCProfile build_profile(const ScenarioTwoArm& scen, double center,
                        std::span<const double> offsets, const RejectFn& reject,
                        bool with_power) {
  scen.validate();
  OCProfile profile;
  profile.grid.assign(offsets.begin(), offsets.end());
  for (double x : profile.grid) {
    if (!std::isfinite(x)) throw std::invalid_argument("profile: offsets must be finite");
  }
  auto null_at = [&](double x) {
    const double theta_c = center + x * scen.sigma;
    return reject(theta_c, theta_c);
  };

  profile.t1e.reserve(offsets.size());
  for (double x : profile.grid) profile.t1e.push_back(null_at(x));

  const Maximum best = null_boundary_max(null_at);
  profile.alphaB_max = best.value;
  profile.argmax_offset = best.argmax;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    if (profile.t1e[i] > profile.alphaB_max) {
      profile.alphaB_max = profile.t1e[i];
      profile.argmax_offset = profile.grid[i];
    }
  }
  profile.power_calibrated = power_two_sample(profile.alphaB_max, scen);

  if (with_power) {
    profile.power_borrow.reserve(offsets.size());
    profile.power_diff.reserve(offsets.size());
    for (double x : profile.grid) {
      const double theta_c = center + x * scen.sigma;
      const double p = reject(theta_c, theta_c + scen.theta1);
      profile.power_borrow.push_back(p);
      profile.power_diff.push_back(p - profile.power_calibrated);
    }
  }
  return profile;
}

}  // namespace

OCProfile t1e_profile(const ScenarioTwoArm& scen, double external_mean,
                      const BorrowingMethod& method, std::span<const double> offsets,
                      double tol) {
  return build_profile(
      scen, external_mean, offsets,
      [&](double tc, double tt) {
        return reject_prob_two_arm(scen, tc, tt, external_mean, method, tol);
      },
      false);
}

OCProfile power_profile(const ScenarioTwoArm& scen, double external_mean,
                        const BorrowingMethod& method, std::span<const double> offsets,
                        double tol) {
  return build_profile(
      scen, external_mean, offsets,
      [&](double tc, double tt) {
        return reject_prob_two_arm(scen, tc, tt, external_mean, method, tol);
      },
      true);
}

OCProfile oc_random_external_two_arm(const ScenarioTwoArm& scen, double theta_e,
                                     const BorrowingMethod& method,
                                     std::span<const double> offsets, double tol,
                                     const std::optional<ExternalMonteCarlo>& mc) {
  scen.validate();
  const double se_e = scen.sigmaE / std::sqrt(static_cast<double>(scen.nE));
  const double inner_tol = tol / 10.0;

  RejectFn reject;
  if (mc) {
    if (mc->nsim < 1) throw std::invalid_argument("oc_random_external_two_arm: nsim must be >= 1");
    std::vector<double> draws(mc->nsim);
    for (std::size_t i = 0; i < mc->nsim; ++i) {
      RngStream rng(mc->seed, i);
      draws[i] = draw_external_mean(rng, theta_e, scen.nE, scen.sigmaE, mc->observation_level);
    }
    reject = [&scen, &method, inner_tol, draws](double tc, double tt) {
      std::vector<double> values(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) {
        values[i] = reject_prob_two_arm(scen, tc, tt, draws[i], method, inner_tol);
      }
      return compensated_sum(values) / static_cast<double>(values.size());
    };
  } else {
    reject = [&scen, &method, inner_tol, tol, theta_e, se_e](double tc, double tt) {
      auto integrand = [&](double external_mean) {
        return norm_pdf((external_mean - theta_e) / se_e) / se_e *
               reject_prob_two_arm(scen, tc, tt, external_mean, method, inner_tol);
      };
      return std::clamp(
          integrate(integrand, Interval(-kInf, kInf), tol, GaussianScale{theta_e, se_e}),
          0.0, 1.0);
    };
  }
  return build_profile(scen, theta_e, offsets, reject, true);
}

}  // namespace borrowoc

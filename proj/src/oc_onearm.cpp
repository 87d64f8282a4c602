#include "borrowoc/oc_onearm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "borrowoc/parallel.hpp"
#include "borrowoc/region.hpp"

namespace borrowoc {

namespace {

bool single_upper_interval(const RejectionRegion& region) {
  return region.intervals.size() == 1 && region.intervals.front().hi() == kInf &&
         region.intervals.front().lo() > -kInf;
}

double mean_and_se(const std::vector<double>& values, double& se) {
  const double n = static_cast<double>(values.size());
  const double mean = compensated_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    sq[i] = (values[i] - mean) * (values[i] - mean);
  }
  se = values.size() > 1 ? std::sqrt(compensated_sum(sq) / (n - 1.0) / n) : 0.0;
  return mean;
}

}  // namespace

OCPoint oc_fixed_external(const ScenarioOneArm& scen, double external_mean,
                          const BorrowingMethod& method) {
  const RejectionRegion region = rejection_region(scen, external_mean, method);
  double t1e = rejection_prob(region, scen.theta0, scen.n, scen.sigma);
  if (!single_upper_interval(region) && !region.intervals.empty()) {
    // Upper-tail regions peak on the null boundary; anything else is searched.
    const Interval null_side(scen.theta0 - 10.0 * scen.sigma_n(), scen.theta0);
    const auto best = maximize_1d(
        [&](double theta) { return rejection_prob(region, theta, scen.n, scen.sigma); },
        null_side);
    t1e = std::max(t1e, best.value);
  }
  const double power = rejection_prob(region, scen.theta1, scen.n, scen.sigma);
  return OCPoint::make(t1e, power, power_calibrated(t1e, scen));
}

double t1e_closed_form_fixed_pp(const ScenarioOneArm& scen, double external_mean,
                                double delta) {
  scen.validate();
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("t1e_closed_form_fixed_pp: delta must lie in [0, 1]");
  }
  const double s_n = scen.sigma_n();
  const double prior_precision = delta * static_cast<double>(scen.nE) / (scen.sigmaE * scen.sigmaE);
  const double z = norm_quantile(scen.threshold());
  return norm_sf(z * std::sqrt(1.0 + s_n * s_n * prior_precision) -
                 (external_mean - scen.theta0) * s_n * prior_precision);
}

double power_calibrated(double alpha_b, const ScenarioOneArm& scen) {
  if (!(alpha_b >= 0.0 && alpha_b <= 1.0)) {
    throw std::invalid_argument("power_calibrated: alpha_b must lie in [0, 1]");
  }
  if (alpha_b == 0.0) return 0.0;
  if (alpha_b == 1.0) return 1.0;
  const double shift = (scen.theta1 - scen.theta0) / scen.sigma_n();
  return norm_cdf(shift + norm_quantile(alpha_b));
}

OCPoint oc_random_external_fixed_pp(const ScenarioOneArm& scen, double theta_e,
                                    double delta) {
  scen.validate();
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("oc_random_external_fixed_pp: delta must lie in [0, 1]");
  }
  const double s_n = scen.sigma_n();
  const double s_ne = scen.sigma_nE();
  const double prior_precision = delta * static_cast<double>(scen.nE) / (scen.sigmaE * scen.sigmaE);
  const double z = norm_quantile(scen.threshold());
  const double cut = z * std::sqrt(1.0 + s_n * s_n * prior_precision);
  // The lhs of the rejection inequality is Gaussian once the external mean is
  // random: N(mu_x(theta), sigma_x^2).
  const double sigma_x =
      std::sqrt(1.0 + s_n * s_n * prior_precision * prior_precision * s_ne * s_ne);
  auto mu_x = [&](double theta) {
    return (theta - scen.theta0) / s_n + (theta_e - scen.theta0) * s_n * prior_precision;
  };
  const double t1e = norm_sf((cut - mu_x(scen.theta0)) / sigma_x);
  const double power = norm_sf((cut - mu_x(scen.theta1)) / sigma_x);
  return OCPoint::make(t1e, power, power_calibrated(t1e, scen));
}

RandomExternalDraws random_external_replicates(const ScenarioOneArm& scen, double theta_e,
                                               const BorrowingMethod& method,
                                               std::size_t nsim, std::uint64_t seed,
                                               const SimulationOptions& options) {
  scen.validate();
  if (nsim < 1) throw std::invalid_argument("random external simulation: nsim must be >= 1");

  RandomExternalDraws draws;
  draws.external_mean.resize(nsim);
  draws.null_rate.resize(nsim);
  draws.alt_rate.resize(nsim);
  const double c = scen.threshold();
  parallel_for(nsim, options.workers, [&](std::size_t i) {
    RngStream rng(seed, i);
    const double external_mean = draw_external_mean(rng, theta_e, scen.nE, scen.sigmaE,
                                                    options.observation_level);
    draws.external_mean[i] = external_mean;
    if (options.literal_mc) {
      const ArmSummary external(external_mean, scen.nE, scen.sigmaE);
      const ArmSummary under_null(scen.theta0 + scen.sigma_n() * rng.normal(), scen.n,
                                  scen.sigma);
      const ArmSummary under_alt(scen.theta1 + scen.sigma_n() * rng.normal(), scen.n,
                                 scen.sigma);
      draws.null_rate[i] = decide_borrow(under_null, external, method, scen.theta0, c);
      draws.alt_rate[i] = decide_borrow(under_alt, external, method, scen.theta0, c);
    } else {
      const RejectionRegion region = rejection_region(scen, external_mean, method, c);
      draws.null_rate[i] = rejection_prob(region, scen.theta0, scen.n, scen.sigma);
      draws.alt_rate[i] = rejection_prob(region, scen.theta1, scen.n, scen.sigma);
    }
  });
  return draws;
}

RandomExternalEstimate oc_random_external_mc(const ScenarioOneArm& scen, double theta_e,
                                             const BorrowingMethod& method,
                                             std::size_t nsim, std::uint64_t seed,
                                             const SimulationOptions& options) {
  const RandomExternalDraws draws =
      random_external_replicates(scen, theta_e, method, nsim, seed, options);
  RandomExternalEstimate out;
  out.nsim = nsim;
  const double t1e = mean_and_se(draws.null_rate, out.t1e_se);
  const double power = mean_and_se(draws.alt_rate, out.power_se);
  out.point = OCPoint::make(t1e, power, power_calibrated(t1e, scen));
  return out;
}

OCPoint oc_fixed_external_mc(const ScenarioOneArm& scen, double external_mean,
                             const BorrowingMethod& method, std::uint64_t seed,
                             std::uint64_t stream_id, const SimulationOptions& options) {
  scen.validate();
  if (options.inner_draws < 1) {
    throw std::invalid_argument("oc_fixed_external_mc: inner_draws must be >= 1");
  }
  const ArmSummary external(external_mean, scen.nE, scen.sigmaE);
  const double c = scen.threshold();
  RngStream rng(seed, stream_id);
  std::size_t null_hits = 0;
  std::size_t alt_hits = 0;
  for (std::size_t k = 0; k < options.inner_draws; ++k) {
    const ArmSummary under_null(scen.theta0 + scen.sigma_n() * rng.normal(), scen.n, scen.sigma);
    const ArmSummary under_alt(scen.theta1 + scen.sigma_n() * rng.normal(), scen.n, scen.sigma);
    null_hits += decide_borrow(under_null, external, method, scen.theta0, c);
    alt_hits += decide_borrow(under_alt, external, method, scen.theta0, c);
  }
  const double draws = static_cast<double>(options.inner_draws);
  const double t1e = static_cast<double>(null_hits) / draws;
  const double power = static_cast<double>(alt_hits) / draws;
  return OCPoint::make(t1e, power, power_calibrated(t1e, scen));
}

}  // namespace borrowoc

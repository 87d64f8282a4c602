#include "borrowoc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "borrowoc/oc_onearm.hpp"
#include "borrowoc/parallel.hpp"
#include "borrowoc/rng.hpp"

namespace borrowoc {

namespace {

// Inner current-data draws of literal mode use streams disjoint from the
// external-data streams.
constexpr std::uint64_t kInnerStreamBit = std::uint64_t{1} << 63;

double se_of_mean(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    sq[i] = (values[i] - mean) * (values[i] - mean);
  }
  const double n = static_cast<double>(values.size());
  return std::sqrt(compensated_sum(sq) / (n - 1.0) / n);
}

void require_nsim(std::size_t nsim) {
  if (nsim < 1) throw std::invalid_argument("nsim must be >= 1");
}

// Rethrows with the replicate index attached, keeping the error category.
template <class Fn>
auto at_replicate(std::size_t i, Fn&& fn) {
  const std::string where = "replicate " + std::to_string(i) + ": ";
  try {
    return fn();
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(where + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + e.what());
  } catch (const std::domain_error& e) {
    throw std::domain_error(where + e.what());
  }
}

RunReport start_report(const Scenario& scen, const BorrowingMethod& method,
                       std::uint64_t seed, std::size_t nsim) {
  RunReport report;
  report.scenario = scen;
  report.method = method;
  report.seed = seed;
  report.nsim = nsim;
  return report;
}

std::vector<double> default_offsets() {
  std::vector<double> xs;
  for (int i = -30; i <= 30; ++i) xs.push_back(0.1 * i);
  return xs;
}

}  // namespace

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  SummaryStats s;
  s.mean = compensated_sum(sorted) / static_cast<double>(n);
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

void resummarize(RunReport& report) {
  std::vector<double> t1e;
  std::vector<double> diff;
  t1e.reserve(report.records.size());
  diff.reserve(report.records.size());
  for (const auto& r : report.records) {
    t1e.push_back(r.t1e_borrow);
    diff.push_back(r.power_diff);
  }
  report.t1e = summarize(t1e);
  report.power_diff = summarize(diff);
}

RunReport run_algorithm1(const Scenario& scen, double theta_e, const BorrowingMethod& method,
                         std::size_t nsim, std::uint64_t seed,
                         const SimulationOptions& options, double tol) {
  require_nsim(nsim);
  RunReport report = start_report(scen, method, seed, nsim);
  report.records.resize(nsim);

  if (const auto* one = std::get_if<ScenarioOneArm>(&scen)) {
    one->validate();
    parallel_for(nsim, options.workers, [&](std::size_t i) {
      report.records[i] = at_replicate(i, [&] {
        RngStream rng(seed, i);
        const double dE = draw_external_mean(rng, theta_e, one->nE, one->sigmaE,
                                             options.observation_level);
        const OCPoint p =
            options.literal_mc
                ? oc_fixed_external_mc(*one, dE, method, seed, i | kInnerStreamBit, options)
                : oc_fixed_external(*one, dE, method);
        return ReplicateRecord::make(i, dE, p);
      });
    });
  } else {
    const auto& two = std::get<ScenarioTwoArm>(scen);
    two.validate();
    if (options.literal_mc) {
      throw std::invalid_argument(
          "two-arm fixed external data has no literal Monte Carlo mode");
    }
    parallel_for(nsim, options.workers, [&](std::size_t i) {
      report.records[i] = at_replicate(i, [&] {
        RngStream rng(seed, i);
        const double dE = draw_external_mean(rng, theta_e, two.nE, two.sigmaE,
                                             options.observation_level);
        const double offset[] = {(two.theta_c - dE) / two.sigma};
        const OCProfile prof = power_profile(two, dE, method, offset, tol);
        return ReplicateRecord::make(
            i, dE,
            OCPoint::make(prof.alphaB_max, prof.power_borrow.front(), prof.power_calibrated));
      });
    });
  }
  resummarize(report);
  return report;
}

RunReport run_algorithm2(const Scenario& scen, double theta_e, const BorrowingMethod& method,
                         std::size_t nsim, std::uint64_t seed,
                         const SimulationOptions& options, double tol,
                         std::span<const double> offsets) {
  require_nsim(nsim);
  RunReport report = start_report(scen, method, seed, nsim);
  report.records.resize(nsim);
  RandomExternalSummary summary;

  if (const auto* one = std::get_if<ScenarioOneArm>(&scen)) {
    const RandomExternalDraws draws =
        random_external_replicates(*one, theta_e, method, nsim, seed, options);
    const double t1e = compensated_sum(draws.null_rate) / static_cast<double>(nsim);
    const double power = compensated_sum(draws.alt_rate) / static_cast<double>(nsim);
    summary.point = OCPoint::make(t1e, power, power_calibrated(t1e, *one));
    summary.t1e_se = se_of_mean(draws.null_rate, t1e);
    summary.power_se = se_of_mean(draws.alt_rate, power);
    for (std::size_t i = 0; i < nsim; ++i) {
      report.records[i] = ReplicateRecord::make(
          i, draws.external_mean[i],
          OCPoint::make(draws.null_rate[i], draws.alt_rate[i], summary.point.power_calibrated));
    }
  } else {
    const auto& two = std::get<ScenarioTwoArm>(scen);
    two.validate();
    if (options.literal_mc) {
      throw std::invalid_argument(
          "two-arm random external data has no literal Monte Carlo mode");
    }
    const std::vector<double> fallback = default_offsets();
    const std::span<const double> grid = offsets.empty() ? std::span<const double>(fallback)
                                                         : offsets;
    const ExternalMonteCarlo mc{nsim, seed, options.observation_level};
    report.profile = oc_random_external_two_arm(two, theta_e, method, grid, tol, mc);
    const double calibrated = report.profile->power_calibrated;

    std::vector<double> null_rate(nsim);
    std::vector<double> alt_rate(nsim);
    parallel_for(nsim, options.workers, [&](std::size_t i) {
      report.records[i] = at_replicate(i, [&] {
        RngStream rng(seed, i);
        const double dE = draw_external_mean(rng, theta_e, two.nE, two.sigmaE,
                                             options.observation_level);
        null_rate[i] = reject_prob_two_arm(two, two.theta_c, two.theta_c, dE, method, tol);
        alt_rate[i] =
            reject_prob_two_arm(two, two.theta_c, two.theta_c + two.theta1, dE, method, tol);
        return ReplicateRecord::make(i, dE,
                                     OCPoint::make(null_rate[i], alt_rate[i], calibrated));
      });
    });
    const double power = compensated_sum(alt_rate) / static_cast<double>(nsim);
    summary.point = OCPoint::make(report.profile->alphaB_max, power, calibrated);
    summary.power_se = se_of_mean(alt_rate, power);
  }
  report.random_external = summary;
  resummarize(report);
  return report;
}

RunReport run_grid(const Scenario& scen, std::span<const double> grid,
                   const BorrowingMethod& method, double tol) {
  if (grid.empty()) throw std::invalid_argument("run_grid: grid must be non-empty");
  RunReport report = start_report(scen, method, 0, grid.size());
  report.records.resize(grid.size());

  if (const auto* one = std::get_if<ScenarioOneArm>(&scen)) {
    one->validate();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      report.records[i] = at_replicate(
          i, [&] { return ReplicateRecord::make(i, grid[i], oc_fixed_external(*one, grid[i], method)); });
    }
  } else {
    const auto& two = std::get<ScenarioTwoArm>(scen);
    two.validate();
    // The profile depends on theta_c and the external mean only through their
    // difference, so any reference external mean gives the same curve.
    report.profile = power_profile(two, 0.0, method, grid, tol);
    const OCProfile& prof = *report.profile;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      report.records[i] = ReplicateRecord::make(
          i, two.theta_c - grid[i] * two.sigma,
          OCPoint::make(prof.t1e[i], prof.power_borrow[i], prof.power_calibrated));
    }
  }
  resummarize(report);
  return report;
}

}  // namespace borrowoc

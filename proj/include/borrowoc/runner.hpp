#pragma once

// Replicate studies over external data sets: fixed external data drawn per
// replicate, random external data averaged, and deterministic grids.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "borrowoc/borrow.hpp"
#include "borrowoc/oc_twoarm.hpp"
#include "borrowoc/scenario.hpp"
#include "borrowoc/simulation.hpp"

namespace borrowoc {

using Scenario = std::variant<ScenarioOneArm, ScenarioTwoArm>;

struct ReplicateRecord {
  std::size_t replicate = 0;
  double dE_mean = 0.0;
  double t1e_borrow = 0.0;
  double power_borrow = 0.0;
  double power_calibrated = 0.0;
  /// Always power_borrow - power_calibrated.
  double power_diff = 0.0;

  static ReplicateRecord make(std::size_t replicate, double dE_mean, const OCPoint& p) noexcept {
    return {replicate, dE_mean, p.t1e_borrow, p.power_borrow, p.power_calibrated, p.power_diff};
  }
};

struct SummaryStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
};

/// Compensated mean, extremes and median (average of the middle pair for even
/// sizes). Throws std::invalid_argument on empty input.
SummaryStats summarize(std::span<const double> values);

/// Averages over the external data distribution, reported alongside the
/// records of a random-external run.
struct RandomExternalSummary {
  OCPoint point;
  /// Monte Carlo standard errors; zero where the value is not an average.
  double t1e_se = 0.0;
  double power_se = 0.0;
};

struct RunReport {
  Scenario scenario;
  BorrowingMethod method = BorrowingMethod::none();
  std::uint64_t seed = 0;
  std::size_t nsim = 0;
  std::vector<ReplicateRecord> records;
  SummaryStats t1e;
  SummaryStats power_diff;
  std::optional<RandomExternalSummary> random_external;
  /// Two-arm runs keep the offset profile behind the records.
  std::optional<OCProfile> profile;
};

/// Fills report.t1e and report.power_diff from report.records.
void resummarize(RunReport& report);

/// Fixed external data, replicated: replicate i draws its external mean from
/// stream (seed, i) and evaluates the operating characteristics for that data
/// set. Two-arm replicates calibrate to the supremum over theta_c and report
/// power at scen.theta_c. With options.literal_mc the one-arm inner
/// probabilities are replaced by options.inner_draws simulated trials.
RunReport run_algorithm1(const Scenario& scen, double theta_e, const BorrowingMethod& method,
                         std::size_t nsim, std::uint64_t seed,
                         const SimulationOptions& options = {},
                         double tol = kDefaultQuadTol);

/// Random external data: type I error rate and power averaged over the
/// external data distribution, then compared with the test calibrated to the
/// averaged type I error rate. Records hold the per-replicate rates. Two-arm
/// runs average over Monte Carlo external means, evaluate power at
/// scen.theta_c and calibrate to the supremum of the averaged null profile;
/// `offsets` sets the profile grid kept in the report.
RunReport run_algorithm2(const Scenario& scen, double theta_e, const BorrowingMethod& method,
                         std::size_t nsim, std::uint64_t seed,
                         const SimulationOptions& options = {},
                         double tol = kDefaultQuadTol,
                         std::span<const double> offsets = {});

/// Deterministic sweep, one record per grid value with replicate = index.
/// One-arm grids are external means. Two-arm grids are offsets
/// x = (theta_c - dbar_E) / sigma with theta_c = scen.theta_c held fixed, so
/// record i has dE_mean = theta_c - x_i * sigma, the pointwise null rejection
/// rate at theta_c as t1e, and the calibration uses the supremum over theta_c.
RunReport run_grid(const Scenario& scen, std::span<const double> grid,
                   const BorrowingMethod& method, double tol = kDefaultQuadTol);

}  // namespace borrowoc

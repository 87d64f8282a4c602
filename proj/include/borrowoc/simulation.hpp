#pragma once

#include <cstddef>
#include <cstdint>

#include "borrowoc/rng.hpp"

namespace borrowoc {

/// Switches shared by the Monte Carlo engines.
struct SimulationOptions {
  /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
  unsigned workers = 1;
  /// Replace exact inner expectations by literal single-draw test decisions.
  bool literal_mc = false;
  /// Generate external data observation by observation instead of drawing the
  /// sufficient mean directly.
  bool observation_level = false;
  /// Current-data draws per expectation when a fixed-external engine runs in
  /// literal Monte Carlo mode.
  std::size_t inner_draws = 10000;
};

/// One external sample mean with generating mean theta_e: either a single
/// N(theta_e, sigma_e^2 / n_e) draw or the average of n_e N(theta_e, sigma_e^2)
/// draws.
double draw_external_mean(RngStream& rng, double theta_e, std::int64_t n_e,
                          double sigma_e, bool observation_level);

}  // namespace borrowoc

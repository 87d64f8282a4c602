#include "borrowoc/simulation.hpp"

#include <cmath>
#include <vector>

#include "borrowoc/statmath.hpp"

namespace borrowoc {

double draw_external_mean(RngStream& rng, double theta_e, std::int64_t n_e,
                          double sigma_e, bool observation_level) {
  if (!observation_level) {
    return theta_e + sigma_e / std::sqrt(static_cast<double>(n_e)) * rng.normal();
  }
  std::vector<double> obs(static_cast<std::size_t>(n_e));
  for (auto& x : obs) x = theta_e + sigma_e * rng.normal();
  return compensated_sum(obs) / static_cast<double>(n_e);
}

}  // namespace borrowoc

#include "borrowoc/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace borrowoc {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

void check_levels(double alpha, const std::optional<double>& c) {
  require(alpha > 0.0 && alpha < 1.0, "alpha", "must lie in (0, 1)");
  if (c) require(*c >= 0.0 && *c < 1.0, "c", "must lie in [0, 1)");
}

}  // namespace

double ScenarioOneArm::sigma_n() const noexcept {
  return sigma / std::sqrt(static_cast<double>(n));
}

double ScenarioOneArm::sigma_nE() const noexcept {
  return sigmaE / std::sqrt(static_cast<double>(nE));
}

void ScenarioOneArm::validate() const {
  require(n >= 1, "n", "must be >= 1");
  require(nE >= 1, "nE", "must be >= 1");
  require(sigma > 0.0 && std::isfinite(sigma), "sigma", "must be positive");
  require(sigmaE > 0.0 && std::isfinite(sigmaE), "sigmaE", "must be positive");
  require(std::isfinite(theta0), "theta0", "must be finite");
  require(std::isfinite(theta1) && theta1 > theta0, "theta1", "must exceed theta0");
  check_levels(alpha, c);
}

void ScenarioTwoArm::validate() const {
  require(nc >= 1, "nc", "must be >= 1");
  require(nt >= 1, "nt", "must be >= 1");
  require(nE >= 1, "nE", "must be >= 1");
  require(sigma > 0.0 && std::isfinite(sigma), "sigma", "must be positive");
  require(sigmaE > 0.0 && std::isfinite(sigmaE), "sigmaE", "must be positive");
  require(std::isfinite(theta1) && theta1 > 0.0, "theta1", "must be positive");
  require(std::isfinite(theta_c), "thetaC", "must be finite");
  check_levels(alpha, c);
}

}  // namespace borrowoc

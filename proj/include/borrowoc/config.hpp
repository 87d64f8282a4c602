#pragma once

// Flat JSON scenario configuration for the command-line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "borrowoc/borrow.hpp"
#include "borrowoc/runner.hpp"

namespace borrowoc::cli {

/// Invalid or inconsistent configuration; the message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Design { kOneArm, kTwoArm };

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// start, start + step, ... up to stop (inclusive within step * 1e-9).
  /// Points are start + i * step, rounded to 12 decimals.
  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

struct ScenarioConfig {
  Design design = Design::kOneArm;
  std::string method = "none";
  std::optional<double> delta;

  // One-arm sizes.
  std::int64_t n = 0;
  // Two-arm sizes.
  std::int64_t nc = 0;
  std::int64_t nt = 0;
  std::int64_t nE = 0;

  double sigma = 1.0;
  double sigmaE = 1.0;
  double theta0 = 0.0;  // one-arm only
  double theta1 = 0.0;
  double thetaC = 0.0;  // two-arm only
  double alpha = 0.025;
  double c = 0.975;

  /// Generating mean of random external data.
  std::optional<double> thetaE;
  /// Observed external mean for fixed-external runs.
  std::optional<double> dE;
  /// External means (one-arm) or offsets (two-arm) of a deterministic sweep.
  std::optional<GridSpec> grid;
  /// Explicit two-arm offsets.
  std::optional<std::vector<double>> offsets;

  std::optional<std::uint64_t> nsim;
  std::uint64_t seed = 0;

  BorrowingMethod borrowing() const;
  Scenario scenario() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses one flat JSON object, applies defaults (c = 1 - alpha,
/// sigmaE = sigma, a fresh random seed when absent) and validates. Unknown
/// keys and keys that do not apply to the design or method are rejected.
ScenarioConfig parse_config(std::string_view document);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Every field with defaults filled in; parse_config(to_json(c).dump()) == c.
nlohmann::ordered_json to_json(const ScenarioConfig& config);

/// FNV-1a 64 of the compact canonical JSON, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

std::string design_name(Design design);

}  // namespace borrowoc::cli

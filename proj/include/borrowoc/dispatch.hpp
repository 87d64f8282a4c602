#pragma once

// Subcommand execution for the command-line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "borrowoc/config.hpp"
#include "borrowoc/output.hpp"
#include "borrowoc/statmath.hpp"

namespace borrowoc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNonConvergence = 4,
};

/// Command-line overrides and engine switches.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> nsim;
  /// Literal Monte Carlo in place of the exact inner engines.
  bool mc_audit = false;
  double tol = kDefaultQuadTol;
  unsigned workers = 1;
};

const std::vector<std::string>& subcommands();

/// Config with --seed / --nsim folded in, so provenance reflects them.
ScenarioConfig apply_overrides(ScenarioConfig config, const RunOptions& options);

/// Runs a subcommand and returns the files it produces. Nothing is written.
/// Throws ConfigError when the config does not fit the subcommand.
OutputFiles compute_outputs(std::string_view subcommand, const ScenarioConfig& config,
                            const RunOptions& options);

/// compute_outputs followed by write_outputs; maps failures to exit codes and
/// prints a one-line diagnostic to `err`.
int dispatch(std::string_view subcommand, const ScenarioConfig& config,
             const RunOptions& options, const std::filesystem::path& out_dir,
             std::ostream& err);

}  // namespace borrowoc::cli

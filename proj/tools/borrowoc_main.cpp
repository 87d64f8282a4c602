// borrowoc: operating characteristics of power-prior borrowing tests.
//
//   borrowoc <command> --config scenario.json --out results/ [options]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "borrowoc/config.hpp"
#include "borrowoc/dispatch.hpp"

int main(int argc, char** argv) {
  using namespace borrowoc::cli;

  CLI::App app{"Frequentist operating characteristics of power-prior borrowing tests"};
  app.set_version_flag("--version", std::string(BORROWOC_VERSION));
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  RunOptions options;
  std::uint64_t seed = 0;
  std::uint64_t nsim = 0;

  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--nsim", nsim, "Override the replicate count")->check(CLI::PositiveNumber);
    sub->add_flag("--mc-audit", options.mc_audit,
                  "Literal Monte Carlo instead of the exact inner engines");
    sub->add_option("--tol", options.tol, "Absolute quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--workers", options.workers, "Worker threads, 0 = all cores")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed") > 0) options.seed = seed;
  if (chosen->count("--nsim") > 0) options.nsim = nsim;

  ScenarioConfig config;
  try {
    config = apply_overrides(load_config(config_path), options);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  return dispatch(chosen->get_name(), config, options, out_dir, std::cerr);
}

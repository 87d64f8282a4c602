#include "borrowoc/dispatch.hpp"

#include <exception>
#include <functional>
#include <map>

#include "borrowoc/oc_onearm.hpp"
#include "borrowoc/oc_twoarm.hpp"
#include "borrowoc/region.hpp"
#include "borrowoc/runner.hpp"

namespace borrowoc::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kAlgorithm1Nsim = 100;
constexpr std::size_t kAlgorithm2NsimOneArm = 100000;
constexpr std::size_t kAlgorithm2NsimTwoArm = 2000;
constexpr std::size_t kInnerDraws = 10000;

struct Context {
  std::string_view command;
  const ScenarioConfig& cfg;
  const RunOptions& opts;
};

void need_design(const Context& ctx, Design design) {
  if (ctx.cfg.design != design) {
    throw ConfigError("design: command " + std::string(ctx.command) + " needs " +
                      design_name(design));
  }
}

double need_theta_e(const Context& ctx) {
  if (!ctx.cfg.thetaE) {
    throw ConfigError("thetaE: required by command " + std::string(ctx.command));
  }
  return *ctx.cfg.thetaE;
}

std::size_t nsim_or(const Context& ctx, std::size_t fallback) {
  return ctx.cfg.nsim ? static_cast<std::size_t>(*ctx.cfg.nsim) : fallback;
}

SimulationOptions simulation_options(const Context& ctx) {
  SimulationOptions o;
  o.workers = ctx.opts.workers;
  o.literal_mc = ctx.opts.mc_audit;
  o.inner_draws = kInnerDraws;
  return o;
}

std::vector<double> offsets_of(const ScenarioConfig& cfg) {
  if (cfg.offsets) return *cfg.offsets;
  if (cfg.grid) return cfg.grid->values();
  std::vector<double> xs;
  for (int i = -30; i <= 30; ++i) xs.push_back(0.1 * i);
  return xs;
}

ordered_json head(const Context& ctx, std::size_t nsim) {
  ordered_json j;
  j["provenance"] = provenance_json(ctx.cfg, ctx.command, nsim);
  j["config"] = to_json(ctx.cfg);
  return j;
}

ordered_json point_json(const OCPoint& p) {
  return {{"t1e_borrow", p.t1e_borrow},
          {"power_borrow", p.power_borrow},
          {"power_calibrated", p.power_calibrated},
          {"power_diff", p.power_diff}};
}

ordered_json profile_summary(const OCProfile& p, const ScenarioTwoArm& scen) {
  return {{"alphaB_max", p.alphaB_max},
          {"argmax_offset", p.argmax_offset},
          {"power_calibrated", p.power_calibrated},
          {"power_no_borrowing", power_two_sample(scen.alpha, scen)}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

OutputFiles report_files(const Context& ctx, const RunReport& report, std::size_t nsim,
                         ordered_json extra = ordered_json::object()) {
  const std::string prov = provenance_line(ctx.cfg, ctx.command, nsim);
  ordered_json j = head(ctx, nsim);
  j["summary"] = {{"records", report.records.size()},
                  {"t1e", stats_json(report.t1e)},
                  {"power_diff", stats_json(report.power_diff)}};
  if (report.random_external) {
    ordered_json r = point_json(report.random_external->point);
    r["t1e_se"] = report.random_external->t1e_se;
    r["power_se"] = report.random_external->power_se;
    j["random_external"] = r;
  }
  for (auto& [k, v] : extra.items()) j[k] = v;

  OutputFiles files{{"records.csv", records_csv(report.records, prov)}};
  if (report.profile) {
    const auto& two = std::get<ScenarioTwoArm>(report.scenario);
    j["profile"] = profile_summary(*report.profile, two);
    files.emplace_back("profile.csv", profile_csv(*report.profile, prov));
  }
  files.emplace_back("summary.json", dump(j));
  return files;
}

// Literal replacement of the region engine for fixed external means.
RunReport literal_grid(const Context& ctx, const ScenarioOneArm& scen,
                       const std::vector<double>& means, std::size_t inner) {
  RunReport report;
  report.scenario = scen;
  report.method = ctx.cfg.borrowing();
  report.seed = ctx.cfg.seed;
  report.nsim = inner;
  SimulationOptions o = simulation_options(ctx);
  o.inner_draws = inner;
  for (std::size_t i = 0; i < means.size(); ++i) {
    report.records.push_back(ReplicateRecord::make(
        i, means[i], oc_fixed_external_mc(scen, means[i], report.method, ctx.cfg.seed, i, o)));
  }
  resummarize(report);
  return report;
}

OutputFiles one_arm_fixed_means(const Context& ctx, const std::vector<double>& means) {
  const Scenario scen = ctx.cfg.scenario();
  if (ctx.opts.mc_audit) {
    const std::size_t inner = nsim_or(ctx, kInnerDraws);
    return report_files(ctx, literal_grid(ctx, std::get<ScenarioOneArm>(scen), means, inner),
                        inner);
  }
  return report_files(ctx, run_grid(scen, means, ctx.cfg.borrowing(), ctx.opts.tol), 0);
}

OutputFiles one_arm_fixed(const Context& ctx) {
  need_design(ctx, Design::kOneArm);
  if (!ctx.cfg.dE) throw ConfigError("dE: required by command one-arm-fixed");
  return one_arm_fixed_means(ctx, {*ctx.cfg.dE});
}

OutputFiles one_arm_grid(const Context& ctx) {
  need_design(ctx, Design::kOneArm);
  if (!ctx.cfg.grid) throw ConfigError("grid: required by command one-arm-grid");
  return one_arm_fixed_means(ctx, ctx.cfg.grid->values());
}

OutputFiles one_arm_random(const Context& ctx) {
  need_design(ctx, Design::kOneArm);
  const double theta_e = need_theta_e(ctx);
  const auto scen = std::get<ScenarioOneArm>(ctx.cfg.scenario());
  const BorrowingMethod method = ctx.cfg.borrowing();

  OCPoint point;
  double t1e_se = 0.0;
  double power_se = 0.0;
  std::string engine;
  std::size_t nsim = 0;
  if (!ctx.opts.mc_audit && method.kind() != BorrowingKind::kEmpiricalBayes) {
    point = oc_random_external_fixed_pp(scen, theta_e, method.delta());
    engine = "closed-form";
  } else {
    nsim = nsim_or(ctx, kAlgorithm2NsimOneArm);
    const RandomExternalEstimate est = oc_random_external_mc(
        scen, theta_e, method, nsim, ctx.cfg.seed, simulation_options(ctx));
    point = est.point;
    t1e_se = est.t1e_se;
    power_se = est.power_se;
    engine = ctx.opts.mc_audit ? "literal-mc" : "region-mc";
  }
  const std::string prov = provenance_line(ctx.cfg, ctx.command, nsim);
  std::string csv = prov + "\n";
  csv += "thetaE,t1e_borrow,power_borrow,power_calibrated,power_diff,t1e_se,power_se,engine\n";
  csv += format_number(theta_e) + "," + format_number(point.t1e_borrow) + "," +
         format_number(point.power_borrow) + "," + format_number(point.power_calibrated) +
         "," + format_number(point.power_diff) + "," + format_number(t1e_se) + "," +
         format_number(power_se) + "," + engine + "\n";

  ordered_json j = head(ctx, nsim);
  ordered_json r = point_json(point);
  r["t1e_se"] = t1e_se;
  r["power_se"] = power_se;
  r["engine"] = engine;
  j["random_external"] = r;
  return {{"random_external.csv", csv}, {"summary.json", dump(j)}};
}

OutputFiles profile_files(const Context& ctx, const OCProfile& profile, std::size_t nsim) {
  const auto scen = std::get<ScenarioTwoArm>(ctx.cfg.scenario());
  const std::string prov = provenance_line(ctx.cfg, ctx.command, nsim);
  ordered_json j = head(ctx, nsim);
  j["profile"] = profile_summary(profile, scen);
  return {{"profile.csv", profile_csv(profile, prov)},
          {"summary.json", dump(j)}};
}

OutputFiles two_arm_profile(const Context& ctx) {
  need_design(ctx, Design::kTwoArm);
  if (ctx.opts.mc_audit) {
    throw ConfigError("--mc-audit: command two-arm-profile has no Monte Carlo mode");
  }
  const auto scen = std::get<ScenarioTwoArm>(ctx.cfg.scenario());
  const double dE = ctx.cfg.dE.value_or(0.0);
  const std::vector<double> xs = offsets_of(ctx.cfg);
  return profile_files(ctx, power_profile(scen, dE, ctx.cfg.borrowing(), xs, ctx.opts.tol), 0);
}

OutputFiles two_arm_random(const Context& ctx) {
  need_design(ctx, Design::kTwoArm);
  const double theta_e = need_theta_e(ctx);
  const auto scen = std::get<ScenarioTwoArm>(ctx.cfg.scenario());
  const std::vector<double> xs = offsets_of(ctx.cfg);
  std::optional<ExternalMonteCarlo> mc;
  std::size_t nsim = 0;
  if (ctx.opts.mc_audit) {
    nsim = nsim_or(ctx, kAlgorithm2NsimTwoArm);
    mc = ExternalMonteCarlo{nsim, ctx.cfg.seed, false};
  }
  return profile_files(
      ctx, oc_random_external_two_arm(scen, theta_e, ctx.cfg.borrowing(), xs, ctx.opts.tol, mc),
      nsim);
}

OutputFiles algorithm1(const Context& ctx) {
  const double theta_e = need_theta_e(ctx);
  const std::size_t nsim = nsim_or(ctx, kAlgorithm1Nsim);
  const RunReport report = run_algorithm1(ctx.cfg.scenario(), theta_e, ctx.cfg.borrowing(), nsim,
                                          ctx.cfg.seed, simulation_options(ctx), ctx.opts.tol);
  return report_files(ctx, report, nsim);
}

OutputFiles algorithm2(const Context& ctx) {
  const double theta_e = need_theta_e(ctx);
  const std::size_t nsim = nsim_or(
      ctx, ctx.cfg.design == Design::kOneArm ? kAlgorithm2NsimOneArm : kAlgorithm2NsimTwoArm);
  std::vector<double> xs;
  if (ctx.cfg.design == Design::kTwoArm) xs = offsets_of(ctx.cfg);
  const RunReport report =
      run_algorithm2(ctx.cfg.scenario(), theta_e, ctx.cfg.borrowing(), nsim, ctx.cfg.seed,
                     simulation_options(ctx), ctx.opts.tol, xs);
  return report_files(ctx, report, nsim);
}

OutputFiles region(const Context& ctx) {
  need_design(ctx, Design::kOneArm);
  std::vector<double> means;
  if (ctx.cfg.grid) {
    means = ctx.cfg.grid->values();
  } else if (ctx.cfg.dE) {
    means = {*ctx.cfg.dE};
  } else {
    throw ConfigError("grid: command region needs grid or dE");
  }
  const auto scen = std::get<ScenarioOneArm>(ctx.cfg.scenario());
  std::vector<RegionRow> rows;
  ordered_json counts = ordered_json::array();
  for (double dE : means) {
    rows.push_back({dE, rejection_region(scen, dE, ctx.cfg.borrowing())});
    counts.push_back({{"dE_mean", dE}, {"intervals", interval_count(rows.back().region)}});
  }
  const std::string prov = provenance_line(ctx.cfg, ctx.command, 0);
  ordered_json j = head(ctx, 0);
  j["interval_counts"] = counts;
  return {{"region.csv", region_csv(rows, prov)}, {"summary.json", dump(j)}};
}

using Handler = std::function<OutputFiles(const Context&)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const std::map<std::string, Handler, std::less<>> table = {
      {"one-arm-fixed", one_arm_fixed},     {"one-arm-grid", one_arm_grid},
      {"one-arm-random", one_arm_random},   {"two-arm-profile", two_arm_profile},
      {"two-arm-random", two_arm_random},   {"algorithm1", algorithm1},
      {"algorithm2", algorithm2},           {"region", region},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "one-arm-fixed", "one-arm-grid", "one-arm-random", "two-arm-profile",
      "two-arm-random", "algorithm1",  "algorithm2",     "region"};
  return names;
}

ScenarioConfig apply_overrides(ScenarioConfig config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.nsim) {
    if (*options.nsim < 1) throw ConfigError("nsim: must be >= 1");
    config.nsim = *options.nsim;
  }
  return config;
}

OutputFiles compute_outputs(std::string_view subcommand, const ScenarioConfig& config,
                            const RunOptions& options) {
  const auto it = handlers().find(subcommand);
  if (it == handlers().end()) {
    throw ConfigError("unknown command '" + std::string(subcommand) + "'");
  }
  if (!(options.tol > 0.0)) throw ConfigError("tol: must be positive");
  return it->second(Context{subcommand, config, options});
}

int dispatch(std::string_view subcommand, const ScenarioConfig& config,
             const RunOptions& options, const std::filesystem::path& out_dir,
             std::ostream& err) {
  try {
    write_outputs(out_dir, compute_outputs(subcommand, config, options));
    return kExitOk;
  } catch (const InvalidBracket& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace borrowoc::cli

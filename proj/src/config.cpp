#include "borrowoc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace borrowoc::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxGridPoints = 1000000;

const std::set<std::string> kCommonKeys = {"design", "method", "delta", "nE",     "sigma",
                                           "sigmaE", "theta1", "alpha", "c",      "thetaE",
                                           "dE",     "grid",   "nsim",  "seed"};
const std::set<std::string> kOneArmKeys = {"n", "theta0"};
const std::set<std::string> kTwoArmKeys = {"nc", "nt", "thetaC", "offsets"};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

double real(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) fail(key, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

std::int64_t count(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) fail(key, "must be an integer");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(key, "too large");
    return static_cast<std::int64_t>(u);
  }
  return v.get<std::int64_t>();
}

std::uint64_t unsigned64(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(key, "must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

template <class T, class Read>
void optional_into(const json& doc, const std::string& key, T& out, Read read) {
  if (doc.contains(key)) out = read(doc, key);
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

GridSpec parse_grid(const json& doc) {
  const json& g = doc.at("grid");
  if (!g.is_object()) fail("grid", "must be an object {start, stop, step}");
  for (const auto& [k, _] : g.items()) {
    if (k != "start" && k != "stop" && k != "step") fail("grid." + k, "unknown key");
  }
  GridSpec spec;
  for (const char* k : {"start", "stop", "step"}) {
    if (!g.contains(k)) fail(std::string("grid.") + k, "missing");
    if (!g.at(k).is_number() || !std::isfinite(g.at(k).get<double>())) {
      fail(std::string("grid.") + k, "must be a finite number");
    }
  }
  spec.start = g.at("start").get<double>();
  spec.stop = g.at("stop").get<double>();
  spec.step = g.at("step").get<double>();
  if (!(spec.step > 0.0)) fail("grid.step", "must be positive");
  if (spec.stop < spec.start) fail("grid.stop", "must not be below grid.start");
  if ((spec.stop - spec.start) / spec.step >= static_cast<double>(kMaxGridPoints)) {
    fail("grid", "too many points");
  }
  return spec;
}

std::vector<double> parse_offsets(const json& doc) {
  const json& v = doc.at("offsets");
  if (!v.is_array() || v.empty()) fail("offsets", "must be a non-empty array of numbers");
  std::vector<double> xs;
  for (const auto& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
      fail("offsets", "entries must be finite numbers");
    }
    xs.push_back(x.get<double>());
  }
  return xs;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  const double span = (stop - start) / step;
  const auto points = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return xs;
}

std::string design_name(Design design) {
  return design == Design::kOneArm ? "one-arm" : "two-arm";
}

BorrowingMethod ScenarioConfig::borrowing() const {
  if (method == "fixed-pp") return BorrowingMethod::fixed(delta.value_or(0.0));
  if (method == "eb-pp") return BorrowingMethod::empirical_bayes();
  return BorrowingMethod::none();
}

Scenario ScenarioConfig::scenario() const {
  if (design == Design::kOneArm) {
    ScenarioOneArm s;
    s.n = n;
    s.nE = nE;
    s.sigma = sigma;
    s.sigmaE = sigmaE;
    s.theta0 = theta0;
    s.theta1 = theta1;
    s.alpha = alpha;
    s.c = c;
    return s;
  }
  ScenarioTwoArm s;
  s.nc = nc;
  s.nt = nt;
  s.nE = nE;
  s.sigma = sigma;
  s.sigmaE = sigmaE;
  s.theta1 = theta1;
  s.theta_c = thetaC;
  s.alpha = alpha;
  s.c = c;
  return s;
}

ScenarioConfig parse_config(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a single JSON object");

  ScenarioConfig cfg;
  if (!doc.contains("design") || !doc.at("design").is_string()) {
    fail("design", "required, \"one-arm\" or \"two-arm\"");
  }
  const std::string design = doc.at("design").get<std::string>();
  if (design == "one-arm") {
    cfg.design = Design::kOneArm;
  } else if (design == "two-arm") {
    cfg.design = Design::kTwoArm;
  } else {
    fail("design", "must be \"one-arm\" or \"two-arm\"");
  }

  const auto& own = cfg.design == Design::kOneArm ? kOneArmKeys : kTwoArmKeys;
  for (const auto& [key, _] : doc.items()) {
    if (kCommonKeys.count(key) || own.count(key)) continue;
    if (kOneArmKeys.count(key) || kTwoArmKeys.count(key)) {
      fail(key, "does not apply to design " + design);
    }
    fail(key, "unknown key");
  }

  if (!doc.contains("method") || !doc.at("method").is_string()) {
    fail("method", "required, \"none\", \"fixed-pp\" or \"eb-pp\"");
  }
  cfg.method = doc.at("method").get<std::string>();
  if (cfg.method != "none" && cfg.method != "fixed-pp" && cfg.method != "eb-pp") {
    fail("method", "must be \"none\", \"fixed-pp\" or \"eb-pp\"");
  }
  if (cfg.method == "fixed-pp") {
    if (!doc.contains("delta")) fail("delta", "required for method fixed-pp");
    cfg.delta = real(doc, "delta");
    if (!(*cfg.delta >= 0.0 && *cfg.delta <= 1.0)) fail("delta", "must lie in [0, 1]");
  } else if (doc.contains("delta")) {
    fail("delta", "only allowed for method fixed-pp");
  }

  auto required_count = [&](const char* key) {
    if (!doc.contains(key)) fail(key, "required");
    return count(doc, key);
  };
  if (cfg.design == Design::kOneArm) {
    const ScenarioOneArm defaults;
    cfg.n = required_count("n");
    cfg.theta0 = defaults.theta0;
    cfg.theta1 = defaults.theta1;
    optional_into(doc, "theta0", cfg.theta0, real);
  } else {
    const ScenarioTwoArm defaults;
    cfg.nc = required_count("nc");
    cfg.nt = required_count("nt");
    cfg.theta1 = defaults.theta1;
    cfg.thetaC = defaults.theta_c;
    optional_into(doc, "thetaC", cfg.thetaC, real);
    if (doc.contains("offsets")) cfg.offsets = parse_offsets(doc);
  }
  cfg.nE = required_count("nE");
  optional_into(doc, "theta1", cfg.theta1, real);
  optional_into(doc, "sigma", cfg.sigma, real);
  cfg.sigmaE = cfg.sigma;
  optional_into(doc, "sigmaE", cfg.sigmaE, real);
  optional_into(doc, "alpha", cfg.alpha, real);
  cfg.c = 1.0 - cfg.alpha;
  optional_into(doc, "c", cfg.c, real);

  if (doc.contains("thetaE")) cfg.thetaE = real(doc, "thetaE");
  if (doc.contains("dE")) cfg.dE = real(doc, "dE");
  if (doc.contains("grid")) cfg.grid = parse_grid(doc);
  if (cfg.grid && cfg.thetaE) fail("grid", "cannot be combined with thetaE");
  if (cfg.dE && cfg.thetaE) fail("dE", "cannot be combined with thetaE");
  if (cfg.grid && cfg.dE && cfg.design == Design::kOneArm) {
    fail("dE", "cannot be combined with grid");
  }
  if (cfg.grid && cfg.offsets) fail("offsets", "cannot be combined with grid");

  if (doc.contains("nsim")) {
    cfg.nsim = unsigned64(doc, "nsim");
    if (*cfg.nsim < 1) fail("nsim", "must be >= 1");
  }
  cfg.seed = doc.contains("seed") ? unsigned64(doc, "seed") : fresh_seed();

  try {
    std::visit([](const auto& s) { s.validate(); }, cfg.scenario());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ordered_json to_json(const ScenarioConfig& cfg) {
  ordered_json j;
  j["design"] = design_name(cfg.design);
  j["method"] = cfg.method;
  if (cfg.delta) j["delta"] = *cfg.delta;
  if (cfg.design == Design::kOneArm) {
    j["n"] = cfg.n;
  } else {
    j["nc"] = cfg.nc;
    j["nt"] = cfg.nt;
  }
  j["nE"] = cfg.nE;
  j["sigma"] = cfg.sigma;
  j["sigmaE"] = cfg.sigmaE;
  if (cfg.design == Design::kOneArm) j["theta0"] = cfg.theta0;
  j["theta1"] = cfg.theta1;
  if (cfg.design == Design::kTwoArm) j["thetaC"] = cfg.thetaC;
  j["alpha"] = cfg.alpha;
  j["c"] = cfg.c;
  if (cfg.thetaE) j["thetaE"] = *cfg.thetaE;
  if (cfg.dE) j["dE"] = *cfg.dE;
  if (cfg.grid) {
    j["grid"] = {{"start", cfg.grid->start}, {"stop", cfg.grid->stop}, {"step", cfg.grid->step}};
  }
  if (cfg.offsets) j["offsets"] = *cfg.offsets;
  if (cfg.nsim) j["nsim"] = *cfg.nsim;
  j["seed"] = cfg.seed;
  return j;
}

std::string config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(config).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace borrowoc::cli

// Acceptance checks. `acceptance` runs every criterion, `acceptance 7` runs one.
// Each criterion prints a single PASS or FAIL line and the exit status is
// nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "borrowoc/oc_onearm.hpp"
#include "borrowoc/oc_twoarm.hpp"
#include "borrowoc/region.hpp"
#include "borrowoc/runner.hpp"

using namespace borrowoc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "!") << what << "; ";
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<double> steps(double lo, double hi, double step) {
  std::vector<double> xs;
  const auto n = static_cast<long>(std::llround((hi - lo) / step));
  for (long i = 0; i <= n; ++i) xs.push_back(std::round((lo + i * step) * 1e12) / 1e12);
  return xs;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

void c1(Outcome& o) {
  const ScenarioOneArm s;
  const auto p = oc_fixed_external(s, 0.0, BorrowingMethod::none());
  o.require(within(p.power_borrow, 0.705, 5e-4), "power " + fmt(p.power_borrow));
  o.require(within(p.t1e_borrow, 0.025, 1e-12), "t1e " + fmt(p.t1e_borrow));
}

void c2(Outcome& o) {
  const ScenarioOneArm s;
  double worst = 0.0;
  for (double delta : {0.1, 0.5, 1.0}) {
    for (double dE : steps(-1.0, 2.0, 0.05)) {
      const auto p = oc_fixed_external(s, dE, BorrowingMethod::fixed(delta));
      worst = std::max(worst, std::abs(p.power_diff));
    }
  }
  o.require(worst <= 1e-9, "max |power_diff| " + fmt(worst));
}

void c3(Outcome& o) {
  const Scenario s = ScenarioOneArm{};
  int passes = 0;
  SimulationOptions opts;
  opts.workers = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = run_algorithm1(s, 0.0, BorrowingMethod::fixed(0.5), 100, seed, opts);
    const bool ok = r.t1e.median >= 0.005 && r.t1e.median <= 0.02 && r.t1e.mean >= 0.012 &&
                    r.t1e.mean <= 0.028;
    passes += ok ? 1 : 0;
    if (seed == 1) {
      o.detail << "seed 1 median " << fmt(r.t1e.median) << " mean " << fmt(r.t1e.mean) << "; ";
    }
  }
  o.require(passes >= 18, std::to_string(passes) + "/20 seeds in range");
}

void c4(Outcome& o) {
  const ScenarioOneArm s;
  const auto a = oc_random_external_fixed_pp(s, 0.0, 0.5);
  const auto b = oc_random_external_fixed_pp(s, 0.5, 0.5);
  o.require(within(a.t1e_borrow, 0.0171, 5e-4), "alphaB(0) " + fmt(a.t1e_borrow));
  o.require(within(a.power_borrow, 0.5656, 5e-4), "power(0) " + fmt(a.power_borrow));
  o.require(within(a.power_calibrated, 0.6492, 5e-4), "calibrated(0) " + fmt(a.power_calibrated));
  o.require(within(b.t1e_borrow, 0.1143, 5e-4), "alphaB(0.5) " + fmt(b.t1e_borrow));
  o.require(within(b.power_borrow, 0.8595, 5e-4), "power(0.5) " + fmt(b.power_borrow));
  o.require(within(b.power_calibrated, 0.9025, 5e-4),
            "calibrated(0.5) " + fmt(b.power_calibrated) + " (0.848 in the published table)");
}

void c5(Outcome& o) {
  const ScenarioOneArm one;
  SimulationOptions opts;
  opts.workers = 0;
  for (double theta_e : {0.0, 0.5}) {
    const auto exact = oc_random_external_fixed_pp(one, theta_e, 0.5);
    const auto r = run_algorithm2(Scenario(one), theta_e, BorrowingMethod::fixed(0.5), 100000,
                                  20240 + static_cast<std::uint64_t>(theta_e * 10), opts);
    const auto& re = *r.random_external;
    const double zt = std::abs(re.point.t1e_borrow - exact.t1e_borrow) / re.t1e_se;
    const double zp = std::abs(re.point.power_borrow - exact.power_borrow) / re.power_se;
    o.require(zt <= 4.0, "thetaE " + fmt(theta_e) + " alphaB z " + fmt(zt));
    o.require(zp <= 4.0, "thetaE " + fmt(theta_e) + " power z " + fmt(zp));
  }
}

void c6(Outcome& o) {
  const Scenario s = ScenarioOneArm{};
  SimulationOptions opts;
  opts.workers = 0;
  const auto eb = BorrowingMethod::empirical_bayes();
  const auto a = run_algorithm2(s, 0.0, eb, 100000, 606, opts).random_external->point;
  const auto b = run_algorithm2(s, 0.5, eb, 100000, 607, opts).random_external->point;
  o.require(within(a.t1e_borrow, 0.030, 0.003), "alphaB(0) " + fmt(a.t1e_borrow));
  o.require(within(a.power_diff, -0.054, 0.006), "power_diff(0) " + fmt(a.power_diff));
  o.require(within(b.t1e_borrow, 0.113, 0.004), "alphaB(0.5) " + fmt(b.t1e_borrow));
  o.require(within(b.power_diff, -0.025, 0.006), "power_diff(0.5) " + fmt(b.power_diff));
}

void c7(Outcome& o) {
  const auto grid = steps(-1.0, 2.0, 0.01);
  const auto r = run_grid(Scenario(ScenarioOneArm{}), grid, BorrowingMethod::empirical_bayes());
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    if (r.records[i].t1e_borrow > r.records[best].t1e_borrow) best = i;
  }
  const double at = r.records[best].dE_mean;
  o.require(within(at, 0.56, 0.03 + 1e-9),
            "argmax " + fmt(at) + " t1e " + fmt(r.records[best].t1e_borrow));
}

void c8(Outcome& o) {
  ScenarioOneArm s;
  s.nE = 1000;
  const auto eb = BorrowingMethod::empirical_bayes();
  double min_diff = 0.0;
  std::string counts;
  for (double dE : steps(0.0, 0.21, 0.01)) {
    const std::size_t k = interval_count(rejection_region(s, dE, eb));
    const bool two = dE >= 0.06 - 1e-9 && dE <= 0.14 + 1e-9;
    counts += std::to_string(k);
    if (k != (two ? 2u : 1u)) o.require(false, "dE " + fmt(dE) + " has " + std::to_string(k));
    if (two) min_diff = std::min(min_diff, oc_fixed_external(s, dE, eb).power_diff);
  }
  o.detail << "counts " << counts << "; ";
  o.require(min_diff < -1e-4, "min power_diff " + fmt(min_diff));
}

void c9(Outcome& o) {
  const ScenarioTwoArm s;
  const double p = power_two_sample(0.025, s);
  o.require(within(p, 0.7819, 5e-4), "power " + fmt(p));
}

void c10(Outcome& o) {
  const ScenarioTwoArm s;
  const double x[] = {0.0};
  const auto p = power_profile(s, 0.0, BorrowingMethod::fixed(0.5), x);
  o.require(within(p.t1e[0], 0.0190, 1e-3) && p.t1e[0] < 0.025, "t1e " + fmt(p.t1e[0]));
  o.require(within(p.power_borrow[0], 0.8472, 1e-3) && p.power_borrow[0] > 0.7819,
            "power " + fmt(p.power_borrow[0]));
}

void c11(Outcome& o) {
  const ScenarioTwoArm s;
  const auto xs = steps(-3.0, 3.0, 0.1);
  for (double delta : {0.25, 0.5, 1.0}) {
    const auto p = power_profile(s, 0.0, BorrowingMethod::fixed(delta), xs);
    o.require(within(p.alphaB_max, 1.0, 1e-6), "delta " + fmt(delta) + " alphaB_max " +
                                                   fmt(p.alphaB_max));
    o.require(within(p.power_calibrated, 1.0, 1e-6),
              "calibrated " + fmt(p.power_calibrated));
    bool negative = true;
    for (double d : p.power_diff) negative = negative && d < 0.0;
    o.require(negative, "power_diff < 0 everywhere");
  }
}

void c12(Outcome& o) {
  const ScenarioTwoArm s;
  const auto xs = steps(-3.0, 3.0, 0.1);
  const auto p = power_profile(s, 0.0, BorrowingMethod::empirical_bayes(), xs);
  o.require(within(p.alphaB_max, 0.07, 0.01), "alphaB_max " + fmt(p.alphaB_max));
  o.require(within(p.argmax_offset, 0.7, 0.15), "at " + fmt(p.argmax_offset));
  double worst = -1.0;
  for (double d : p.power_diff) worst = std::max(worst, d);
  o.require(worst < 0.0, "max power_diff " + fmt(worst));
}

void c13(Outcome& o) {
  const ScenarioTwoArm s;
  const double xs[] = {-2.0, 0.7, 2.0};
  const auto eb = BorrowingMethod::empirical_bayes();
  const auto random = oc_random_external_two_arm(s, 0.0, eb, xs);
  const auto fixed = t1e_profile(s, 0.0, eb, xs);
  for (std::size_t i = 0; i < 3; ++i) {
    const double r = std::abs(random.t1e[i] - s.alpha);
    const double f = std::abs(fixed.t1e[i] - s.alpha);
    o.require(r <= f, "offset " + fmt(xs[i]) + " random " + fmt(random.t1e[i]) + " fixed " +
                          fmt(fixed.t1e[i]));
  }
}

void c14(Outcome& o) {
  double worst = 1.0;
  for (double delta : {0.25, 0.5, 1.0}) {
    for (double theta_e : {-0.5, 0.0, 0.5, 1.0}) {
      for (double theta1 : {0.2, 0.5, 1.0}) {
        ScenarioOneArm s;
        s.theta1 = theta1;
        const auto p = oc_random_external_fixed_pp(s, theta_e, delta);
        const double gap = p.power_calibrated - p.power_borrow;
        worst = std::min(worst, gap);
        if (!(gap > 0.0)) {
          o.require(false, "delta " + fmt(delta) + " thetaE " + fmt(theta_e) + " theta1 " +
                               fmt(theta1) + " gap " + fmt(gap));
        }
      }
    }
  }
  o.detail << "min gap " << fmt(worst) << "; ";
}

std::string slurp_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    all += f.filename().string() + "\n" + s.str();
  }
  return all;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BORROWOC_CLI_PATH + "\" " + args + " 2>&1";
  return std::system(cmd.c_str());
}

void c15(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "borrowoc_acceptance_c15";
  fs::remove_all(root);
  fs::create_directories(root);
  struct Case {
    const char* command;
    const char* config;
  };
  const Case cases[] = {
      {"algorithm1",
       R"({"design":"one-arm","method":"eb-pp","n":25,"nE":20,"thetaE":0,"nsim":200,"seed":15})"},
      {"algorithm2",
       R"({"design":"one-arm","method":"eb-pp","n":25,"nE":20,"thetaE":0.5,"nsim":5000,"seed":15})"},
      {"algorithm2",
       R"({"design":"two-arm","method":"eb-pp","nc":15,"nt":15,"nE":10,"thetaE":0,"nsim":100,)"
       R"("offsets":[-1,0,0.7],"seed":15})"},
      {"one-arm-random",
       R"({"design":"one-arm","method":"eb-pp","n":25,"nE":20,"thetaE":0,"nsim":2000,"seed":15})"},
      {"two-arm-profile",
       R"({"design":"two-arm","method":"eb-pp","nc":15,"nt":15,"nE":10,"offsets":[0,0.7],"seed":15})"},
  };
  int k = 0;
  for (const auto& c : cases) {
    const fs::path cfg = root / ("case" + std::to_string(k) + ".json");
    std::ofstream(cfg) << c.config;
    std::string outs[3];
    const char* worker_args[3] = {"--workers 1", "--workers 1", "--workers 4"};
    for (int rep = 0; rep < 3; ++rep) {
      const fs::path out = root / ("out" + std::to_string(k) + "_" + std::to_string(rep));
      const int rc = run_cli(std::string(c.command) + " --config \"" + cfg.string() +
                             "\" --out \"" + out.string() + "\" " + worker_args[rep]);
      if (rc != 0) {
        o.require(false, std::string(c.command) + " exit " + std::to_string(rc));
        continue;
      }
      outs[rep] = slurp_dir(out);
    }
    o.require(!outs[0].empty() && outs[0] == outs[1],
              std::string(c.command) + " repeat identical");
    o.require(outs[0] == outs[2], std::string(c.command) + " workers 1 vs 4 identical");
    ++k;
  }
  fs::remove_all(root);
}

struct Criterion {
  std::function<void(Outcome&)> run;
  double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {c1, 1},  {c2, 5},   {c3, 10},  {c4, 1},   {c5, 30},  {c6, 60},  {c7, 30}, {c8, 30},
      {c9, 1},  {c10, 5},  {c11, 60}, {c12, 300}, {c13, 300}, {c14, 5}, {c15, 60}};

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  bool all = true;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::cerr << "no criterion " << id << "\n";
      return 2;
    }
    const auto& c = criteria[id - 1];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_seconds,
              "runtime " + fmt(secs) + " s (budget " + fmt(c.budget_seconds) + " s)");
    std::cout << "C" << id << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail.str() << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

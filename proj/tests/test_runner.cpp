#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "borrowoc/oc_onearm.hpp"
#include "borrowoc/runner.hpp"

using namespace borrowoc;

TEST_CASE("summarize") {
  const std::vector<double> odd = {3.0, 1.0, 2.0};
  const auto s = summarize(odd);
  CHECK(s.mean == 2.0);
  CHECK(s.min == 1.0);
  CHECK(s.max == 3.0);
  CHECK(s.median == 2.0);
  const std::vector<double> even = {4.0, 1.0, 2.0, 10.0};
  CHECK(summarize(even).median == 3.0);
  CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("algorithm 1, one arm, fixed delta") {
  const Scenario scen = ScenarioOneArm{};
  const auto r = run_algorithm1(scen, 0.0, BorrowingMethod::fixed(0.5), 100, 2024);
  REQUIRE(r.records.size() == 100);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    CHECK(rec.replicate == i);
    CHECK(rec.power_diff == rec.power_borrow - rec.power_calibrated);
    CHECK(rec.t1e_borrow >= 0.0);
    CHECK(rec.t1e_borrow <= 1.0);
  }
  CHECK(std::abs(r.power_diff.mean) < 1e-9);
  CHECK(r.t1e.min >= 0.0);
  CHECK(r.t1e.max <= 0.3);
  CHECK(r.t1e.median > 0.002);
  CHECK(r.t1e.median < 0.03);
  CHECK(r.seed == 2024);
  CHECK(r.nsim == 100);
}

TEST_CASE("algorithm 1 mean converges to the random external closed form") {
  const ScenarioOneArm one;
  const auto r = run_algorithm1(Scenario(one), 0.5, BorrowingMethod::fixed(0.5), 100000, 1);
  std::vector<double> t1e;
  for (const auto& rec : r.records) t1e.push_back(rec.t1e_borrow);
  double ss = 0.0;
  for (double v : t1e) ss += (v - r.t1e.mean) * (v - r.t1e.mean);
  const double se = std::sqrt(ss / (t1e.size() - 1) / t1e.size());
  const double exact = oc_random_external_fixed_pp(one, 0.5, 0.5).t1e_borrow;
  CHECK(std::abs(r.t1e.mean - exact) <= 4 * se);
}

TEST_CASE("reports are reproducible and independent of worker count") {
  const Scenario scen = ScenarioOneArm{};
  SimulationOptions one;
  SimulationOptions three;
  three.workers = 3;
  const auto eb = BorrowingMethod::empirical_bayes();
  const auto a = run_algorithm1(scen, 0.3, eb, 200, 5, one);
  const auto b = run_algorithm1(scen, 0.3, eb, 200, 5, three);
  const auto c = run_algorithm1(scen, 0.3, eb, 200, 5, one);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].dE_mean == b.records[i].dE_mean);
    CHECK(a.records[i].t1e_borrow == b.records[i].t1e_borrow);
    CHECK(a.records[i].power_diff == c.records[i].power_diff);
  }
  CHECK(a.t1e.mean == b.t1e.mean);

  const auto x = run_algorithm2(scen, 0.3, eb, 500, 9, one);
  const auto y = run_algorithm2(scen, 0.3, eb, 500, 9, three);
  CHECK(x.random_external->point.t1e_borrow == y.random_external->point.t1e_borrow);
  CHECK(x.random_external->point.power_diff == y.random_external->point.power_diff);
}

TEST_CASE("summary is recomputable from records") {
  const Scenario scen = ScenarioOneArm{};
  auto r = run_algorithm1(scen, 0.0, BorrowingMethod::empirical_bayes(), 51, 3);
  const auto t1e = r.t1e;
  const auto diff = r.power_diff;
  resummarize(r);
  CHECK(r.t1e.mean == t1e.mean);
  CHECK(r.t1e.median == t1e.median);
  CHECK(r.power_diff.min == diff.min);
  CHECK(r.power_diff.max == diff.max);
}

TEST_CASE("algorithm 2, one arm") {
  const Scenario scen = ScenarioOneArm{};
  const auto none = run_algorithm2(scen, 0.7, BorrowingMethod::none(), 1000, 4);
  CHECK(std::abs(none.random_external->point.t1e_borrow - 0.025) <= 1e-12);
  CHECK(std::abs(none.random_external->point.power_diff) <= 1e-9);

  const auto fixed = run_algorithm2(scen, 0.0, BorrowingMethod::fixed(0.5), 20000, 4);
  const auto exact = oc_random_external_fixed_pp(std::get<ScenarioOneArm>(scen), 0.0, 0.5);
  const auto& re = *fixed.random_external;
  CHECK(std::abs(re.point.t1e_borrow - exact.t1e_borrow) <= 4 * re.t1e_se);
  CHECK(std::abs(re.point.power_borrow - exact.power_borrow) <= 4 * re.power_se);
  // Per-replicate records average to the reported rates.
  CHECK(std::abs(fixed.t1e.mean - re.point.t1e_borrow) <= 1e-15);
  CHECK(std::abs(fixed.power_diff.mean - re.point.power_diff) <= 1e-12);
}

TEST_CASE("grid runs") {
  const Scenario scen = ScenarioOneArm{};
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(-1.0 + 0.1 * i);
  const auto r = run_grid(scen, grid, BorrowingMethod::fixed(0.5));
  REQUIRE(r.records.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(r.records[i].replicate == i);
    CHECK(r.records[i].dE_mean == grid[i]);
    CHECK(std::abs(r.records[i].power_diff) <= 1e-9);
  }
  CHECK_THROWS_AS(run_grid(scen, std::vector<double>{}, BorrowingMethod::none()),
                  std::invalid_argument);

  ScenarioTwoArm two;
  two.theta_c = 0.4;
  const double xs[] = {-1.0, 0.0, 0.7};
  const auto t = run_grid(Scenario(two), xs, BorrowingMethod::empirical_bayes());
  REQUIRE(t.profile.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(t.records[i].dE_mean == doctest::Approx(0.4 - xs[i]));
    CHECK(t.records[i].t1e_borrow == t.profile->t1e[i]);
    CHECK(t.records[i].power_calibrated == t.profile->power_calibrated);
  }
}

TEST_CASE("two-arm replicate studies") {
  ScenarioTwoArm two;
  const auto r = run_algorithm1(Scenario(two), 0.0, BorrowingMethod::empirical_bayes(), 4, 12);
  REQUIRE(r.records.size() == 4);
  for (const auto& rec : r.records) {
    // The supremum over theta_c does not depend on the external mean.
    CHECK(rec.t1e_borrow == doctest::Approx(r.records[0].t1e_borrow).epsilon(1e-7));
    CHECK(rec.power_diff < 0.0);
  }
  SimulationOptions literal;
  literal.literal_mc = true;
  CHECK_THROWS_AS(run_algorithm1(Scenario(two), 0.0, BorrowingMethod::none(), 2, 1, literal),
                  std::invalid_argument);

  const double xs[] = {0.0, 6.0};
  const auto a2 =
      run_algorithm2(Scenario(two), 0.0, BorrowingMethod::fixed(0.5), 200, 12, {}, 1e-9, xs);
  REQUIRE(a2.profile.has_value());
  CHECK(a2.random_external->point.t1e_borrow > 0.99);
  CHECK(a2.records.size() == 200);
}

TEST_CASE("nsim must be positive") {
  const Scenario scen = ScenarioOneArm{};
  CHECK_THROWS_AS(run_algorithm1(scen, 0.0, BorrowingMethod::none(), 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_algorithm2(scen, 0.0, BorrowingMethod::none(), 0, 1),
                  std::invalid_argument);
}

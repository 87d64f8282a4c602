#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "borrowoc/rng.hpp"
#include "borrowoc/simulation.hpp"

using namespace borrowoc;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                      {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of (seed, stream_id)") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c(42, 8);
  RngStream d(43, 7);
  RngStream e(42, 7);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = e.next_u64();
    same_c += c.next_u64() == x;
    same_d += d.next_u64() == x;
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniform lies strictly inside (0, 1)") {
  RngStream r(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal deviates have standard moments") {
  RngStream r(2024, 3);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
    below += z < -1.959963984540054;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  const double p = 0.025;
  CHECK(std::abs(below / double(n) - p) < 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("neighbouring streams are uncorrelated") {
  const int n = 20000;
  double sxy = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    RngStream a(9, k);
    RngStream b(9, k + 1);
    for (int i = 0; i < n / 50; ++i) sxy += a.normal() * b.normal();
  }
  CHECK(std::abs(sxy / n) < 4.0 / std::sqrt(n));
}

TEST_CASE("external mean draws: sufficient and observation-level agree in law") {
  const int reps = 20000;
  double s_suff = 0.0;
  double s_obs = 0.0;
  double q_suff = 0.0;
  double q_obs = 0.0;
  for (int i = 0; i < reps; ++i) {
    RngStream r1(5, i);
    RngStream r2(6, i);
    const double a = draw_external_mean(r1, 0.3, 20, 1.0, false);
    const double b = draw_external_mean(r2, 0.3, 20, 1.0, true);
    s_suff += a;
    s_obs += b;
    q_suff += (a - 0.3) * (a - 0.3);
    q_obs += (b - 0.3) * (b - 0.3);
  }
  const double se = std::sqrt(0.05 / reps);
  CHECK(std::abs(s_suff / reps - 0.3) < 4 * se);
  CHECK(std::abs(s_obs / reps - 0.3) < 4 * se);
  const double var_se = 0.05 * std::sqrt(2.0 / reps);
  CHECK(std::abs(q_suff / reps - 0.05) < 4 * var_se);
  CHECK(std::abs(q_obs / reps - 0.05) < 4 * var_se);
}

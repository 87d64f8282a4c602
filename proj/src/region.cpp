#include "borrowoc/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace borrowoc {

namespace {

constexpr int kMaxScanExtensions = 8;

struct Scan {
  std::vector<double> x;
  std::vector<char> rejects;
};

template <class G>
Scan scan(const G& g, double lo, double hi, std::size_t points) {
  Scan s;
  s.x.resize(points);
  s.rejects.resize(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    s.x[i] = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    s.rejects[i] = g(s.x[i]) > 0.0;
  }
  return s;
}

std::size_t sign_changes(const std::vector<char>& rejects, std::size_t stride) {
  std::size_t changes = 0;
  for (std::size_t i = stride; i < rejects.size(); i += stride) {
    if (rejects[i] != rejects[i - stride]) ++changes;
  }
  return changes;
}

}  // namespace

RejectionRegion rejection_region(const ScenarioOneArm& scen, double external_mean,
                                 const BorrowingMethod& method, double c) {
  scen.validate();
  if (!(c >= 0.0 && c < 1.0)) {
    throw std::invalid_argument("rejection_region: c must lie in [0, 1)");
  }
  const double z_c = norm_quantile(c);
  // Inlined borrowing_posterior / posterior_z: this runs thousands of times
  // per region.
  const double v_current = scen.sigma_n() * scen.sigma_n();
  const double v_external = scen.sigma_nE() * scen.sigma_nE();
  const BorrowingKind kind = method.kind();
  const double fixed_delta = kind == BorrowingKind::kFixedPowerPrior ? method.delta() : 0.0;
  auto g = [&](double dbar) {
    double delta = fixed_delta;
    if (kind == BorrowingKind::kEmpiricalBayes) {
      const double diff = dbar - external_mean;
      delta = std::min(1.0, v_external / (std::max(diff * diff, v_current + v_external) - v_current));
    }
    const double prior_precision = delta / v_external;
    const double precision = 1.0 / v_current + prior_precision;
    const double mean = (dbar / v_current + prior_precision * external_mean) / precision;
    return (mean - scen.theta0) * std::sqrt(precision) - z_c;
  };

  double lo = std::min(scen.theta0 - 10.0 * scen.sigma_n(),
                       external_mean - 10.0 * scen.sigma_nE());
  double hi = std::max(scen.theta0 + 10.0 * scen.sigma_n(),
                       external_mean + 10.0 * scen.sigma_nE());

  RejectionRegion region;
  region.refinement_tol = kDefaultSolverTol;
  if (c == 0.0) {
    // P(theta > theta0 | data) > 0 holds for every data set.
    region.scan_bounds = Interval(lo, hi);
    region.intervals.emplace_back(-kInf, kInf);
    region.trivial = true;
    return region;
  }

  for (int k = 0; k < kMaxScanExtensions && g(lo) > 0.0; ++k) lo -= hi - lo;
  for (int k = 0; k < kMaxScanExtensions && !(g(hi) > 0.0); ++k) hi += hi - lo;
  region.scan_bounds = Interval(lo, hi);

  const std::size_t coarse = kRegionScanPoints;
  const std::size_t fine = 2 * (coarse - 1) + 1;
  Scan s = scan(g, lo, hi, fine);
  if (sign_changes(s.rejects, 2) != sign_changes(s.rejects, 1)) {
    region.rescanned = true;
    s = scan(g, lo, hi, 2 * (fine - 1) + 1);
  }

  double open_at = s.rejects.front() ? -kInf : kInf;
  bool inside = s.rejects.front();
  for (std::size_t i = 1; i < s.x.size(); ++i) {
    if (s.rejects[i] == s.rejects[i - 1]) continue;
    const double boundary =
        find_root(g, Interval(s.x[i - 1], s.x[i]), region.refinement_tol);
    if (s.rejects[i]) {
      open_at = boundary;
      inside = true;
    } else {
      region.intervals.emplace_back(open_at, boundary);
      inside = false;
    }
  }
  if (inside) region.intervals.emplace_back(open_at, kInf);

  if (region.intervals.empty() ||
      (region.intervals.size() == 1 && region.intervals.front().lo() == -kInf &&
       region.intervals.front().hi() == kInf)) {
    region.trivial = true;
  }
  return region;
}

RejectionRegion rejection_region(const ScenarioOneArm& scen, double external_mean,
                                 const BorrowingMethod& method) {
  return rejection_region(scen, external_mean, method, scen.threshold());
}

double rejection_prob(const RejectionRegion& region, double theta, std::int64_t n,
                      double sigma) {
  if (n < 1 || !(sigma > 0.0)) {
    throw std::invalid_argument("rejection_prob: need n >= 1 and sigma > 0");
  }
  const double se = sigma / std::sqrt(static_cast<double>(n));
  double total = 0.0;
  for (const auto& iv : region.intervals) {
    const double a = (iv.lo() - theta) / se;
    const double b = (iv.hi() - theta) / se;
    // Difference of whichever tail is small, to avoid cancellation.
    total += a > 0.0 ? norm_sf(a) - norm_sf(b) : norm_cdf(b) - norm_cdf(a);
  }
  return std::clamp(total, 0.0, 1.0);
}

std::size_t interval_count(const RejectionRegion& region) noexcept {
  return region.intervals.size();
}

}  // namespace borrowoc

#include "borrowoc/statmath.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace borrowoc {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw std::invalid_argument("Interval: NaN endpoint");
  }
  if (!(lo < hi)) {
    throw std::invalid_argument("Interval: requires lo < hi");
  }
}

bool Interval::finite() const noexcept {
  return std::isfinite(lo_) && std::isfinite(hi_);
}

double norm_pdf(double z) noexcept {
  constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double norm_cdf(double z) noexcept {
  if (std::isnan(z)) return z;
  if (z == -kInf) return 0.0;
  if (z == kInf) return 1.0;
  return 0.5 * std::erfc(-z * M_SQRT1_2);
}

double norm_sf(double z) noexcept { return norm_cdf(-z); }

double norm_quantile(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw std::domain_error("norm_quantile: p must lie in [0, 1]");
  }
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  // For p < 0.5 erfc_inv(2p) is evaluated on (1, 2]; switch to the mirrored
  // argument there to keep relative accuracy in the lower tail.
  if (p < 0.5) return -M_SQRT2 * boost::math::erfc_inv(2.0 * p);
  return M_SQRT2 * boost::math::erfc_inv(2.0 * (1.0 - p));
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
  double a;
  double b;
  double estimate;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel apply_rule(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  double f0 = f(center);
  double kronrod = f0 * wk[0];
  double gauss = f0 * wg[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double fp = f(center + half * xk[i]);
    const double fm = f(center - half * xk[i]);
    kronrod += (fp + fm) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

Interval truncate(const Interval& domain, GaussianScale scale) {
  const double reach = kTruncationSigmas * scale.sigma;
  double lo = std::isfinite(domain.lo()) ? domain.lo() : scale.mu - reach;
  double hi = std::isfinite(domain.hi()) ? domain.hi() : scale.mu + reach;
  if (!std::isfinite(domain.lo()) && !(lo < hi)) lo = hi - 2.0 * reach;
  if (!std::isfinite(domain.hi()) && !(lo < hi)) hi = lo + 2.0 * reach;
  return Interval(lo, hi);
}

constexpr std::size_t kMaxPanels = 4000;

}  // namespace

double integrate(const std::function<double(double)>& f, const Interval& domain,
                 double abs_tol, GaussianScale scale) {
  return integrate_piecewise(f, domain, {}, abs_tol, scale);
}

double integrate_piecewise(const std::function<double(double)>& f,
                           const Interval& domain,
                           std::span<const double> breakpoints, double abs_tol,
                           GaussianScale scale) {
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: abs_tol must be positive");
  }
  if (!(scale.sigma > 0.0)) {
    throw std::invalid_argument("integrate: scale.sigma must be positive");
  }
  const Interval range = truncate(domain, scale);

  std::vector<double> cuts{range.lo()};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (double x : inner) {
    if (x > cuts.back() && x < range.hi()) cuts.push_back(x);
  }
  cuts.push_back(range.hi());

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = apply_rule(f, cuts[i], cuts[i + 1]);
    total_error += p.error;
    heap.push(p);
  }

  while (total_error > abs_tol) {
    if (heap.size() >= kMaxPanels) {
      throw ConvergenceError("integrate: subdivision budget exhausted (error estimate " +
                             std::to_string(total_error) + ")");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("integrate: panel width reached machine resolution");
    }
    Panel left = apply_rule(f, worst.a, mid);
    Panel right = apply_rule(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    // Running error sums drift; recompute exactly once they look converged.
    if (total_error <= abs_tol) {
      std::vector<Panel> panels;
      panels.reserve(heap.size());
      auto copy = heap;
      while (!copy.empty()) {
        panels.push_back(copy.top());
        copy.pop();
      }
      std::vector<double> errors;
      errors.reserve(panels.size());
      for (const auto& p : panels) errors.push_back(p.error);
      total_error = compensated_sum(errors);
    }
  }

  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> parts;
  parts.reserve(panels.size());
  for (const auto& p : panels) parts.push_back(p.estimate);
  return compensated_sum(parts);
}

double find_root(const std::function<double(double)>& f, const Interval& bracket,
                 double tol) {
  if (!bracket.finite()) {
    throw std::invalid_argument("find_root: bracket must be finite");
  }
  const double a = bracket.lo();
  const double b = bracket.hi();
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
    throw InvalidBracket("find_root: f has the same sign at both bracket ends");
  }
  std::uintmax_t max_iter = 200;
  auto done = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
  const auto [lo, hi] =
      boost::math::tools::toms748_solve(f, a, b, fa, fb, done, max_iter);
  if (!done(lo, hi)) {
    // toms748 stops early on an exact zero; anything else is a budget overrun.
    if (f(lo) == 0.0) return lo;
    if (f(hi) == 0.0) return hi;
    throw ConvergenceError("find_root: iteration budget exhausted");
  }
  return 0.5 * (lo + hi);
}

Maximum maximize_1d(const std::function<double(double)>& f, const Interval& domain,
                    double tol, std::size_t grid_points) {
  if (!domain.finite()) {
    throw std::invalid_argument("maximize_1d: domain must be finite");
  }
  grid_points = std::max<std::size_t>(grid_points, 3);
  const double lo = domain.lo();
  const double step = domain.width() / static_cast<double>(grid_points - 1);
  auto grid_x = [&](std::size_t i) {
    return i + 1 == grid_points ? domain.hi() : lo + step * static_cast<double>(i);
  };

  std::size_t best = 0;
  double best_value = f(grid_x(0));
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double v = f(grid_x(i));
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }

  double a = grid_x(best == 0 ? 0 : best - 1);
  double b = grid_x(std::min(best + 1, grid_points - 1));
  constexpr double kInvPhi = 0.618033988749894848204586834366;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  if (fx > best_value) return {x, fx};
  return {grid_x(best), best_value};
}

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace borrowoc

#pragma once

// Numerical kernels shared by every operating-characteristic engine: the
// standard normal distribution, adaptive quadrature, bracketed root finding
// and one-dimensional maximization.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace borrowoc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when an iterative method exhausts its budget before meeting the
/// requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by find_root when f has the same sign at both ends of the bracket.
class InvalidBracket : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Open interval on the extended real line. Endpoints may be -inf / +inf,
/// but never NaN, and lo < hi always holds.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool finite() const noexcept;
  double width() const noexcept { return hi_ - lo_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

double norm_pdf(double z) noexcept;

/// Standard normal CDF. Accurate in relative terms far into both tails.
double norm_cdf(double z) noexcept;

/// Upper tail 1 - Phi(z), computed without cancellation.
double norm_sf(double z) noexcept;

/// Inverse of norm_cdf. p = 0 and p = 1 map to -inf and +inf; anything
/// outside [0, 1] (or NaN) throws std::domain_error.
double norm_quantile(double p);

/// Location/scale of the Gaussian factor that dominates an integrand. Infinite
/// integration limits are truncated at mu -/+ 8.5 sigma.
struct GaussianScale {
  double mu = 0.0;
  double sigma = 1.0;
};

inline constexpr double kTruncationSigmas = 8.5;
inline constexpr double kDefaultQuadTol = 1e-9;
inline constexpr double kDefaultSolverTol = 1e-10;

/// Globally adaptive 7/15-point Gauss-Kronrod integration to an absolute
/// tolerance. Deterministic for fixed inputs. Throws ConvergenceError when the
/// subdivision budget runs out.
double integrate(const std::function<double(double)>& f, const Interval& domain,
                 double abs_tol = kDefaultQuadTol, GaussianScale scale = {});

/// As integrate(), but splits the domain at the given interior points first.
/// Use this for integrands with known kinks or jumps.
double integrate_piecewise(const std::function<double(double)>& f,
                           const Interval& domain,
                           std::span<const double> breakpoints,
                           double abs_tol = kDefaultQuadTol,
                           GaussianScale scale = {});

/// Bracketed root (TOMS 748). Returns a point of a final bracket whose width
/// does not exceed tol.
double find_root(const std::function<double(double)>& f, const Interval& bracket,
                 double tol = kDefaultSolverTol);

struct Maximum {
  double argmax;
  double value;
};

/// Grid scan over a finite domain followed by golden-section refinement
/// around the best grid cell. Ties resolve to the smallest argmax.
Maximum maximize_1d(const std::function<double(double)>& f, const Interval& domain,
                    double tol = kDefaultSolverTol, std::size_t grid_points = 401);

/// Neumaier-compensated sum, accumulated in index order.
double compensated_sum(std::span<const double> values) noexcept;

}  // namespace borrowoc

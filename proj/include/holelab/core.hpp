#pragma once

// Shared vocabulary for holelab: planar points, error types and a few
// numerical helpers used throughout the library.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holelab {

using Point = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A precondition on a numeric argument was violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical method failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw DomainError(what);
}

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline double log_sum_exp(std::span<const double> values) {
  double hi = -kInf;
  for (double v : values) hi = std::max(hi, v);
  if (hi == -kInf || hi == kInf) return hi;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

/// x^2 log x with the continuous extension 0 at x = 0.
inline double x2logx(double x) { return x == 0.0 ? 0.0 : x * x * std::log(x); }

/// Evidence that a sample has exactly `expected` points in its hole.
struct HoleCertificate {
  double domination_margin = 0.0;  // analytic margin on the hole boundary (> 0 certifies)
  std::size_t roots_inside = 0;    // numerical count inside the hole
  std::size_t expected = 0;
  bool holds() const { return domination_margin > 0.0 && roots_inside == expected; }
};

/// Point configuration of a planar ensemble. Points are stored in the
/// normalized coordinates produced by the sampler; `scale` is the factor that
/// was divided out, so `unscaled(i) == points[i] * scale`.
class PointConfiguration {
 public:
  PointConfiguration() = default;
  PointConfiguration(std::vector<Point> points, double scale, std::string label)
      : points_(std::move(points)), scale_(scale), label_(std::move(label)) {
    require(scale_ > 0.0 && std::isfinite(scale_), "PointConfiguration: scale must be positive");
    for (const Point& z : points_)
      require(std::isfinite(z.real()) && std::isfinite(z.imag()),
              "PointConfiguration: non-finite coordinate");
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  std::vector<Point>& mutable_points() { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  Point unscaled(std::size_t i) const { return points_[i] * scale_; }
  double scale() const { return scale_; }
  const std::string& label() const { return label_; }

  /// Set when the root finder could not certify its residuals.
  bool degraded = false;
  /// Largest relative residual reported by the producing root finder (0 if n/a).
  double max_residual = 0.0;
  /// Radius (normalized coordinates) inside which points are trusted.
  double reliable_radius = kInf;
  std::optional<HoleCertificate> certificate;

 private:
  std::vector<Point> points_;
  double scale_ = 1.0;
  std::string label_;
};

}  // namespace holelab

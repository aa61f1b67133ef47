#pragma once

// Roots of high-degree polynomials whose coefficients span hundreds of orders
// of magnitude. Coefficients arrive as mantissa * exp(log_scale); the variable
// is rescaled so the extreme coefficients have equal modulus, the companion
// matrix is balanced and handed to shifted QR, and each eigenvalue gets one
// guarded Newton step.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "holelab/core.hpp"
#include "holelab/eigen_lapack.hpp"

namespace holelab {

struct PolyRoots {
  std::vector<Point> roots;
  double max_residual = 0.0;  // max over roots of |P(z)| / sum |c_k| |z|^k
};

namespace detail {

struct HornerOut {
  Point value;
  Point derivative;
  double abs_sum;
};

// Horner for sum d_k w^k (forward) together with the magnitude sum used to
// normalise the residual.
inline HornerOut horner(const std::vector<Point>& d, Point w) {
  Point p = d.back(), dp = 0.0;
  double s = std::abs(d.back());
  const double aw = std::abs(w);
  for (std::size_t k = d.size() - 1; k-- > 0;) {
    dp = dp * w + p;
    p = p * w + d[k];
    s = s * aw + std::abs(d[k]);
  }
  return {p, dp, s};
}

// Relative residual and Newton correction, evaluated in whichever direction
// keeps the powers of w bounded.
inline std::pair<double, Point> residual_and_step(const std::vector<Point>& d, Point w) {
  if (std::abs(w) <= 1.0) {
    const auto h = horner(d, w);
    const double res = h.abs_sum > 0.0 ? std::abs(h.value) / h.abs_sum : 0.0;
    const Point step = h.derivative != 0.0 ? h.value / h.derivative : 0.0;
    return {res, step};
  }
  std::vector<Point> rev(d.rbegin(), d.rend());
  const Point v = 1.0 / w;
  const auto h = horner(rev, v);
  const double res = h.abs_sum > 0.0 ? std::abs(h.value) / h.abs_sum : 0.0;
  const double n = static_cast<double>(d.size() - 1);
  const Point denom = n - v * h.derivative / h.value;
  const Point step = (h.value != 0.0 && denom != 0.0) ? w / denom : 0.0;
  return {res, step};
}

}  // namespace detail

/// Roots of sum_k mantissa[k] * exp(log_scale[k]) * z^k.
inline PolyRoots polynomial_roots(const std::vector<Point>& mantissa, const std::vector<double>& log_scale) {
  require(mantissa.size() == log_scale.size(), "polynomial_roots: size mismatch");
  require(mantissa.size() >= 2, "polynomial_roots: degree must be >= 1");
  const std::size_t n = mantissa.size() - 1;
  std::vector<double> logmag(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    logmag[k] = mantissa[k] == 0.0 ? -kInf : std::log(std::abs(mantissa[k])) + log_scale[k];
  require(std::isfinite(logmag[0]) && std::isfinite(logmag[n]), "polynomial_roots: extreme coefficients must be non-zero");

  const double log_rho = (logmag[0] - logmag[n]) / static_cast<double>(n);
  double top = -kInf;
  for (std::size_t k = 0; k <= n; ++k) top = std::max(top, logmag[k] + static_cast<double>(k) * log_rho);
  std::vector<Point> d(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    if (mantissa[k] == 0.0) continue;
    const double lm = log_scale[k] + static_cast<double>(k) * log_rho - top;
    d[k] = mantissa[k] * std::exp(lm);
  }

  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) c(0, static_cast<Eigen::Index>(k)) = -d[n - 1 - k] / d[n];
  for (std::size_t k = 1; k < n; ++k) c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  const auto eig = hessenberg_eigenvalues(c);

  PolyRoots out;
  out.roots.reserve(n);
  const double rho = std::exp(log_rho);
  for (Point w : eig) {
    auto [res, step] = detail::residual_and_step(d, w);
    const Point polished = w - step;
    if (std::isfinite(polished.real()) && std::isfinite(polished.imag())) {
      auto [res2, step2] = detail::residual_and_step(d, polished);
      (void)step2;
      if (res2 < res) {
        w = polished;
        res = res2;
      }
    }
    out.max_residual = std::max(out.max_residual, res);
    out.roots.push_back(w * rho);
  }
  return out;
}

/// Relative residual of z as a root of sum mantissa[k] exp(log_scale[k]) z^k,
/// evaluated in log-scaled arithmetic.
inline double relative_residual(const std::vector<Point>& mantissa, const std::vector<double>& log_scale, Point z) {
  const std::size_t n = mantissa.size() - 1;
  const double lz = std::log(std::abs(z));
  double top = -kInf;
  for (std::size_t k = 0; k <= n; ++k)
    if (mantissa[k] != 0.0) top = std::max(top, log_scale[k] + std::log(std::abs(mantissa[k])) + k * lz);
  Point sum = 0.0;
  double abs_sum = 0.0;
  const Point phase = z / std::abs(z);
  Point ph = 1.0;
  for (std::size_t k = 0; k <= n; ++k, ph *= phase) {
    if (mantissa[k] == 0.0) continue;
    const double m = std::exp(log_scale[k] + k * lz - top);
    sum += mantissa[k] * m * ph;
    abs_sum += std::abs(mantissa[k]) * m;
  }
  return std::abs(sum) / abs_sum;
}

}  // namespace holelab

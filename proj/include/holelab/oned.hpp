#pragma once

// One-dimensional log-gas companions: the semicircle law with its symmetric
// gap deformation, grid densities with their log energy, and the check of the
// equilibrium conditions V - beta U = const on the support.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "holelab/core.hpp"
#include "holelab/quadrature.hpp"
#include "holelab/rng.hpp"

namespace holelab {

inline constexpr double kSemicircleEdge = 1.4142135623730951;  // sqrt 2

inline double semicircle_density(double x) {
  const double s = 2.0 - x * x;
  return s > 0.0 ? std::sqrt(s) / kPi : 0.0;
}

inline double semicircle_cdf(double x) {
  if (x <= -kSemicircleEdge) return 0.0;
  if (x >= kSemicircleEdge) return 1.0;
  return 0.5 + (x * std::sqrt(2.0 - x * x) + 2.0 * std::asin(x / kSemicircleEdge)) / (2.0 * kPi);
}

/// Semicircle conditioned to leave (-w, w) empty:
/// (1/pi) sqrt((L^2 - x^2) / (x^2 - w^2)) |x| on w <= |x| <= L, L^2 = w^2 + 2.
inline double gap_density(double w, double x) {
  require(w >= 0.0, "gap_density: w must be >= 0");
  const double L2 = w * w + 2.0, x2 = x * x;
  if (x2 < w * w || x2 > L2) return 0.0;
  if (x2 == w * w) return w == 0.0 ? std::sqrt(2.0) / kPi : kInf;
  if (w == 0.0) return semicircle_density(x);
  return std::sqrt((L2 - x2) / (x2 - w * w)) * std::abs(x) / kPi;
}

inline double gap_edge(double w) { return std::sqrt(w * w + 2.0); }

/// Mass of f_w on [lo, hi]. On each half-line x^2 = w^2 + u^2 turns the
/// integrand into sqrt(L^2 - w^2 - u^2) / pi, which has no interior singularity.
inline double gap_density_mass(double w, double lo, double hi) {
  require(w >= 0.0, "gap_density_mass: w must be >= 0");
  if (hi <= lo) return 0.0;
  const double L = gap_edge(w), top = L * L - w * w;
  auto half = [&](double a, double b) {  // 0 <= a < b, mass of [a, b] on the positive side
    a = std::clamp(a, w, L);
    b = std::clamp(b, w, L);
    if (b <= a) return 0.0;
    const double ua = std::sqrt(std::max(0.0, a * a - w * w)), ub = std::sqrt(std::max(0.0, b * b - w * w));
    if (ub <= ua) return 0.0;
    return quad::integrate_singular([&](double u) { return std::sqrt(std::max(0.0, top - u * u)) / kPi; }, ua, ub);
  };
  double m = 0.0;
  if (hi > 0.0) m += half(std::max(lo, 0.0), hi);
  if (lo < 0.0) m += half(std::max(-hi, 0.0), -lo);
  return m;
}

/// Piecewise-constant density: values[i] on [x0 + i h, x0 + (i + 1) h).
struct GridDensity {
  double x0 = 0.0;
  double h = 0.0;
  std::vector<double> values;

  std::size_t cells() const { return values.size(); }
  double center(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * h; }
  double mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * h;
  }

  /// Cell averages of the law with distribution function F.
  static GridDensity from_cdf(const std::function<double(double)>& F, double a, double b, std::size_t cells) {
    require(b > a && cells >= 1, "GridDensity: need a < b and at least one cell");
    GridDensity g{a, (b - a) / static_cast<double>(cells), std::vector<double>(cells)};
    for (std::size_t i = 0; i < cells; ++i) g.values[i] = (F(a + (i + 1) * g.h) - F(a + i * g.h)) / g.h;
    return g;
  }

  /// Cell averages of a density (Gauss-Kronrod per cell).
  static GridDensity from_density(const std::function<double(double)>& f, double a, double b, std::size_t cells) {
    require(b > a && cells >= 1, "GridDensity: need a < b and at least one cell");
    GridDensity g{a, (b - a) / static_cast<double>(cells), std::vector<double>(cells)};
    for (std::size_t i = 0; i < cells; ++i) g.values[i] = quad::integrate(f, a + i * g.h, a + (i + 1) * g.h, {}, 1e-14) / g.h;
    return g;
  }

  GridDensity reflected() const {
    GridDensity r{-(x0 + h * static_cast<double>(cells())), h, values};
    std::reverse(r.values.begin(), r.values.end());
    return r;
  }
};

namespace detail {

/// int_0^h int_0^h log|x - y + k h| dx dy.
inline double cell_pair_log(std::size_t k, double h) {
  if (k < 20) {
    auto G = [](double t) { return t == 0.0 ? 0.0 : 0.5 * t * t * std::log(std::abs(t)) - 0.75 * t * t; };
    const double d = static_cast<double>(k) * h;
    return G(d + h) - 2.0 * G(d) + G(d - h);
  }
  // log(d + s) averaged over the triangular law of s on [-h, h]
  const double q = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  return h * h * (std::log(static_cast<double>(k) * h) - q / 12.0 - q * q / 60.0 - q * q * q / 168.0);
}

}  // namespace detail

/// Sigma(mu) = int int log|x - y| dmu dmu, exact for piecewise-constant mu.
inline double log_energy(const GridDensity& mu) {
  const std::size_t m = mu.cells();
  std::vector<double> kernel(m);
  for (std::size_t k = 0; k < m; ++k) kernel[k] = detail::cell_pair_log(k, mu.h);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (mu.values[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += mu.values[j] * kernel[i > j ? i - j : j - i];
    s += mu.values[i] * row;
  }
  return s;
}

/// int V dmu - (beta / 2) Sigma(mu). Subtract the value at the minimizer to get the rate.
inline double onedim_rate_functional(const GridDensity& mu, const std::function<double(double)>& V, double beta) {
  require(beta > 0.0, "onedim_rate_functional: beta must be positive");
  require(mu.h > 0.0 && mu.cells() >= 1, "onedim_rate_functional: empty grid");
  for (double v : mu.values) require(v >= 0.0 && std::isfinite(v), "onedim_rate_functional: density must be nonnegative");
  require(std::abs(mu.mass() - 1.0) <= 1e-6, "onedim_rate_functional: density must have unit mass");
  // four-point Gauss-Legendre on each cell
  static const double node[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
  static const double weight[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
  double pot = 0.0;
  for (std::size_t i = 0; i < mu.cells(); ++i) {
    if (mu.values[i] == 0.0) continue;
    double c = 0.0;
    for (int q = 0; q < 4; ++q) c += weight[q] * V(mu.center(i) + 0.5 * mu.h * node[q]);
    pot += mu.values[i] * 0.5 * mu.h * c;
  }
  return pot - 0.5 * beta * log_energy(mu);
}

/// U(x) = int log|x - y| sigma(y) dy for a density supported on [a, b].
inline double log_potential(const std::function<double(double)>& sigma, double a, double b, double x) {
  // integrate in the distance t = |x - y| so the nodes never reach t = 0
  auto left = [&](double lo, double hi) {  // pieces with y <= x
    if (hi <= lo) return 0.0;
    return quad::integrate_singular([&](double t) { return std::log(t) * sigma(x - t); }, x - hi, x - lo);
  };
  auto right = [&](double lo, double hi) {  // y >= x
    if (hi <= lo) return 0.0;
    return quad::integrate_singular([&](double t) { return std::log(t) * sigma(x + t); }, lo - x, hi - x);
  };
  if (x >= b) return left(a, b);
  if (x <= a) return right(a, b);
  return left(a, x) + right(x, b);
}

inline double characterization_value(const std::function<double(double)>& sigma, double a, double b,
                                     const std::function<double(double)>& V, double beta, double x) {
  return V(x) - beta * log_potential(sigma, a, b, x);
}

struct CharacterizationResult {
  double max_deviation = 0.0;     // sup over the shrunk support of |V - beta U - C|
  double constant = 0.0;          // C: grid mean of V - beta U
  double min_exterior_excess = 0.0;  // min over exterior probes of (V - beta U) - C
  bool exterior_ok = false;
};

/// V - beta U_sigma must be constant on supp sigma = [a, b] and larger outside.
inline CharacterizationResult equilibrium_characterization_check(const std::function<double(double)>& sigma, double a, double b,
                                                                 const std::function<double(double)>& V, double beta,
                                                                 std::size_t grid = 201) {
  require(b > a, "equilibrium_characterization_check: need a < b");
  require(grid >= 2, "equilibrium_characterization_check: grid too small");
  const double w = b - a, lo = a + 0.02 * w, hi = b - 0.02 * w;
  std::vector<double> v(grid);
  double mean = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    v[i] = characterization_value(sigma, a, b, V, beta, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1));
    mean += v[i];
  }
  CharacterizationResult r;
  r.constant = mean / static_cast<double>(grid);
  for (double x : v) r.max_deviation = std::max(r.max_deviation, std::abs(x - r.constant));
  r.min_exterior_excess = kInf;
  for (double off : {0.02, 0.05, 0.1, 0.2, 0.4})
    for (double x : {a - off * w, b + off * w})
      r.min_exterior_excess = std::min(r.min_exterior_excess, characterization_value(sigma, a, b, V, beta, x) - r.constant);
  r.exterior_ok = r.min_exterior_excess > 0.0;
  return r;
}

namespace detail {

/// Number of eigenvalues below x of the symmetric tridiagonal (d, e), by
/// the signs of the LDL^T pivots of T - x.
inline std::size_t eigenvalues_below(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
  std::size_t count = 0;
  double q = d[0] - x;
  for (Eigen::Index i = 0;; ++i) {
    if (q == 0.0) q = -1e-300;
    count += q < 0.0;
    if (i + 1 == d.size()) break;
    q = d[i + 1] - x - e[i] * e[i] / q;
  }
  return count;
}

}  // namespace detail

/// GUE(n) spectrum (semicircle on [-sqrt 2, sqrt 2]) conditioned on no
/// eigenvalue in (-w, w), by rejection; the gap test runs on the tridiagonal
/// model before any diagonalization. Empty if max_tries draws all fail.
inline std::optional<std::vector<double>> sample_gue_with_gap(std::size_t n, double w, Rng& rng, std::size_t max_tries) {
  require(n >= 2, "sample_gue_with_gap: n must be >= 2");
  require(w > 0.0, "sample_gue_with_gap: w must be positive");
  const auto m = static_cast<Eigen::Index>(n);
  const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  Eigen::VectorXd diag(m), sub(m - 1);
  for (std::size_t t = 0; t < max_tries; ++t) {
    for (Eigen::Index i = 0; i < m; ++i) diag[i] = rng.normal() * s;
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = rng.chi(2.0 * static_cast<double>(m - 1 - i)) / std::sqrt(2.0) * s;
    // the closed interval [-w, w] must be empty; eigenvalues are a.s. not at +-w
    if (detail::eigenvalues_below(diag, sub, w) != detail::eigenvalues_below(diag, sub, -w)) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("sample_gue_with_gap: tridiagonal QR did not converge");
    return std::vector<double>(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  }
  return std::nullopt;
}

}  // namespace holelab

#pragma once

// Exact samplers for the planar and linear ensembles: finite Ginibre
// eigenvalues, Kostlan radii, GUE eigenvalues, Weyl-polynomial and truncated
// GEF zeros, plus energy statistics of a configuration.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include "holelab/core.hpp"
#include "holelab/eigen_lapack.hpp"
#include "holelab/polyroots.hpp"
#include "holelab/quadrature.hpp"
#include "holelab/rng.hpp"

namespace holelab {

/// Relative residual above which a root configuration is flagged degraded.
inline constexpr double kRootResidualTolerance = 1e-7;

struct GefCoefficients {
  std::vector<Point> xi;
  std::size_t degree() const { return xi.empty() ? 0 : xi.size() - 1; }
};

inline GefCoefficients sample_gef_coefficients(std::size_t degree, Rng& rng) {
  GefCoefficients c;
  c.xi.resize(degree + 1);
  for (auto& x : c.xi) x = rng.complex_normal();
  return c;
}

/// Eigenvalues of an n x n matrix with iid complex Gaussian entries of variance 1/n.
inline PointConfiguration sample_ginibre_matrix(std::size_t n, Rng& rng) {
  require(n >= 1 && n <= 2000, "sample_ginibre_matrix: n must lie in [1, 2000]");
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd a(m, m);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = rng.complex_normal() * s;
  return PointConfiguration(general_eigenvalues(a), 1.0, "ginibre");
}

/// Kostlan radii sqrt(Gamma_k), k = 1..n, independent. For the finite
/// ensemble these are the moduli of sqrt(n) times the matrix eigenvalues; for
/// the infinite ensemble pass the truncation index.
inline std::vector<double> sample_ginibre_radii(std::size_t n, Rng& rng) {
  require(n >= 1, "sample_ginibre_radii: n must be >= 1");
  std::vector<double> r(n);
  for (std::size_t k = 1; k <= n; ++k) r[k - 1] = std::sqrt(rng.gamma(static_cast<double>(k)));
  return r;
}

/// GUE eigenvalues from the beta = 2 tridiagonal model, scaled to the
/// semicircle on [-sqrt 2, sqrt 2].
inline std::vector<double> sample_gue(std::size_t n, Rng& rng) {
  require(n >= 1, "sample_gue: n must be >= 1");
  const auto m = static_cast<Eigen::Index>(n);
  const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i < m; ++i) diag[i] = rng.normal() * s;  // N(0,2)/sqrt 2 = N(0,1)
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = rng.chi(2.0 * static_cast<double>(m - 1 - i)) / std::sqrt(2.0) * s;
  if (n == 1) return {diag[0]};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("sample_gue: tridiagonal QR did not converge");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + m};
}

/// Zeros of sum_k xi_k (R w)^k / sqrt(k!) in the variable w, i.e. of F(R w).
inline PolyRoots weyl_roots(const GefCoefficients& c, double R) {
  const std::size_t n = c.degree();
  std::vector<double> ls(n + 1);
  const double lr = std::log(R);
  for (std::size_t k = 0; k <= n; ++k) ls[k] = static_cast<double>(k) * lr - 0.5 * std::lgamma(static_cast<double>(k) + 1.0);
  return polynomial_roots(c.xi, ls);
}

/// Zeros of a degree-n Weyl polynomial divided by sqrt(n).
inline PointConfiguration sample_weyl_zeros(std::size_t n, Rng& rng) {
  require(n >= 5 && n <= 800, "sample_weyl_zeros: degree must lie in [5, 800]");
  const auto c = sample_gef_coefficients(n, rng);
  const double scale = std::sqrt(static_cast<double>(n));
  auto roots = weyl_roots(c, scale);
  PointConfiguration out(std::move(roots.roots), scale, "weyl");
  out.max_residual = roots.max_residual;
  out.degraded = roots.max_residual > kRootResidualTolerance;
  return out;
}

inline double gef_alpha_min(double R) { return 4.0 + 2.0 * std::log1p(R); }

/// Log of the share of the GEF variance at modulus r that is lost by keeping
/// only the terms k <= N, i.e. log P[Poisson(r^2) > N]; halve for the
/// corresponding modulus ratio.
inline double gef_truncation_log_tail(std::size_t N, double r) {
  const double p = boost::math::gamma_p(static_cast<double>(N) + 1.0, r * r);
  return p > 0.0 ? std::log(p) : -kInf;
}

/// Zeros of the degree floor(alpha R^2) truncation of F(R w), restricted to
/// the reliable zone |w| <= 0.9 sqrt(alpha).
inline PointConfiguration sample_gef_zeros(double R, double alpha, Rng& rng) {
  require(R > 0.0, "sample_gef_zeros: R must be positive");
  require(alpha >= gef_alpha_min(R) - 1e-12, "sample_gef_zeros: alpha below 4 + 2 log(1 + R)");
  const auto n = static_cast<std::size_t>(std::floor(alpha * R * R));
  require(n >= 1 && n <= 4000, "sample_gef_zeros: truncation degree out of range");
  const auto c = sample_gef_coefficients(n, rng);
  auto roots = weyl_roots(c, R);
  const double keep = 0.9 * std::sqrt(alpha);
  std::vector<Point> pts;
  for (const Point& w : roots.roots)
    if (std::abs(w) <= keep) pts.push_back(w);
  PointConfiguration out(std::move(pts), R, "gef");
  out.max_residual = roots.max_residual;
  out.degraded = roots.max_residual > kRootResidualTolerance;
  out.reliable_radius = keep;
  return out;
}

struct SmoothedStats {
  double pair_energy = 0.0;      // (1/N^2) sum_{j != k} log|w_j - w_k|
  double mean_sq = 0.0;          // (1/N) sum |w_j|^2
  double smoothed_energy = 0.0;  // Sigma of the empirical measure smeared over circles of radius t
  double smoothed_mean_sq = 0.0; // mean_sq + t^2
};

/// Energy between two uniform circle measures of radius t whose centres are d apart.
inline double circle_pair_energy(double d, double t) {
  if (d >= 2.0 * t) return std::log(d);
  // Jensen gives log max(d, t) for log|.|; add back where |x - c| < t.
  // With phi = pi - theta, |x - c| = hypot(|d - t|, 2 sqrt(dt) sin(phi/2)) < t
  // on 0 < phi < phi0; the integrand has a log singularity at phi = 0 if d = t.
  const double phi0 = kPi - std::acos(std::clamp(-d / (2.0 * t), -1.0, 1.0));
  const double e = std::abs(d - t), g = 2.0 * std::sqrt(d * t);
  auto f = [&](double phi) { return std::max(0.0, std::log(t) - std::log(std::hypot(e, g * std::sin(0.5 * phi)))); };
  const double extra = d == 0.0 ? 0.0 : quad::integrate_singular(f, 0.0, phi0) / kPi;
  return std::log(std::max(d, t)) + extra;
}

inline SmoothedStats smoothed_config_stats(const PointConfiguration& config, double t) {
  require(t > 0.0, "smoothed_config_stats: t must be positive");
  require(config.size() >= 2, "smoothed_config_stats: need at least two points");
  const auto& w = config.points();
  const double n = static_cast<double>(w.size());
  SmoothedStats s;
  double pair = 0.0, smooth = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    sq += std::norm(w[j]);
    for (std::size_t k = j + 1; k < w.size(); ++k) {
      const double d = std::abs(w[j] - w[k]);
      pair += d > 0.0 ? std::log(d) : -kInf;
      smooth += circle_pair_energy(d, t);
    }
  }
  s.pair_energy = 2.0 * pair / (n * n);
  s.smoothed_energy = (2.0 * smooth + n * std::log(t)) / (n * n);
  s.mean_sq = sq / n;
  s.smoothed_mean_sq = s.mean_sq + t * t;
  return s;
}

}  // namespace holelab

#pragma once

// Observables of point configurations: smooth linear statistics, Dirichlet
// energies of test functions and radial intensity profiles.

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "holelab/core.hpp"
#include "holelab/quadrature.hpp"

namespace holelab {

/// Compactly supported test function on the plane, either radial with a
/// closed-form derivative or sampled on a square grid and interpolated
/// bilinearly (zero outside the grid).
class TestFunction {
 public:
  using Profile = std::function<double(double)>;

  /// phi(w) = f(|w|), f = 0 beyond `support`; `breaks` are kinks of f.
  static TestFunction radial(Profile f, Profile df, double support, std::vector<double> breaks = {}) {
    require(support > 0.0 && std::isfinite(support), "TestFunction: support must be positive and finite");
    TestFunction t;
    t.f_ = std::move(f);
    t.df_ = std::move(df);
    t.support_ = support;
    auto g = [&](double r) {
      const double d = t.df_(r);
      return d * d * r;
    };
    std::erase_if(breaks, [&](double b) { return b <= 0.0 || b >= support; });
    t.dirichlet_ = 2.0 * kPi * quad::integrate(g, 0.0, support, breaks, 1e-10);
    if (!std::isfinite(t.dirichlet_)) throw DomainError("TestFunction: infinite Dirichlet energy");
    return t;
  }

  /// values(i, j) = phi(-h + i dx, -h + j dx), dx = 2h / (n - 1). The outer
  /// ring must vanish so that the extension by zero stays continuous.
  static TestFunction grid(Eigen::MatrixXd values, double half_width) {
    require(half_width > 0.0, "TestFunction: grid half-width must be positive");
    require(values.rows() == values.cols() && values.rows() >= 3, "TestFunction: grid must be square, n >= 3");
    const Eigen::Index n = values.rows();
    for (Eigen::Index i = 0; i < n; ++i)
      require(values(i, 0) == 0.0 && values(i, n - 1) == 0.0 && values(0, i) == 0.0 && values(n - 1, i) == 0.0,
              "TestFunction: grid values must vanish on the boundary");
    TestFunction t;
    t.half_width_ = half_width;
    t.dx_ = 2.0 * half_width / static_cast<double>(n - 1);
    // bilinear cells integrate exactly: over one cell, int phi_x^2 = (a^2 + ab + b^2)/3
    // with a, b the differences along its two horizontal edges
    double e = 0.0, reach = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
      for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const double a = values(i + 1, j) - values(i, j), b = values(i + 1, j + 1) - values(i, j + 1);
        const double c = values(i, j + 1) - values(i, j), d = values(i + 1, j + 1) - values(i + 1, j);
        e += (a * a + a * b + b * b + c * c + c * d + d * d) / 3.0;
      }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (values(i, j) != 0.0) reach = std::max(reach, std::hypot(-half_width + i * t.dx_, -half_width + j * t.dx_));
    t.grid_ = std::make_shared<const Eigen::MatrixXd>(std::move(values));
    t.dirichlet_ = e;
    t.support_ = reach + t.dx_ * std::sqrt(2.0);
    return t;
  }

  double operator()(Point w) const {
    if (f_) {
      const double r = std::abs(w);
      return r >= support_ ? 0.0 : f_(r);
    }
    const Eigen::Index n = grid_->rows();
    const double x = (w.real() + half_width_) / dx_, y = (w.imag() + half_width_) / dx_;
    if (!(x >= 0.0 && y >= 0.0 && x <= n - 1 && y <= n - 1)) return 0.0;
    const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>(x), n - 2);
    const auto j = std::min<Eigen::Index>(static_cast<Eigen::Index>(y), n - 2);
    const double u = x - i, v = y - j;
    const auto& g = *grid_;
    return (1 - u) * (1 - v) * g(i, j) + u * (1 - v) * g(i + 1, j) + (1 - u) * v * g(i, j + 1) + u * v * g(i + 1, j + 1);
  }

  bool is_radial() const { return static_cast<bool>(f_); }
  double support_radius() const { return support_; }
  double dirichlet() const { return dirichlet_; }

 private:
  Profile f_, df_;
  std::shared_ptr<const Eigen::MatrixXd> grid_;
  double half_width_ = 0.0, dx_ = 0.0;
  double support_ = 0.0;
  double dirichlet_ = 0.0;
};

/// D(phi) = int |grad phi|^2 dm, computed once at construction.
inline double dirichlet_energy(const TestFunction& phi) { return phi.dirichlet(); }

/// n(phi; R) = sum_j phi(z_j / R) over unscaled points.
inline double linear_statistic(const PointConfiguration& config, const TestFunction& phi, double R) {
  require(R > 0.0, "linear_statistic: R must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) s += phi(config.unscaled(i) / R);
  return s;
}

struct RadialHistogram {
  std::vector<double> edges;      // bins + 1 radii
  std::vector<double> intensity;  // mean count per unit area
  std::vector<double> std_error;    // jackknife over configurations
  std::size_t samples = 0;

  double center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
};

/// Empirical intensity on annular bins of [0, r_max) (unscaled radii).
inline RadialHistogram radial_profile(const std::vector<PointConfiguration>& samples, std::size_t bins, double r_max) {
  require(bins >= 1, "radial_profile: bins must be >= 1");
  require(r_max > 0.0, "radial_profile: r_max must be positive");
  RadialHistogram h;
  h.samples = samples.size();
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = r_max * static_cast<double>(b) / static_cast<double>(bins);
  std::vector<double> area(bins);
  for (std::size_t b = 0; b < bins; ++b) area[b] = kPi * (h.edges[b + 1] * h.edges[b + 1] - h.edges[b] * h.edges[b]);

  const std::size_t m = samples.size();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(bins));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t i = 0; i < samples[s].size(); ++i) {
      const double r = std::abs(samples[s].unscaled(i));
      if (r >= r_max) continue;
      const auto b = std::min(bins - 1, static_cast<std::size_t>(r / r_max * static_cast<double>(bins)));
      counts(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(b)) += 1.0;
    }
  h.intensity.assign(bins, 0.0);
  h.std_error.assign(bins, 0.0);
  if (m == 0) return h;
  for (std::size_t b = 0; b < bins; ++b) {
    const auto col = counts.col(static_cast<Eigen::Index>(b));
    const double total = col.sum();
    h.intensity[b] = total / static_cast<double>(m) / area[b];
    if (m < 2) continue;
    // leave-one-out means
    double var = 0.0;
    const double md = static_cast<double>(m);
    for (std::size_t s = 0; s < m; ++s) {
      const double loo = (total - col[static_cast<Eigen::Index>(s)]) / (md - 1.0) / area[b];
      var += (loo - h.intensity[b]) * (loo - h.intensity[b]);
    }
    h.std_error[b] = std::sqrt((md - 1.0) / md * var);
  }
  return h;
}

}  // namespace holelab

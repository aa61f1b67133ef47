#pragma once

// Weighted Fekete and Leja points for the weight exp(-|z|^2 / 2) on closed
// sets E = {z outside a hole, |z| <= r_out}, and the hole rates they give.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "holelab/core.hpp"
#include "holelab/regions.hpp"
#include "holelab/rng.hpp"

namespace holelab {

/// Closed set E = closure(C \ hole) intersected with the disk |z| <= outer_radius.
/// Holes must satisfy an exterior ball condition: disks, convex polygons,
/// centred annuli, or unions of these whose bounding circles are disjoint.
struct FeketeDomain {
  std::optional<HoleRegion> hole;
  double outer_radius = kInf;

  static FeketeDomain plane() { return {}; }
  static FeketeDomain outside(HoleRegion h, double outer_radius = kInf) {
    FeketeDomain d{std::move(h), outer_radius};
    d.validate();
    return d;
  }

  void validate() const {
    require(outer_radius > 0.0, "FeketeDomain: outer radius must be positive");
    if (!hole) return;
    if (hole->kind() == HoleRegion::Kind::Union) {
      const auto& p = hole->parts();
      for (std::size_t i = 0; i < p.size(); ++i) {
        require(p[i].kind() != HoleRegion::Kind::Union, "FeketeDomain: nested unions are not supported");
        for (std::size_t j = i + 1; j < p.size(); ++j)
          require(std::abs(p[i].bound_center() - p[j].bound_center()) > p[i].bound_radius() + p[j].bound_radius(),
                  "FeketeDomain: union parts must be separated (exterior ball condition)");
      }
    }
    if (std::isfinite(outer_radius))
      require(std::abs(hole->bound_center()) + hole->bound_radius() < outer_radius,
              "FeketeDomain: hole must lie inside the outer disk");
  }

  bool contains(Point z) const {
    if (std::abs(z) > outer_radius * (1.0 + 1e-14)) return false;
    // boundary points produced by project() may sit an ulp inside the open hole
    return !hole || !hole->contains(z) || std::abs(project_out(*hole, z) - z) <= 1e-12 * (1.0 + std::abs(z));
  }

  /// Nearest point of E (exact for every supported hole kind away from the
  /// outer circle, which is kept clear of the hole).
  Point project(Point z) const {
    if (hole && hole->contains(z)) z = project_out(*hole, z);
    const double r = std::abs(z);
    if (r > outer_radius) z *= outer_radius / r;
    return z;
  }

 private:
  static Point project_out(const HoleRegion& h, Point z) {
    switch (h.kind()) {
      case HoleRegion::Kind::Disk: {
        const Point d = z - h.center();
        const double r = std::abs(d);
        return h.center() + h.radius() * (r > 0.0 ? d / r : Point(1.0, 0.0));
      }
      case HoleRegion::Kind::Annulus: {
        const double r = std::abs(z);
        const Point u = r > 0.0 ? z / r : Point(1.0, 0.0);
        return (r - h.inner_radius() < h.radius() - r ? h.inner_radius() : h.radius()) * u;
      }
      case HoleRegion::Kind::ConvexPolygon: {
        const auto& v = h.vertices();
        Point best = z;
        double dist = kInf;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const Point a = v[i], e = v[(i + 1) % v.size()] - a;
          const double t = std::clamp(((z - a) * std::conj(e)).real() / std::norm(e), 0.0, 1.0);
          const Point p = a + t * e;
          if (std::abs(p - z) < dist) dist = std::abs(p - z), best = p;
        }
        return best;
      }
      case HoleRegion::Kind::Union:
        for (const auto& p : h.parts())
          if (p.contains(z)) return project_out(p, z);
        return z;
    }
    return z;
  }
};

/// sum_{j<k} [log|z_j - z_k| - |z_j|^2/2 - |z_k|^2/2]; -inf if two points coincide.
inline double fekete_objective(const std::vector<Point>& z) {
  require(z.size() >= 2, "fekete_objective: need at least two points");
  const double n = static_cast<double>(z.size());
  double pair = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    sq += std::norm(z[j]);
    for (std::size_t k = j + 1; k < z.size(); ++k) {
      const double d = std::abs(z[j] - z[k]);
      if (d == 0.0) return -kInf;
      pair += std::log(d);
    }
  }
  return pair - 0.5 * (n - 1.0) * sq;
}

inline double fekete_objective(const PointConfiguration& config) { return fekete_objective(config.points()); }

/// delta_n = exp(2 objective / (n (n - 1))).
inline double fekete_log_delta(double objective, std::size_t n) {
  const double m = static_cast<double>(n);
  return 2.0 * objective / (m * (m - 1.0));
}

struct FeketeResult {
  PointConfiguration config;
  double objective = -kInf;
  double delta = 0.0;
  double log_delta = -kInf;
  double stationarity = kInf;  // max projected force per point, in units of n - 1
  std::size_t iterations = 0;   // of the winning restart
  std::size_t converged_restarts = 0;
  bool flagged = false;         // no restart reached a feasible stationary point
};

struct FeketeOptions {
  std::size_t restarts = 20;     // first half boundary-heavy, second half uniform
  std::size_t max_iterations = 50000;
  double tolerance = 1e-6;
};

namespace detail {

inline void fekete_gradient(const std::vector<Point>& z, std::vector<Point>& g) {
  const std::size_t n = z.size();
  g.assign(n, Point(0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const Point d = z[j] - z[k];
      const Point f = d / std::norm(d);
      g[j] += f;
      g[k] -= f;
    }
  const double w = static_cast<double>(n) - 1.0;
  for (std::size_t j = 0; j < n; ++j) g[j] -= w * z[j];
}

/// max_j |P(z_j + t g_j) - z_j| / t / (n - 1) for a short step t.
inline double projected_force(const FeketeDomain& e, const std::vector<Point>& z, const std::vector<Point>& g) {
  double gmax = 0.0;
  for (const Point& x : g) gmax = std::max(gmax, std::abs(x));
  if (gmax == 0.0) return 0.0;
  const double t = 1e-7 / gmax;
  double m = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) m = std::max(m, std::abs(e.project(z[j] + t * g[j]) - z[j]) / t);
  return m / (static_cast<double>(z.size()) - 1.0);
}

inline Point uniform_in(const FeketeDomain& e, double rho, Rng& rng) {
  for (;;) {
    const Point z = std::polar(rho * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
    if (e.contains(z)) return z;
  }
}

inline std::vector<Point> fekete_start(const FeketeDomain& e, std::size_t n, bool boundary_heavy, Rng& rng) {
  const double reach = e.hole ? std::max(1.0, std::abs(e.hole->bound_center()) + e.hole->bound_radius()) : 1.0;
  const double rho = std::min(e.outer_radius, 1.2 * reach);
  std::vector<Point> z;
  z.reserve(n);
  if (boundary_heavy) {
    const std::size_t m = n / 2;
    std::vector<Point> ring;
    if (e.hole)
      for (const auto& b : e.hole->boundary(4 * n)) ring.push_back(b.z);
    else
      for (std::size_t i = 0; i < 4 * n; ++i) ring.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>(i) / (4.0 * n)));
    for (std::size_t i = 0; i < m; ++i) z.push_back(e.project(ring[rng.index(ring.size())] + 1e-3 * rng.complex_normal()));
  }
  while (z.size() < n) z.push_back(uniform_in(e, rho, rng));
  return z;
}

struct Ascent {
  std::vector<Point> z;
  double objective = -kInf;
  double stationarity = kInf;
  std::size_t iterations = 0;
};

/// Projected gradient ascent, Barzilai-Borwein steps with a non-monotone
/// Armijo safeguard.
inline Ascent projected_ascent(const FeketeDomain& e, std::vector<Point> z, const FeketeOptions& opt) {
  const std::size_t n = z.size();
  for (Point& x : z) x = e.project(x);
  std::vector<Point> g, z_new, g_new;
  double f = fekete_objective(z);
  fekete_gradient(z, g);
  std::vector<double> history(10, f);
  double step = 1e-3 / static_cast<double>(n);
  Ascent out;
  std::size_t it = 0;
  for (; it < opt.max_iterations; ++it) {
    out.stationarity = projected_force(e, z, g);
    if (out.stationarity <= opt.tolerance) break;
    const double ref = *std::max_element(history.begin(), history.end());
    double f_new = -kInf;
    for (int bt = 0; bt < 60; ++bt) {
      z_new.resize(n);
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        z_new[j] = e.project(z[j] + step * g[j]);
        gain += ((z_new[j] - z[j]) * std::conj(g[j])).real();
      }
      f_new = fekete_objective(z_new);
      if (f_new >= ref + 1e-4 * gain) break;
      step *= 0.5;
    }
    if (!(f_new > -kInf)) break;
    fekete_gradient(z_new, g_new);
    double ss = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Point s = z_new[j] - z[j], y = g_new[j] - g[j];
      ss += std::norm(s);
      sy -= (s * std::conj(y)).real();  // ascent: curvature of -f
    }
    if (ss == 0.0) {
      z.swap(z_new), g.swap(g_new), f = f_new;
      out.stationarity = projected_force(e, z, g);
      break;
    }
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e3) : 10.0 * step;
    z.swap(z_new);
    g.swap(g_new);
    f = f_new;
    history[it % history.size()] = f;
  }
  out.z = std::move(z);
  out.objective = f;
  out.iterations = it;
  return out;
}

}  // namespace detail

/// Best of several projected-gradient ascents for the n-point weighted Fekete problem on E.
inline FeketeResult optimize_fekete(std::size_t n, const FeketeDomain& e, Rng& rng, const FeketeOptions& opt = {}) {
  require(n >= 2, "optimize_fekete: n must be >= 2");
  require(opt.restarts >= 1, "optimize_fekete: need at least one restart");
  e.validate();
  FeketeResult best;
  detail::Ascent winner;
  bool have = false;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    auto a = detail::projected_ascent(e, detail::fekete_start(e, n, r < opt.restarts / 2, rng), opt);
    const bool ok = a.stationarity <= opt.tolerance && std::isfinite(a.objective);
    best.converged_restarts += ok;
    // converged runs beat unconverged ones; then the objective decides
    const bool better = !have || (ok && !(winner.stationarity <= opt.tolerance)) ||
                        ((ok == (winner.stationarity <= opt.tolerance)) && a.objective > winner.objective);
    if (better) winner = std::move(a), have = true;
  }
  for (const Point& z : winner.z)
    if (!e.contains(z)) best.flagged = true;
  best.flagged = best.flagged || best.converged_restarts == 0;
  best.objective = winner.objective;
  best.log_delta = fekete_log_delta(winner.objective, n);
  best.delta = std::exp(best.log_delta);
  best.stationarity = winner.stationarity;
  best.iterations = winner.iterations;
  best.config = PointConfiguration(std::move(winner.z), 1.0, "fekete");
  best.config.degraded = best.flagged;
  return best;
}

/// Greedy weighted Leja sequence on a grid of grid_resolution^2 nodes plus
/// boundary nodes. The configuration is marked degraded when a point lands on
/// the artificial edge of the grid.
inline PointConfiguration leja_points(std::size_t n, const FeketeDomain& e, std::size_t grid_resolution) {
  require(n >= 1, "leja_points: n must be >= 1");
  require(grid_resolution >= 3, "leja_points: grid resolution must be >= 3");
  e.validate();
  const bool bounded = std::isfinite(e.outer_radius);
  const double reach = e.hole ? std::max(1.0, std::abs(e.hole->bound_center()) + e.hole->bound_radius()) : 1.0;
  const double w = bounded ? e.outer_radius : 1.5 * reach;
  const double h = 2.0 * w / static_cast<double>(grid_resolution - 1);
  std::vector<Point> cand;
  for (std::size_t i = 0; i < grid_resolution; ++i)
    for (std::size_t j = 0; j < grid_resolution; ++j) {
      const Point z(-w + static_cast<double>(i) * h, -w + static_cast<double>(j) * h);
      if (e.contains(z)) cand.push_back(z);
    }
  const std::size_t ring = 4 * grid_resolution;
  if (e.hole)
    for (const auto& b : e.hole->boundary(ring)) cand.push_back(b.z);
  if (bounded)
    for (std::size_t i = 0; i < ring; ++i) cand.push_back(std::polar(e.outer_radius, 2.0 * kPi * static_cast<double>(i) / static_cast<double>(ring)));
  require(cand.size() >= n, "leja_points: grid has fewer admissible nodes than requested points");

  std::vector<double> pot(cand.size(), 0.0);
  std::vector<Point> out;
  bool edge = false;
  auto angle = [](Point z) {
    const double a = std::arg(z);
    return a < 0.0 ? a + 2.0 * kPi : a;
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t arg = cand.size();
    double best = -kInf;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      const double s = pot[c] - 0.5 * static_cast<double>(k) * std::norm(cand[c]);
      if (!(s > -kInf)) continue;
      if (arg == cand.size() || s > best + 1e-12) {
        best = s, arg = c;
      } else if (s >= best - 1e-12) {
        // ties: smaller modulus, then smaller angle
        const double dr = std::abs(cand[c]) - std::abs(cand[arg]);
        if (dr < -1e-12 || (dr <= 1e-12 && angle(cand[c]) < angle(cand[arg]))) best = std::max(best, s), arg = c;
      }
    }
    const Point z = cand[arg];
    out.push_back(z);
    if (!bounded && std::max(std::abs(z.real()), std::abs(z.imag())) >= w - 0.5 * h) edge = true;
    for (std::size_t c = 0; c < cand.size(); ++c) pot[c] += std::log(std::abs(cand[c] - z));
  }
  PointConfiguration config(std::move(out), 1.0, "leja");
  config.degraded = edge;
  return config;
}

/// -lim log delta_n(C) for the weight above: the equilibrium measure is
/// uniform on the unit disk with energy 1/2 + 1/4.
inline constexpr double kFreeFeketeLimit = 0.75;

struct HoleRateEstimate {
  double rate = std::numeric_limits<double>::quiet_NaN();
  double limit_hole = std::numeric_limits<double>::quiet_NaN();  // extrapolated -log delta_n(E)
  double limit_free = std::numeric_limits<double>::quiet_NaN();  // same for the whole plane
  double calibration_offset = std::numeric_limits<double>::quiet_NaN();  // limit_free - 3/4
  std::vector<std::size_t> n;
  std::vector<double> log_delta_hole, log_delta_free;
  bool flagged = false;
};

/// Least-squares limit of a(n) = c0 + c1 log(n)/n + c2/n (fewer terms when
/// fewer sizes are given).
inline double extrapolate_limit(const std::vector<std::size_t>& n, const std::vector<double>& a) {
  require(n.size() == a.size() && !n.empty(), "extrapolate_limit: size mismatch");
  const auto m = static_cast<Eigen::Index>(n.size());
  const Eigen::Index cols = std::min<Eigen::Index>(3, m);
  Eigen::MatrixXd A(m, cols);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = static_cast<double>(n[static_cast<std::size_t>(i)]);
    A(i, 0) = 1.0;
    if (cols > 1) A(i, 1) = std::log(x) / x;
    if (cols > 2) A(i, 2) = 1.0 / x;
    b(i) = a[static_cast<std::size_t>(i)];
  }
  return A.colPivHouseholderQr().solve(b)(0);
}

/// Rate lim -(1/n^2) log P[no eigenvalue of sqrt(n) G_n in U] from Fekete
/// optimisation on E = C \ U, calibrated against the same extrapolation on
/// the whole plane. No hole gives the calibration run twice.
inline HoleRateEstimate hole_rate_general(const std::optional<HoleRegion>& hole, std::vector<std::size_t> n_sequence,
                                          Rng& rng, const FeketeOptions& opt = {}) {
  require(n_sequence.size() >= 3, "hole_rate_general: need at least three sizes");
  std::sort(n_sequence.begin(), n_sequence.end());
  require(n_sequence.front() >= 2 && std::adjacent_find(n_sequence.begin(), n_sequence.end()) == n_sequence.end(),
          "hole_rate_general: sizes must be distinct and >= 2");
  if (hole) require(std::abs(hole->bound_center()) + hole->bound_radius() <= 1.0 + 1e-12,
                    "hole_rate_general: hole must lie in the closed unit disk");
  const FeketeDomain e_hole = hole ? FeketeDomain::outside(*hole) : FeketeDomain::plane();
  const FeketeDomain e_free = FeketeDomain::plane();
  HoleRateEstimate out;
  out.n = n_sequence;
  for (std::size_t n : n_sequence) {
    const auto a = optimize_fekete(n, e_hole, rng, opt);
    const auto b = optimize_fekete(n, e_free, rng, opt);
    out.flagged = out.flagged || a.flagged || b.flagged;
    out.log_delta_hole.push_back(a.log_delta);
    out.log_delta_free.push_back(b.log_delta);
  }
  for (std::size_t i = 1; i < n_sequence.size(); ++i)
    if (out.log_delta_hole[i] > out.log_delta_hole[i - 1] || out.log_delta_free[i] > out.log_delta_free[i - 1]) out.flagged = true;
  if (out.flagged) return out;
  std::vector<double> a, b;
  for (std::size_t i = 0; i < n_sequence.size(); ++i) a.push_back(-out.log_delta_hole[i]), b.push_back(-out.log_delta_free[i]);
  out.limit_hole = extrapolate_limit(n_sequence, a);
  out.limit_free = extrapolate_limit(n_sequence, b);
  out.calibration_offset = out.limit_free - kFreeFeketeLimit;
  out.rate = out.limit_hole - out.limit_free;
  return out;
}

}  // namespace holelab

#pragma once

// Metropolis-Hastings for conditioned planar ensembles: beta-Ginibre and the
// joint law of Weyl-polynomial zeros, under a hole or a count constraint.
//
// Single-particle moves z -> z + sigma g. Under a hole the proposal is
// redrawn until it lands outside, which makes it asymmetric: the proposal
// density from c is phi(z' - c) / Z_out(c), so the Hastings factor is
// Z_out(z_old) / Z_out(z_new). Count constraints reject outright, which keeps
// the proposal symmetric.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "holelab/core.hpp"
#include "holelab/quadrature.hpp"
#include "holelab/regions.hpp"
#include "holelab/rng.hpp"

namespace holelab {

struct BetaGinibre {
  double beta = 2.0;
  std::size_t N = 0;
};

/// Zeros of a degree-N Weyl polynomial in the variable w = z / R.
struct WeylZeros {
  double R = 1.0;
  std::size_t N = 0;
};

using Ensemble = std::variant<BetaGinibre, WeylZeros>;

struct ConstraintSpec {
  enum class Kind { None, Hole, MaxCount, MinCount };
  Kind kind = Kind::None;
  std::optional<HoleRegion> region;
  std::size_t k = 0;

  static ConstraintSpec none() { return {}; }
  static ConstraintSpec hole(HoleRegion r) { return {Kind::Hole, std::move(r), 0}; }
  static ConstraintSpec max_count(HoleRegion r, std::size_t k) { return {Kind::MaxCount, std::move(r), k}; }
  static ConstraintSpec min_count(HoleRegion r, std::size_t k) { return {Kind::MinCount, std::move(r), k}; }

  /// Whether `count` points in the region is admissible.
  bool admits(std::size_t count) const {
    switch (kind) {
      case Kind::None: return true;
      case Kind::Hole: return count == 0;
      case Kind::MaxCount: return count <= k;
      case Kind::MinCount: return count >= k;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// densities

/// beta sum_{j<k} log|z_j - z_k| - (beta/2) sum |z_j|^2 on unscaled points.
inline double beta_ginibre_log_density(const PointConfiguration& config, double beta) {
  require(beta > 0.0, "beta_ginibre_log_density: beta must be positive");
  require(config.size() >= 1, "beta_ginibre_log_density: empty configuration");
  double pair = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < config.size(); ++j) {
    const Point zj = config.unscaled(j);
    sq += std::norm(zj);
    for (std::size_t k = j + 1; k < config.size(); ++k) {
      const double d = std::abs(zj - config.unscaled(k));
      if (d == 0.0) return -kInf;
      pair += std::log(d);
    }
  }
  return beta * pair - 0.5 * beta * sq;
}

/// Monic polynomial stored as exp(log_scale) * sum c_k w^k with max |c_k| = 1.
/// Extended precision: products of ~100 root factors cancel heavily, and the
/// density multiplies the log-norm error by N + 1.
struct ScaledPoly {
  using Coef = std::complex<long double>;
  std::vector<Coef> c;
  double log_scale = 0.0;

  void normalize() {
    long double m = 0.0L;
    for (const Coef& x : c) m = std::max(m, std::abs(x));
    if (!(m > 0.0L) || !std::isfinite(static_cast<double>(m))) throw NumericalError("ScaledPoly: coefficients degenerate");
    for (Coef& x : c) x /= m;
    log_scale += static_cast<double>(std::log(m));
  }

  /// Multiply by (w - r).
  void multiply_root(Point r0) {
    const Coef r(r0);
    c.push_back(0.0L);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
    normalize();
  }

  /// Divide by (w - r), r a root. Forward recurrence above the dominant term
  /// of sum c_k r^k, backward below it (composite deflation).
  void divide_root(Point r0) {
    const Coef r(r0);
    const std::size_t n = c.size() - 1;
    require(n >= 1, "ScaledPoly: cannot deflate a constant");
    std::vector<Coef> b(n);
    std::size_t m = 0;
    if (r0 != 0.0) {
      const double lr = std::log(std::abs(r0));
      double best = -kInf;
      for (std::size_t k = 0; k <= n; ++k) {
        if (c[k] == 0.0L) continue;
        const double t = static_cast<double>(std::log(std::abs(c[k]))) + static_cast<double>(k) * lr;
        if (t > best) best = t, m = k;
      }
    }
    m = std::min(m, n - 1);
    b[n - 1] = c[n];
    for (std::size_t k = n - 1; k > m; --k) b[k - 1] = c[k] + r * b[k];
    if (m > 0) {
      b[0] = -c[0] / r;
      for (std::size_t k = 1; k < m; ++k) b[k] = (b[k - 1] - c[k]) / r;
    }
    c = std::move(b);
    normalize();
  }

  /// |sum c_k r^k| / sum |c_k| |r|^k: zero when r is an exact root.
  double relative_residual(Point r) const {
    const bool inner = std::abs(r) <= 1.0;
    const Coef v = inner ? Coef(r) : Coef(1.0L) / Coef(r);
    Coef p = 0.0L;
    long double a = 0.0L;
    const long double av = std::abs(v);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Coef ck = inner ? c[c.size() - 1 - i] : c[i];
      p = p * v + ck;
      a = a * av + std::abs(ck);
    }
    return a > 0.0L ? static_cast<double>(std::abs(p) / a) : 0.0;
  }

  /// Coefficient k in double precision, scale included.
  Point coefficient(std::size_t k) const { return Point(c[k]) * std::exp(log_scale); }

  static ScaledPoly from_roots(const std::vector<Point>& roots) {
    ScaledPoly p;
    p.c = {Coef(1.0L)};
    for (const Point& r : roots) p.multiply_root(r);
    return p;
  }
};

/// log_k of k! / R^{2k}: (R^2/pi) int |w^k|^2 e^{-R^2|w|^2} dm(w).
inline std::vector<double> weyl_norm_weights(std::size_t n, double R) {
  std::vector<double> w(n + 1);
  for (std::size_t k = 0; k <= n; ++k) w[k] = std::lgamma(static_cast<double>(k) + 1.0) - 2.0 * static_cast<double>(k) * std::log(R);
  return w;
}

/// log (R^2/pi) int |Q|^2 e^{-R^2|w|^2} dm = log sum_k |a_k|^2 k!/R^{2k}.
inline double weyl_log_norm(const ScaledPoly& q, const std::vector<double>& weights) {
  long double hi = -kInf;
  for (std::size_t k = 0; k < q.c.size(); ++k)
    if (q.c[k] != 0.0L) hi = std::max(hi, std::log(std::norm(q.c[k])) + weights[k]);
  long double s = 0.0L;
  for (std::size_t k = 0; k < q.c.size(); ++k)
    if (q.c[k] != 0.0L) s += std::exp(std::log(std::norm(q.c[k])) + weights[k] - hi);
  return static_cast<double>(hi + std::log(s)) + 2.0 * q.log_scale;
}

/// Unnormalized log density of the zeros w_j = config.points() of a degree-N
/// Weyl polynomial P(Rw): 2 sum_{j<k} log|w_j - w_k| - (N+1) log ||Q_N||^2.
inline double weyl_log_density(const PointConfiguration& config, double R) {
  require(R > 0.0, "weyl_log_density: R must be positive");
  require(config.size() >= 1, "weyl_log_density: empty configuration");
  const auto& w = config.points();
  double pair = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j)
    for (std::size_t k = j + 1; k < w.size(); ++k) {
      const double d = std::abs(w[j] - w[k]);
      if (d == 0.0) return -kInf;
      pair += std::log(d);
    }
  const auto q = ScaledPoly::from_roots(w);
  const double n = static_cast<double>(w.size());
  return 2.0 * pair - (n + 1.0) * weyl_log_norm(q, weyl_norm_weights(w.size(), R));
}

// ---------------------------------------------------------------------------
// proposal masses

namespace detail {
inline constexpr double kMassCutoff = 12.0;  // in proposal standard deviations per coordinate
}

/// P[c + s (X + iY) in D(0, R)] for X, Y iid N(0, 1), with d = |c|.
inline double disk_gaussian_mass(double d, double R, double s) {
  if (d - R > detail::kMassCutoff * s) return 0.0;
  if (R - d > detail::kMassCutoff * s) return 1.0;
  // x = R cos(theta) removes the square-root endpoint behaviour:
  // P = int phi_s(x - d) erf(sqrt(R^2 - x^2) / (s sqrt 2)) dx
  const double t_lo = std::acos(std::clamp((d + detail::kMassCutoff * s) / R, -1.0, 1.0));
  const double t_hi = std::acos(std::clamp((d - detail::kMassCutoff * s) / R, -1.0, 1.0));
  if (t_hi <= t_lo) return 0.0;
  auto f = [&](double t) {
    const double u = (R * std::cos(t) - d) / s;
    const double h = R * std::sin(t);
    return std::exp(-0.5 * u * u) / (s * std::sqrt(2.0 * kPi)) * std::erf(h / (s * std::sqrt(2.0))) * h;
  };
  return std::clamp(quad::integrate(f, t_lo, t_hi, {}, 1e-12), 0.0, 1.0);
}

/// Z_out(c): Gaussian mass of the complement of `region` for a proposal
/// centred at c with complex standard deviation sigma (per coordinate
/// sigma / sqrt 2). Disks by quadrature, everything else by the fixed
/// antithetic sample `normals` (per-coordinate unit variance).
inline double proposal_mass_outside(const HoleRegion& region, Point c, double sigma, const std::vector<Point>& normals) {
  const double s = sigma / std::sqrt(2.0);
  if (std::abs(c - region.bound_center()) - region.bound_radius() > detail::kMassCutoff * s) return 1.0;
  if (region.kind() == HoleRegion::Kind::Disk) return 1.0 - disk_gaussian_mass(std::abs(c - region.center()), region.radius(), s);
  require(!normals.empty(), "proposal_mass_outside: Monte Carlo normals required");
  std::size_t in = 0;
  for (const Point& g : normals) in += region.contains(c + s * g);
  return 1.0 - static_cast<double>(in) / static_cast<double>(normals.size());
}

inline std::vector<Point> antithetic_normals(std::size_t pairs, Rng& rng) {
  std::vector<Point> g;
  g.reserve(2 * pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const Point x(rng.normal(), rng.normal());
    g.push_back(x);
    g.push_back(-x);
  }
  return g;
}

// ---------------------------------------------------------------------------
// chain

struct ChainCounters {
  std::size_t proposed = 0;
  std::size_t accepted = 0;
  std::size_t constraint_rejected = 0;
  std::size_t flagged = 0;  // hole proposals that never left the hole
};

struct ChainState {
  Ensemble ensemble;
  ConstraintSpec constraint;
  Rng rng;
  std::vector<Point> z;  // unscaled positions

  // caches
  std::vector<double> pair_log;  // N x N, log|z_j - z_k|, zero diagonal
  std::vector<double> row_sum;   // sum_k log|z_j - z_k|
  double sq_sum = 0.0;
  double log_density = 0.0;      // tracked incrementally
  std::size_t region_count = 0;
  ScaledPoly q;                  // Weyl only, roots z_j / R
  double log_norm = 0.0;
  std::vector<double> norm_weights;
  std::vector<double> zout;      // per-particle Z_out, NaN when stale
  std::vector<Point> normals;

  double sigma = 0.5;
  bool tuning = false;
  ChainCounters counters;
  std::size_t steps = 0;
  double max_drift = 0.0;  // largest cache discrepancy seen by an audit

  static constexpr std::size_t kAuditEvery = 10000;
  static constexpr std::size_t kRebuildEvery = 1000;
  static constexpr std::size_t kMaxResample = 10000;
  static constexpr std::size_t kTuneWindow = 200;
  static constexpr double kDeflationResidual = 1e-15;

  std::size_t size() const { return z.size(); }
  bool is_weyl() const { return std::holds_alternative<WeylZeros>(ensemble); }
  double scale() const { return is_weyl() ? std::get<WeylZeros>(ensemble).R : 1.0; }
  double& pair(std::size_t j, std::size_t k) { return pair_log[j * z.size() + k]; }

  /// Normalized coordinates: z for beta-Ginibre, w = z / R for Weyl zeros.
  PointConfiguration config() const {
    std::vector<Point> pts(z);
    const double s = scale();
    for (Point& p : pts) p /= s;
    return PointConfiguration(std::move(pts), s, is_weyl() ? "weyl-mcmc" : "beta-ginibre");
  }

  std::size_t count_in_region() const {
    if (!constraint.region) return 0;
    std::size_t n = 0;
    for (const Point& p : z) n += constraint.region->contains(p);
    return n;
  }

  double zout_at(std::size_t j) {
    if (std::isnan(zout[j])) zout[j] = proposal_mass_outside(*constraint.region, z[j], sigma, normals);
    return zout[j];
  }

  /// Recompute every cache from scratch; returns the largest discrepancy.
  double rebuild() {
    const std::size_t n = z.size();
    pair_log.assign(n * n, 0.0);
    double drift = 0.0;
    long double total = 0.0L, sq = 0.0L;
    std::vector<double> fresh(n);
    for (std::size_t j = 0; j < n; ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        const double d = std::abs(z[j] - z[k]);
        pair(j, k) = d > 0.0 ? std::log(d) : -kInf;
        s += pair(j, k);
      }
      fresh[j] = static_cast<double>(s);
      total += s;
      sq += std::norm(z[j]);
    }
    if (row_sum.size() == n)
      for (std::size_t j = 0; j < n; ++j) drift = std::max(drift, std::abs(row_sum[j] - fresh[j]));
    row_sum = std::move(fresh);
    sq_sum = static_cast<double>(sq);
    double fresh_density;
    if (const auto* g = std::get_if<BetaGinibre>(&ensemble)) {
      fresh_density = 0.5 * g->beta * static_cast<double>(total) - 0.5 * g->beta * sq_sum;
    } else {
      const auto& wz = std::get<WeylZeros>(ensemble);
      std::vector<Point> w(z);
      for (Point& p : w) p /= wz.R;
      q = ScaledPoly::from_roots(w);
      norm_weights = weyl_norm_weights(n, wz.R);
      log_norm = weyl_log_norm(q, norm_weights);
      fresh_density = static_cast<double>(total) - (static_cast<double>(n) + 1.0) * log_norm;
    }
    if (steps > 0) drift = std::max(drift, std::abs(log_density - fresh_density));
    log_density = fresh_density;
    region_count = count_in_region();
    max_drift = std::max(max_drift, drift);
    return drift;
  }

  void set_sigma(double s) {
    require(s > 0.0 && std::isfinite(s), "ChainState: sigma must be positive");
    sigma = s;
    std::fill(zout.begin(), zout.end(), std::numeric_limits<double>::quiet_NaN());
  }

  std::size_t window_accepted = 0, window_proposed = 0;  // sigma tuning
};

namespace detail {

inline std::size_t ensemble_size(const Ensemble& e) {
  return std::visit([](const auto& x) { return x.N; }, e);
}

// Uniform point of the disk D(c, r).
inline Point uniform_in_disk(Point c, double r, Rng& rng) {
  return c + std::polar(r * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform());
}

inline Point uniform_outside(const HoleRegion& region, double r, Rng& rng) {
  for (int grow = 0; grow < 40; ++grow, r *= 1.5)
    for (int i = 0; i < 100000; ++i) {
      const Point p = uniform_in_disk(0.0, r, rng);
      if (!region.contains(p)) return p;
    }
  throw DomainError("init_chain: region leaves no room outside it");
}

inline Point uniform_inside(const HoleRegion& region, Rng& rng) {
  for (int i = 0; i < 1000000; ++i) {
    const Point p = uniform_in_disk(region.bound_center(), region.bound_radius(), rng);
    if (region.contains(p)) return p;
  }
  throw DomainError("init_chain: could not place points inside the region");
}

}  // namespace detail

/// Initial state satisfying the constraint. Points displaced by a hole (the
/// region's area times the unit density 1/pi) sit just outside its boundary,
/// the rest are uniform in the equilibrium disk |z| <= sqrt(N) minus the
/// region. MaxCount{H, k} keeps min(k, displaced) of them inside H instead.
inline ChainState init_chain(const Ensemble& ensemble, const ConstraintSpec& constraint, Rng& rng) {
  const std::size_t n = detail::ensemble_size(ensemble);
  if (const auto* g = std::get_if<BetaGinibre>(&ensemble)) {
    require(g->beta > 0.0, "init_chain: beta must be positive");
    require(n >= 1 && n <= 4000, "init_chain: N must lie in [1, 4000]");
  } else {
    require(std::get<WeylZeros>(ensemble).R > 0.0, "init_chain: R must be positive");
    require(n >= 1 && n <= 1000, "init_chain: Weyl degree must lie in [1, 1000]");
  }
  require(constraint.kind == ConstraintSpec::Kind::None || constraint.region.has_value(),
          "init_chain: constraint needs a region");
  if (constraint.kind == ConstraintSpec::Kind::MinCount)
    require(constraint.k <= n, "init_chain: MinCount exceeds the number of particles");

  ChainState c{ensemble, constraint, Rng(rng.next()), {}};
  const double r_eq = std::sqrt(static_cast<double>(n));
  auto& pts = c.z;
  pts.reserve(n);
  if (constraint.kind == ConstraintSpec::Kind::None) {
    while (pts.size() < n) pts.push_back(detail::uniform_in_disk(0.0, r_eq, c.rng));
  } else {
    const HoleRegion& h = *constraint.region;
    const auto displaced = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(h.area() / kPi)));
    std::size_t inside = 0, on_boundary = 0;
    switch (constraint.kind) {
      case ConstraintSpec::Kind::Hole: on_boundary = displaced; break;
      case ConstraintSpec::Kind::MaxCount:
        inside = std::min(constraint.k, displaced);
        on_boundary = displaced - inside;
        break;
      case ConstraintSpec::Kind::MinCount: inside = std::max(constraint.k, displaced); break;
      case ConstraintSpec::Kind::None: break;
    }
    inside = std::min(inside, n);
    for (std::size_t i = 0; i < inside; ++i) pts.push_back(detail::uniform_inside(h, c.rng));
    constexpr double eps = 1e-3;
    for (const auto& b : h.boundary(std::min(on_boundary, n - pts.size()))) {
      const Point p = b.z + eps * b.normal;
      pts.push_back(h.contains(p) ? detail::uniform_outside(h, r_eq, c.rng) : p);
    }
    while (pts.size() < n) pts.push_back(detail::uniform_outside(h, r_eq, c.rng));
    if (constraint.kind == ConstraintSpec::Kind::Hole && h.kind() != HoleRegion::Kind::Disk)
      c.normals = antithetic_normals(5000, c.rng);
  }
  c.zout.assign(n, std::numeric_limits<double>::quiet_NaN());
  c.rebuild();
  if (!constraint.admits(c.region_count)) throw DomainError("init_chain: constraint not satisfiable by construction");
  return c;
}

/// One Metropolis-Hastings update; returns whether the move was accepted.
inline bool mh_step(ChainState& c) {
  const std::size_t n = c.size();
  ++c.counters.proposed;
  ++c.steps;
  bool accepted = false;
  const std::size_t j = c.rng.index(n);
  const Point old = c.z[j];
  const auto& con = c.constraint;
  Point prop = old + c.sigma * c.rng.complex_normal();

  auto finish = [&]() {
    if (c.tuning) {
      ++c.window_proposed;
      c.window_accepted += accepted;
      if (c.window_proposed == ChainState::kTuneWindow) {
        const double rate = static_cast<double>(c.window_accepted) / ChainState::kTuneWindow;
        c.set_sigma(std::clamp(c.sigma * std::exp(1.5 * (rate - 0.3)), 1e-4, 10.0 * std::sqrt(static_cast<double>(n))));
        c.window_proposed = c.window_accepted = 0;
      }
    }
    if (c.is_weyl() && c.steps % ChainState::kRebuildEvery == 0) c.rebuild();
    else if (c.steps % ChainState::kAuditEvery == 0) c.rebuild();
    return accepted;
  };

  double log_corr = 0.0;
  bool in_old = false, in_new = false;
  if (con.kind == ConstraintSpec::Kind::Hole) {
    std::size_t tries = 1;
    while (con.region->contains(prop) && tries < ChainState::kMaxResample) {
      prop = old + c.sigma * c.rng.complex_normal();
      ++tries;
    }
    if (con.region->contains(prop)) {
      ++c.counters.flagged;
      return finish();
    }
  } else if (con.kind != ConstraintSpec::Kind::None) {
    in_old = con.region->contains(old);
    in_new = con.region->contains(prop);
    const std::size_t count = c.region_count - in_old + in_new;
    if (!con.admits(count)) {
      ++c.counters.constraint_rejected;
      return finish();
    }
  }

  static thread_local std::vector<double> fresh;
  fresh.assign(n, 0.0);
  double new_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j) continue;
    const double d = std::abs(prop - c.z[k]);
    if (d == 0.0) return finish();
    fresh[k] = std::log(d);
    new_sum += fresh[k];
  }
  const double d_pair = new_sum - c.row_sum[j];
  double delta;
  ScaledPoly q_new;
  double log_norm_new = 0.0;
  if (const auto* g = std::get_if<BetaGinibre>(&c.ensemble)) {
    delta = g->beta * d_pair - 0.5 * g->beta * (std::norm(prop) - std::norm(old));
  } else {
    const double R = std::get<WeylZeros>(c.ensemble).R;
    // Deflation amplifies earlier rounding a little each time; once the
    // outgoing root stops being a root to working accuracy, start afresh.
    if (c.q.relative_residual(old / R) > ChainState::kDeflationResidual) c.rebuild();
    q_new = c.q;
    q_new.divide_root(old / R);
    q_new.multiply_root(prop / R);
    log_norm_new = weyl_log_norm(q_new, c.norm_weights);
    delta = 2.0 * d_pair - (static_cast<double>(n) + 1.0) * (log_norm_new - c.log_norm);
  }

  double z_new = 1.0;
  if (con.kind == ConstraintSpec::Kind::Hole) {
    z_new = proposal_mass_outside(*con.region, prop, c.sigma, c.normals);
    log_corr = std::log(c.zout_at(j)) - std::log(z_new);
  }

  if (std::log(c.rng.uniform()) < delta + log_corr) {
    accepted = true;
    ++c.counters.accepted;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      c.row_sum[k] += fresh[k] - c.pair(k, j);
      c.pair(k, j) = c.pair(j, k) = fresh[k];
    }
    c.row_sum[j] = new_sum;
    c.sq_sum += std::norm(prop) - std::norm(old);
    c.z[j] = prop;
    c.log_density += delta;
    if (con.kind == ConstraintSpec::Kind::MaxCount || con.kind == ConstraintSpec::Kind::MinCount)
      c.region_count = c.region_count - in_old + in_new;
    if (con.kind == ConstraintSpec::Kind::Hole) c.zout[j] = z_new;
    if (c.is_weyl()) {
      c.q = std::move(q_new);
      c.log_norm = log_norm_new;
    }
  }
  return finish();
}

using Collector = std::function<void(const PointConfiguration&)>;

struct ChainSummary {
  ChainCounters counters;        // whole run
  double acceptance_rate = 0.0;  // after burn-in
  double sigma = 0.0;            // frozen proposal scale
  std::size_t samples = 0;
  double max_drift = 0.0;
};

/// Runs `steps` updates; sigma adapts during the first `burnin`, then
/// freezes. Every `thin`-th post-burn-in state goes to each collector.
inline ChainSummary run_chain(ChainState& chain, std::size_t steps, std::size_t burnin, std::size_t thin,
                              const std::vector<Collector>& collectors = {}) {
  require(steps > burnin, "run_chain: steps must exceed burnin");
  require(thin >= 1, "run_chain: thin must be >= 1");
  ChainSummary out;
  ChainCounters at_burnin = chain.counters;
  for (std::size_t s = 0; s < steps; ++s) {
    chain.tuning = s < burnin;
    if (s == burnin) at_burnin = chain.counters;
    mh_step(chain);
    if (s >= burnin && (s - burnin + 1) % thin == 0) {
      ++out.samples;
      if (collectors.empty()) continue;
      const auto cfg = chain.config();
      if (chain.constraint.kind != ConstraintSpec::Kind::None && !chain.constraint.admits(chain.count_in_region()))
        throw NumericalError("run_chain: stored sample violates the constraint");
      for (const auto& f : collectors) f(cfg);
    }
  }
  chain.tuning = false;
  out.counters = chain.counters;
  const auto prop = chain.counters.proposed - at_burnin.proposed;
  out.acceptance_rate = prop ? static_cast<double>(chain.counters.accepted - at_burnin.accepted) / static_cast<double>(prop) : 0.0;
  out.sigma = chain.sigma;
  out.max_drift = chain.max_drift;
  return out;
}

}  // namespace holelab

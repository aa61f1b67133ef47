#pragma once

// Rotation-invariant measures on the plane, their logarithmic potentials and
// energies, the large-deviation functionals built from them, and the closed
// form constrained minimizers and rate formulas for hole and count events.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "holelab/core.hpp"
#include "holelab/quadrature.hpp"

namespace holelab {

/// Uniform areal density on r_lo <= |z| <= r_hi (r_hi may be infinite).
struct AnnulusUniform {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double density = 0.0;  // mass per unit area

  double mass() const { return kPi * (r_hi * r_hi - r_lo * r_lo) * density; }
};

/// Uniform mass on the circle |z| = radius.
struct CircleAtom {
  double radius = 0.0;
  double mass = 0.0;
};

class RadialMeasure {
 public:
  RadialMeasure() = default;

  /// Normalizes the description: overlapping annuli are split and their
  /// densities added, adjacent pieces of equal density are merged, atoms at the
  /// same radius are combined, and empty pieces are dropped.
  RadialMeasure(std::vector<AnnulusUniform> annuli, std::vector<CircleAtom> atoms) {
    std::vector<double> cuts;
    for (const auto& a : annuli) {
      require(a.r_lo >= 0.0 && a.r_hi >= a.r_lo, "RadialMeasure: annulus needs 0 <= r_lo <= r_hi");
      require(a.density >= 0.0 && std::isfinite(a.density), "RadialMeasure: negative density");
      if (a.r_hi > a.r_lo && a.density > 0.0) {
        cuts.push_back(a.r_lo);
        cuts.push_back(a.r_hi);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double lo = cuts[i], hi = cuts[i + 1];
      double d = 0.0;
      for (const auto& a : annuli)
        if (a.density > 0.0 && a.r_lo <= lo && a.r_hi >= hi) d += a.density;
      if (d <= 0.0) continue;
      if (!annuli_.empty() && annuli_.back().r_hi == lo && annuli_.back().density == d)
        annuli_.back().r_hi = hi;
      else
        annuli_.push_back({lo, hi, d});
    }
    for (const auto& c : atoms) {
      require(c.radius >= 0.0 && std::isfinite(c.radius), "RadialMeasure: atom radius must be finite and >= 0");
      require(c.mass >= 0.0 && std::isfinite(c.mass), "RadialMeasure: negative atom mass");
      if (c.mass == 0.0) continue;
      auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const CircleAtom& x) { return x.radius == c.radius; });
      if (it != atoms_.end())
        it->mass += c.mass;
      else
        atoms_.push_back(c);
    }
    std::sort(atoms_.begin(), atoms_.end(), [](auto& a, auto& b) { return a.radius < b.radius; });
  }

  static RadialMeasure annulus(double r_lo, double r_hi, double density) {
    return RadialMeasure({{r_lo, r_hi, density}}, {});
  }
  static RadialMeasure atom(double radius, double mass) { return RadialMeasure({}, {{radius, mass}}); }

  /// Uniform probability measure on the unit circle.
  static RadialMeasure unit_circle() { return atom(1.0, 1.0); }

  const std::vector<AnnulusUniform>& annuli() const { return annuli_; }
  const std::vector<CircleAtom>& atoms() const { return atoms_; }

  double total_mass() const {
    double m = 0.0;
    for (const auto& a : annuli_) m += a.mass();
    for (const auto& c : atoms_) m += c.mass;
    return m;
  }

  /// Largest radius carrying mass (infinite for unbounded support).
  double support_radius() const {
    double r = 0.0;
    for (const auto& a : annuli_) r = std::max(r, a.r_hi);
    for (const auto& c : atoms_) r = std::max(r, c.radius);
    return r;
  }

  /// Mass in the open disk |z| < r.
  double mass_inside(double r) const {
    double m = 0.0;
    for (const auto& a : annuli_) {
      const double hi = std::min(a.r_hi, r);
      if (hi > a.r_lo) m += kPi * (hi * hi - a.r_lo * a.r_lo) * a.density;
    }
    for (const auto& c : atoms_)
      if (c.radius < r) m += c.mass;
    return m;
  }

  /// Every radius where the potential profile has a kink.
  std::vector<double> breakpoints() const {
    std::vector<double> b;
    for (const auto& a : annuli_) {
      b.push_back(a.r_lo);
      if (std::isfinite(a.r_hi)) b.push_back(a.r_hi);
    }
    for (const auto& c : atoms_) b.push_back(c.radius);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  }

  RadialMeasure scaled_mass(double factor) const {
    require(factor >= 0.0, "RadialMeasure: negative mass factor");
    auto an = annuli_;
    auto at = atoms_;
    for (auto& a : an) a.density *= factor;
    for (auto& c : at) c.mass *= factor;
    return RadialMeasure(an, at);
  }

  /// Restriction to the closed disk |z| <= r.
  RadialMeasure restricted(double r) const {
    std::vector<AnnulusUniform> an;
    std::vector<CircleAtom> at;
    for (const auto& a : annuli_)
      if (a.r_lo < r) an.push_back({a.r_lo, std::min(a.r_hi, r), a.density});
    for (const auto& c : atoms_)
      if (c.radius <= r) at.push_back(c);
    return RadialMeasure(an, at);
  }

  RadialMeasure operator+(const RadialMeasure& other) const {
    auto an = annuli_;
    auto at = atoms_;
    an.insert(an.end(), other.annuli_.begin(), other.annuli_.end());
    at.insert(at.end(), other.atoms_.begin(), other.atoms_.end());
    return RadialMeasure(an, at);
  }

 private:
  std::vector<AnnulusUniform> annuli_;
  std::vector<CircleAtom> atoms_;
};

struct FunctionalParams {
  double alpha = 1.0;
  double beta = 2.0;

  void validate() const {
    require(alpha >= 1.0, "FunctionalParams: alpha must be >= 1");
    require(beta > 0.0, "FunctionalParams: beta must be > 0");
  }
};

namespace detail {

// Potential at radius r of the uniform disk of radius s with areal density d.
inline double disk_potential(double s, double d, double r) {
  if (s == 0.0) return 0.0;
  if (r >= s) return kPi * d * s * s * std::log(r);
  return kPi * d * (s * s * std::log(s) - 0.5 * (s * s - r * r));
}

inline double annulus_potential(const AnnulusUniform& a, double r) {
  require(std::isfinite(a.r_hi), "log_potential: infinite-mass measure");
  return disk_potential(a.r_hi, a.density, r) - disk_potential(a.r_lo, a.density, r);
}

inline double atom_potential(const CircleAtom& c, double r) {
  if (c.radius == 0.0 && r == 0.0) throw DomainError("log_potential: atom at the origin diverges at r = 0");
  return c.mass * std::log(std::max(r, c.radius));
}

}  // namespace detail

/// Logarithmic potential U_mu at any point of modulus r.
inline double log_potential(const RadialMeasure& mu, double r) {
  require(r >= 0.0, "log_potential: r must be >= 0");
  double u = 0.0;
  for (const auto& a : mu.annuli()) u += detail::annulus_potential(a, r);
  for (const auto& c : mu.atoms()) u += detail::atom_potential(c, r);
  return u;
}

/// Mutual energy  int U_mu dnu  (symmetric in its arguments).
inline double mutual_energy(const RadialMeasure& mu, const RadialMeasure& nu) {
  double e = 0.0;
  for (const auto& c : nu.atoms()) {
    for (const auto& d : mu.atoms()) {
      if (c.radius == 0.0 && d.radius == 0.0) return -kInf;
      e += c.mass * d.mass * std::log(std::max(c.radius, d.radius));
    }
    for (const auto& a : mu.annuli()) e += c.mass * detail::annulus_potential(a, c.radius);
  }
  for (const auto& b : nu.annuli()) {
    require(std::isfinite(b.r_hi), "mutual_energy: infinite-mass measure");
    for (const auto& d : mu.atoms()) e += d.mass * detail::annulus_potential(b, d.radius);
    for (const auto& a : mu.annuli()) {
      auto f = [&](double r) { return detail::annulus_potential(a, r) * 2.0 * kPi * b.density * r; };
      e += quad::integrate(f, b.r_lo, b.r_hi, {a.r_lo, a.r_hi}, 1e-13);
    }
  }
  return e;
}

/// Logarithmic energy  Sigma(mu) = double integral of log|z - w|.
inline double log_energy(const RadialMeasure& mu) { return mutual_energy(mu, mu); }

/// int |z|^2 dmu.
inline double mean_square(const RadialMeasure& mu) {
  double m = 0.0;
  for (const auto& a : mu.annuli()) {
    if (!std::isfinite(a.r_hi)) return kInf;
    m += 0.5 * kPi * a.density * (std::pow(a.r_hi, 4) - std::pow(a.r_lo, 4));
  }
  for (const auto& c : mu.atoms()) m += c.mass * c.radius * c.radius;
  return m;
}

inline void require_probability(const RadialMeasure& mu, const char* who) {
  const double m = mu.total_mass();
  if (!(std::abs(m - 1.0) <= 1e-12)) throw DomainError(std::string(who) + ": measure is not a probability measure");
}

/// I_alpha(mu) = int |z|^2/alpha dmu - Sigma(mu).
inline double coulomb_functional(const RadialMeasure& mu, const FunctionalParams& params) {
  params.validate();
  require_probability(mu, "coulomb_functional");
  return mean_square(mu) / params.alpha - log_energy(mu);
}

/// The bracket 2 p^2 log p - (p - 1)(3 p - 1).
inline double count_deviation_bracket(double p) {
  return 2.0 * x2logx(p) - (p - 1.0) * (3.0 * p - 1.0);
}

/// I_alpha of the constrained minimizer minus I_alpha of the equilibrium measure.
inline double excess_energy_closed_form(double p, double alpha) {
  require(p >= 0.0, "excess_energy_closed_form: p must be >= 0");
  require(alpha >= 1.0, "excess_energy_closed_form: alpha must be >= 1");
  require(p <= alpha, "excess_energy_closed_form: p must be <= alpha");
  return std::abs(count_deviation_bracket(p)) / (4.0 * alpha * alpha);
}

/// Uniform probability measure on the disk of radius sqrt(alpha).
inline RadialMeasure equilibrium_measure(double alpha) {
  require(alpha >= 1.0, "equilibrium_measure: alpha must be >= 1");
  return RadialMeasure::annulus(0.0, std::sqrt(alpha), 1.0 / (kPi * alpha));
}

/// Minimizer of I_alpha under mu(open unit disk) <= p/alpha.
inline RadialMeasure constrained_minimizer_ginibre(double p, double alpha) {
  require(p >= 0.0 && p < 1.0, "constrained_minimizer_ginibre: p must lie in [0, 1)");
  require(alpha >= 1.0, "constrained_minimizer_ginibre: alpha must be >= 1");
  const double d = 1.0 / (kPi * alpha);
  return RadialMeasure({{0.0, std::sqrt(p), d}, {1.0, std::sqrt(alpha), d}}, {{1.0, (1.0 - p) / alpha}});
}

/// Minimizer of I_alpha under mu(closed unit disk) >= p/alpha, 1 < p <= alpha.
inline RadialMeasure overcrowding_minimizer_ginibre(double p, double alpha) {
  require(p > 1.0, "overcrowding_minimizer_ginibre: p must exceed 1");
  require(p <= alpha, "overcrowding_minimizer_ginibre: p must be <= alpha");
  const double d = 1.0 / (kPi * alpha);
  return RadialMeasure({{0.0, 1.0, d}, {std::sqrt(p), std::sqrt(alpha), d}}, {{1.0, (p - 1.0) / alpha}});
}

/// Checks  int |z|^2/(2a) dmu0 - Sigma(mu0) <= int |z|^2/(2a) dmu - int U_mu0 dmu.
/// True means mu does not witness that mu0 fails to minimize I_alpha.
inline bool variational_certificate(const RadialMeasure& mu0, const RadialMeasure& mu, const FunctionalParams& params,
                                    double tol = 1e-9) {
  params.validate();
  require_probability(mu0, "variational_certificate");
  require_probability(mu, "variational_certificate");
  const double e_mu = log_energy(mu);
  if (!std::isfinite(e_mu)) throw DomainError("variational_certificate: mu has infinite energy");
  const double lhs = mean_square(mu0) / (2.0 * params.alpha) - log_energy(mu0);
  const double rhs = mean_square(mu) / (2.0 * params.alpha) - mutual_energy(mu0, mu);
  return lhs <= rhs + tol;
}

namespace detail {

// sup_r (U_mu(r) - r^2/(2 alpha)) over [0, r_max] on a geometric grid with
// golden-section refinement around the best grid point.
inline double weyl_profile_sup(const RadialMeasure& mu, double alpha, std::size_t grid_points) {
  const double r_max = 10.0 * std::sqrt(alpha);
  auto h = [&](double r) { return log_potential(mu, r) - r * r / (2.0 * alpha); };
  std::vector<double> rs{0.0};
  const double r_min = 1e-6 * std::sqrt(alpha);
  const double ratio = std::pow(r_max / r_min, 1.0 / static_cast<double>(grid_points - 1));
  double r = r_min;
  for (std::size_t i = 0; i < grid_points; ++i, r *= ratio) rs.push_back(std::min(r, r_max));
  for (double b : mu.breakpoints())
    if (b <= r_max) rs.push_back(b);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  std::size_t best = 0;
  double best_val = -kInf;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] == 0.0 && !mu.atoms().empty() && mu.atoms().front().radius == 0.0) continue;
    const double v = h(rs[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = best > 0 ? rs[best - 1] : rs[best];
  const double hi = best + 1 < rs.size() ? rs[best + 1] : rs[best];
  if (hi > lo) {
    const double left = quad::golden_max(h, lo, rs[best]);
    const double right = quad::golden_max(h, rs[best], hi);
    best_val = std::max({best_val, h(left), h(right)});
  }
  return best_val;
}

inline double weyl_raw(const RadialMeasure& mu, double alpha, std::size_t grid_points) {
  return 2.0 * weyl_profile_sup(mu, alpha, grid_points) - log_energy(mu);
}

}  // namespace detail

/// Normalizing constant C_alpha with I^Z_alpha(equilibrium) = 0.
inline double weyl_constant(double alpha, std::size_t grid_points = 4096) {
  static std::mutex mutex;
  static std::map<std::pair<double, std::size_t>, double> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({alpha, grid_points});
    if (it != cache.end()) return it->second;
  }
  const double c = detail::weyl_raw(equilibrium_measure(alpha), alpha, grid_points);
  std::lock_guard lock(mutex);
  cache[{alpha, grid_points}] = c;
  return c;
}

/// I^Z_alpha(mu) = 2 sup (U_mu - |z|^2/(2 alpha)) - Sigma(mu) - C_alpha.
inline double weyl_functional(const RadialMeasure& mu, double alpha, std::size_t grid_points = 4096) {
  require(alpha >= 1.0, "weyl_functional: alpha must be >= 1");
  require(grid_points >= 16, "weyl_functional: grid too small");
  require_probability(mu, "weyl_functional");
  require(mu.support_radius() <= 10.0 * std::sqrt(alpha), "weyl_functional: support exceeds 10 sqrt(alpha)");
  return detail::weyl_raw(mu, alpha, grid_points) - weyl_constant(alpha, grid_points);
}

/// Non-trivial root q of p(log p - 1) = q(log q - 1); q(0) = e.
inline double q_of_p(double p) {
  require(p >= 0.0 && p < kE, "q_of_p: p must lie in [0, e)");
  require(p != 1.0, "q_of_p: p = 1 has no non-trivial solution");
  if (p == 0.0) return kE;
  auto g = [](double x) { return x == 0.0 ? 0.0 : x * (std::log(x) - 1.0); };
  const double target = g(p);
  // g decreases on (0, 1) and increases on (1, e].
  double lo, hi;
  if (p < 1.0) {
    lo = 1.0;
    hi = kE;
  } else {
    lo = 0.0;
    hi = 1.0;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double gm = g(mid) - target;
    if (std::abs(gm) <= 1e-15 && hi - lo < 1e-15) break;
    const bool increasing = p < 1.0;
    if ((gm < 0.0) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Limiting conditional zero-counting measure of the GEF given n(R) = p R^2.
inline RadialMeasure limiting_measure_gef(double p) {
  require(p >= 0.0, "limiting_measure_gef: p must be >= 0");
  require(p != 1.0, "limiting_measure_gef: p = 1 is the unconditioned case");
  const double d = 1.0 / kPi;
  if (p < 1.0) {
    const double q = q_of_p(p);
    return RadialMeasure({{0.0, std::sqrt(p), d}, {std::sqrt(q), kInf, d}}, {{1.0, q - p}});
  }
  if (p < kE) {
    const double q = q_of_p(p);
    return RadialMeasure({{0.0, std::sqrt(q), d}, {std::sqrt(p), kInf, d}}, {{1.0, p - q}});
  }
  return RadialMeasure({{std::sqrt(p), kInf, d}}, {{1.0, p}});
}

/// Limiting conditional eigenvalue-counting measure of the infinite Ginibre
/// ensemble given n(R) = p R^2.
inline RadialMeasure limiting_measure_ginibre_infinite(double p) {
  require(p >= 0.0, "limiting_measure_ginibre_infinite: p must be >= 0");
  require(p != 1.0, "limiting_measure_ginibre_infinite: p = 1 is the unconditioned case");
  const double d = 1.0 / kPi;
  if (p < 1.0) return RadialMeasure({{0.0, std::sqrt(p), d}, {1.0, kInf, d}}, {{1.0, 1.0 - p}});
  return RadialMeasure({{0.0, 1.0, d}, {std::sqrt(p), kInf, d}}, {{1.0, p - 1.0}});
}

/// lim R^-4 log P[n(R) = p R^2] for the Ginibre ensemble, up to sign.
inline double shirai_rate(double p) {
  require(p >= 0.0, "shirai_rate: p must be >= 0");
  return 0.25 * std::abs(count_deviation_bracket(p));
}

struct JlmParams {
  double a = 1.5;
  double b = 1.0;
  double beta = 2.0;
  std::optional<double> c_beta;

  void validate() const {
    require(a > 0.5, "JlmParams: a must exceed 1/2");
    require(b != 0.0 && std::isfinite(b), "JlmParams: b must be non-zero");
    require(beta > 0.0, "JlmParams: beta must be positive");
    if (a == 2.0) require(b >= -1.0, "JlmParams: b >= -1 required at a = 2");
    if (a > 2.0) require(b > 0.0, "JlmParams: b > 0 required for a > 2");
  }
};

/// log P[n(R) = R^2 + b R^a] ~ -prefactor * R^exponent.
struct JlmRate {
  double exponent = 0.0;
  std::optional<double> prefactor;  // beta * psi; empty when not known

  std::optional<double> log_probability(double R) const {
    if (!prefactor) return std::nullopt;
    return -*prefactor * std::pow(R, exponent);
  }
};

inline double jlm_exponent(double a) {
  require(a > 0.5, "jlm_exponent: a must exceed 1/2");
  if (a <= 1.0) return 2.0 * a - 1.0;
  if (a <= 2.0) return 3.0 * a - 2.0;
  return 2.0 * a;
}

inline JlmRate jlm_rate(const JlmParams& params, double R) {
  params.validate();
  require(R > 1.0, "jlm_rate: R must exceed 1");
  JlmRate out;
  out.exponent = jlm_exponent(params.a);
  const double a = params.a, b = params.b, beta = params.beta;
  if (a < 1.0) {
    if (params.c_beta) out.prefactor = beta * *params.c_beta * b * b;
  } else if (a > 1.0 && a < 2.0) {
    out.prefactor = beta * std::abs(b * b * b) / 6.0;
  } else if (a == 2.0) {
    if (beta == 2.0) out.prefactor = shirai_rate(1.0 + b);
  } else if (a > 2.0) {
    out.prefactor = beta * 0.5 * (a - 2.0) * b * b * std::log(R);
  }
  return out;
}

/// Leading term of log Z_N^beta.
inline double log_partition_asymptotic(std::size_t n, const FunctionalParams& params) {
  params.validate();
  const double nn = static_cast<double>(n);
  if (n == 0) return 0.0;
  return -0.5 * params.beta * nn * nn * coulomb_functional(equilibrium_measure(params.alpha), params);
}

}  // namespace holelab

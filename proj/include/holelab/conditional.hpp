#pragma once

// Exact conditional analysis of the Ginibre hole: incomplete-gamma machinery,
// the Kostlan product for hole probabilities and the conditional intensity
// given no points in D(0, R).

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "holelab/core.hpp"
#include "holelab/quadrature.hpp"

namespace holelab {

/// log Gamma(n + 1, x) = log int_x^inf e^-t t^n dt.
inline double log_upper_incomplete_gamma(std::size_t n, double x) {
  require(x >= 0.0, "log_upper_incomplete_gamma: x must be >= 0");
  const double a = static_cast<double>(n) + 1.0;
  const double lg = std::lgamma(a);
  if (x == 0.0) return lg;
  const double lead = -x + a * std::log(x);  // log(x^a e^-x)
  if (x < a) {
    // lower gamma by its power series, then subtract from Gamma(a)
    double term = 1.0 / a, sum = term;
    for (int k = 1; k < 100000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    const double log_lower = lead + std::log(sum);
    return lg + std::log1p(-std::exp(log_lower - lg));
  }
  // modified Lentz for the continued fraction of the upper gamma
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return lead + std::log(h);
}

/// log Gamma(n + 1, x) for n = 0..n_max by the upward recurrence
/// Gamma(a + 1, x) = a Gamma(a, x) + x^a e^-x, all in log form.
inline std::vector<double> log_upper_incomplete_gamma_table(std::size_t n_max, double x) {
  require(x >= 0.0, "log_upper_incomplete_gamma_table: x must be >= 0");
  std::vector<double> out(n_max + 1);
  out[0] = -x;
  const double lx = x > 0.0 ? std::log(x) : -kInf;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    out[n] = log_add_exp(std::log(dn) + out[n - 1], -x + dn * lx);
  }
  return out;
}

struct HoleProbability {
  double log_p = 0.0;
  std::size_t terms = 0;
  double tail_bound = 0.0;  // bound on |log P| omitted by truncation (0 if finite n)
};

/// Kostlan product for log P[no point in D(0, r)]; n = nullopt is the
/// infinite ensemble, truncated at ceil(r^2 + 12 r + 50).
inline HoleProbability hole_log_prob_ginibre_detail(double r, std::optional<std::size_t> n = std::nullopt) {
  require(r >= 0.0, "hole_log_prob_ginibre: r must be >= 0");
  HoleProbability out;
  if (r == 0.0) return out;
  const double x = r * r;
  const std::size_t k_max = n ? *n : static_cast<std::size_t>(std::ceil(x + 12.0 * r + 50.0));
  const auto lg = log_upper_incomplete_gamma_table(k_max, x);
  for (std::size_t k = 1; k <= k_max; ++k) out.log_p += lg[k - 1] - std::lgamma(static_cast<double>(k));
  out.terms = k_max;
  if (!n) {
    // P(k+1, x) <= P(k, x) * x / (k + 1); the omitted terms are -log(1 - P(k, x)).
    const double k1 = static_cast<double>(k_max + 1);
    const double log_lower = -x + k1 * std::log(x) - std::lgamma(k1 + 1.0) + std::log(k1 + 1.0) - std::log(k1 + 1.0 - x);
    const double p = std::exp(log_lower);
    out.tail_bound = p / (1.0 - p) / (1.0 - x / (k1 + 1.0));
  }
  return out;
}

inline double hole_log_prob_ginibre(double r, std::optional<std::size_t> n = std::nullopt) {
  return hole_log_prob_ginibre_detail(r, n).log_p;
}

/// Conditional intensity of the infinite Ginibre ensemble given the hole
/// H_R, rho^R(z) = (1/pi) e^{-|z|^2} sum_n |z|^{2n} / Gamma(n + 1, R^2),
/// valid for |z| >= R. Caches the incomplete gammas for one R.
class GinibreHoleIntensity {
 public:
  explicit GinibreHoleIntensity(double R) : R_(R) {
    require(R > 0.0, "cond_intensity: R must be positive");
    grow(static_cast<std::size_t>(std::ceil(R * R + 20.0 * R + 100.0)));
  }

  double R() const { return R_; }

  double operator()(double r) {
    require(r >= R_ * (1.0 - 1e-14), "cond_intensity: r must be >= R");
    const double lr2 = 2.0 * std::log(r);
    // terms are log-concave in n: collect up to the peak and on until negligible
    terms_.clear();
    double peak = -kInf;
    for (std::size_t n = 0;; ++n) {
      if (n >= table_.size()) grow(2 * table_.size());
      const double t = static_cast<double>(n) * lr2 - table_[n];
      terms_.push_back(t);
      peak = std::max(peak, t);
      if (t < peak - 45.0 && t < terms_[n - 1]) break;
      if (n > 10'000'000) throw NumericalError("cond_intensity: series did not terminate");
    }
    // linear summation relative to the peak keeps the rounding at a few ulps
    double sum = 0.0;
    for (double t : terms_) sum += std::exp(t - peak);
    return std::exp(peak - r * r) * sum / kPi;
  }

  /// nullopt inside the hole, where the series representation does not apply.
  std::optional<double> profile(double r) {
    if (r < R_) return std::nullopt;
    return (*this)(r);
  }

 private:
  void grow(std::size_t n_max) { table_ = log_upper_incomplete_gamma_table(n_max, R_ * R_); }

  double R_;
  std::vector<double> table_;
  std::vector<double> terms_;
};

inline double cond_intensity(double r, double R) {
  require(R > 0.0, "cond_intensity: R must be positive");
  if (r < R) throw DomainError("cond_intensity: r < R lies inside the hole, where the intensity is undefined");
  GinibreHoleIntensity rho(R);
  return rho(r);
}

inline std::optional<double> cond_intensity_profile(double r, double R) {
  GinibreHoleIntensity rho(R);
  return rho.profile(r);
}

/// Expected number of points in sqrt(a) R <= |z| <= sqrt(b) R given H_R.
inline double annulus_expected_count(double R, double a, double b) {
  require(R > 0.0, "annulus_expected_count: R must be positive");
  require(a >= 1.0 && b > a, "annulus_expected_count: need b > a >= 1");
  GinibreHoleIntensity rho(R);
  auto f = [&](double r) { return 2.0 * kPi * rho(r) * r; };
  // the intensity peaks sharply at r = R: split the range geometrically
  const double lo = std::sqrt(a) * R, hi = std::sqrt(b) * R;
  std::vector<double> breaks;
  for (double s = lo + 0.05; s < std::min(hi, lo + 4.0); s += 0.25) breaks.push_back(s);
  return quad::integrate(f, lo, hi, breaks, 1e-8 * R * R);
}

}  // namespace holelab

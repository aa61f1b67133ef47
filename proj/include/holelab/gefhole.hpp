#pragma once

// Coefficient events that force a GEF hole. On |z| = R the k0 term is made to
// dominate the sum of all others, so by Rouche the truncated GEF has exactly
// k0 zeros in D(0, R). The event is a product of independent constraints on
// |xi_k|, so its probability is exact and its conditional law is easy to draw.

#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "holelab/core.hpp"
#include "holelab/measures.hpp"
#include "holelab/polyroots.hpp"
#include "holelab/rng.hpp"
#include "holelab/samplers.hpp"

namespace holelab {

struct UpperBound {
  double delta;  // |xi| <= delta
};
struct LowerBound {
  double M;  // |xi| >= M
};
struct Free {};

using CoefficientBound = std::variant<UpperBound, LowerBound, Free>;

struct CoefficientEventSpec {
  double R = 0.0;
  std::size_t k0 = 0;
  std::size_t k_cut = 0;
  double q = kE;  // zeros resume at |w| = sqrt(q)
  std::vector<CoefficientBound> bounds;  // index k = 0..N_trunc

  std::size_t n_trunc() const { return bounds.empty() ? 0 : bounds.size() - 1; }

  void validate() const {
    require(R > 0.0, "CoefficientEventSpec: R must be positive");
    require(k_cut >= k0, "CoefficientEventSpec: k_cut must be >= k0");
    require(k0 < bounds.size(), "CoefficientEventSpec: k0 outside the coefficient range");
    std::size_t lower = 0;
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      if (const auto* u = std::get_if<UpperBound>(&bounds[k]))
        require(u->delta > 0.0, "CoefficientEventSpec: delta must be positive");
      if (const auto* l = std::get_if<LowerBound>(&bounds[k])) {
        require(k == k0, "CoefficientEventSpec: the lower bound must sit at k0");
        require(l->M >= 0.0, "CoefficientEventSpec: M must be non-negative");
        ++lower;
      }
    }
    require(lower == 1, "CoefficientEventSpec: exactly one lower bound required");
  }
};

namespace detail {
// log(R^k / sqrt(k!))
inline double log_weight(std::size_t k, double R) {
  return static_cast<double>(k) * std::log(R) - 0.5 * std::lgamma(static_cast<double>(k) + 1.0);
}
}  // namespace detail

/// Rouche event for a hole of radius R holding floor(p R^2) zeros.
///
/// With a_k = R^k / sqrt(k!) and K = k_cut - 1 suppressed core terms, the
/// dominant term is pushed to |xi_k0| >= sqrt(K) and every other term is
/// capped so that sum_{k != k0} delta_k a_k = 0.9 sqrt(K) a_k0: 95% of that
/// budget is split evenly over the core, 5% over the tail k_cut..N_trunc with
/// weights ~ 1/(1 + j)^2. Choosing sqrt(K) balances the lower-bound cost K
/// against the log-gain of the K core caps.
inline CoefficientEventSpec hole_event_constraints(double R, double p) {
  require(R >= 2.0, "hole_event_constraints: R must be >= 2");
  require(p >= 0.0 && p < 1.0, "hole_event_constraints: p must lie in [0, 1)");
  constexpr double margin = 0.9, tail_share = 0.05;
  CoefficientEventSpec spec;
  spec.R = R;
  spec.q = q_of_p(p);
  const double r2 = R * R;
  spec.k0 = static_cast<std::size_t>(std::floor(p * r2));
  spec.k_cut = static_cast<std::size_t>(std::ceil(spec.q * r2));
  const auto n_trunc = static_cast<std::size_t>(std::ceil((spec.q + 2.0) * r2));
  const double K = static_cast<double>(spec.k_cut - 1);
  const double log_budget = std::log(margin * std::sqrt(K)) + detail::log_weight(spec.k0, R);

  double z = 0.0;
  for (std::size_t k = spec.k_cut; k <= n_trunc; ++k) z += 1.0 / std::pow(1.0 + static_cast<double>(k - spec.k_cut), 2);

  spec.bounds.resize(n_trunc + 1);
  for (std::size_t k = 0; k <= n_trunc; ++k) {
    if (k == spec.k0) {
      spec.bounds[k] = LowerBound{std::sqrt(K)};
      continue;
    }
    double share;
    if (k < spec.k_cut)
      share = (1.0 - tail_share) / K;
    else
      share = tail_share / z / std::pow(1.0 + static_cast<double>(k - spec.k_cut), 2);
    spec.bounds[k] = UpperBound{std::exp(log_budget + std::log(share) - detail::log_weight(k, R))};
  }
  return spec;
}

/// log P of one constraint on a standard complex Gaussian (|xi|^2 ~ Exp(1)).
inline double bound_log_prob(const CoefficientBound& b) {
  if (const auto* u = std::get_if<UpperBound>(&b)) return std::log(-std::expm1(-u->delta * u->delta));
  if (const auto* l = std::get_if<LowerBound>(&b)) return -l->M * l->M;
  return 0.0;
}

inline double event_log_prob(const CoefficientEventSpec& spec) {
  spec.validate();
  double s = 0.0;
  for (const auto& b : spec.bounds) s += bound_log_prob(b);
  return s;
}

/// Draw from the conditional law of one coefficient given its constraint.
inline Point sample_constrained(const CoefficientBound& b, Rng& rng) {
  double m2;
  if (const auto* u = std::get_if<UpperBound>(&b))
    m2 = -std::log1p(rng.uniform() * std::expm1(-u->delta * u->delta));  // Exp(1) truncated to [0, delta^2]
  else if (const auto* l = std::get_if<LowerBound>(&b))
    m2 = l->M * l->M + rng.exponential();  // memorylessness
  else
    return rng.complex_normal();
  return std::polar(std::sqrt(m2), 2.0 * kPi * rng.uniform());
}

/// Zeros of the truncated GEF conditioned on the event. Coordinates are
/// w = z / R; the certificate records the Rouche margin on |w| = 1 (relative
/// to the dominant term) and the numerical root count inside.
inline PointConfiguration sample_conditional_gef(const CoefficientEventSpec& spec, Rng& rng) {
  spec.validate();
  GefCoefficients c;
  c.xi.reserve(spec.bounds.size());
  for (const auto& b : spec.bounds) c.xi.push_back(sample_constrained(b, rng));

  const double lead = std::log(std::abs(c.xi[spec.k0])) + detail::log_weight(spec.k0, spec.R);
  double others = 0.0;
  for (std::size_t k = 0; k < c.xi.size(); ++k)
    if (k != spec.k0) others += std::exp(std::log(std::abs(c.xi[k])) + detail::log_weight(k, spec.R) - lead);

  auto roots = weyl_roots(c, spec.R);
  HoleCertificate cert;
  cert.domination_margin = 1.0 - others;
  cert.expected = spec.k0;
  for (const Point& w : roots.roots) cert.roots_inside += std::abs(w) < 1.0;

  const double keep = 0.9 * std::sqrt(spec.q + 2.0);
  std::vector<Point> pts;
  for (const Point& w : roots.roots)
    if (std::abs(w) <= keep) pts.push_back(w);
  PointConfiguration out(std::move(pts), spec.R, "gef-hole");
  out.max_residual = roots.max_residual;
  out.degraded = roots.max_residual > kRootResidualTolerance;
  out.reliable_radius = keep;
  out.certificate = cert;
  return out;
}

/// Points with r1 <= |z| < r2 in unscaled coordinates.
inline std::size_t count_in_annulus(const PointConfiguration& config, double r1, double r2) {
  require(r1 >= 0.0 && r2 > r1, "count_in_annulus: need 0 <= r1 < r2");
  std::size_t n = 0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double r = std::abs(config.unscaled(i));
    n += r >= r1 && r < r2;
  }
  return n;
}

}  // namespace holelab

#pragma once

// The twelve end-to-end acceptance checks. Each returns its verdict with the
// numbers behind it; seeds are fixed so reruns are reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "holelab/conditional.hpp"
#include "holelab/fekete.hpp"
#include "holelab/gefhole.hpp"
#include "holelab/mcmc.hpp"
#include "holelab/measures.hpp"
#include "holelab/observables.hpp"
#include "holelab/oned.hpp"
#include "holelab/samplers.hpp"
#include "holelab/stats.hpp"

namespace holelab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace acceptance {

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

inline CriterionResult ginibre_hole_constant() {
  CriterionResult r{1, "Ginibre hole constant"};
  double prev = -kInf;
  bool monotone = true;
  for (int R = 5; R <= 10; ++R) {
    const double q = hole_log_prob_ginibre(R) / std::pow(R, 4);
    monotone = monotone && q > prev && q < -0.25;
    prev = q;
  }
  const bool in_band = prev >= -0.27 && prev <= -0.245;
  r.pass = in_band && monotone;
  r.detail = fmt("log P/R^4 at R=10: %.6f (band [-0.27,-0.245]: %s); increasing toward -1/4 over R=5..10: %s", prev,
                 in_band ? "in" : "out", monotone ? "yes" : "no");
  return r;
}

inline CriterionResult shirai_rate_vs_functional() {
  CriterionResult r{2, "Shirai rate vs functional"};
  double worst = 0.0;
  int checked = 0;
  std::string skipped;
  for (double alpha : {1.0, 2.0, 4.0}) {
    const FunctionalParams fp{alpha, 2.0};
    const double eq = coulomb_functional(equilibrium_measure(alpha), fp);
    for (double p : {0.0, 0.25, 0.5, 0.9, 2.0}) {
      if (p > alpha) {  // more than the whole mass inside the unit disk
        skipped += fmt(" (p=%g, alpha=%g)", p, alpha);
        continue;
      }
      const auto mu = p < 1.0 ? constrained_minimizer_ginibre(p, alpha) : overcrowding_minimizer_ginibre(p, alpha);
      worst = std::max(worst, std::abs(coulomb_functional(mu, fp) - eq - excess_energy_closed_form(p, alpha)));
      ++checked;
    }
  }
  r.pass = worst <= 1e-6;
  r.detail = fmt("max |I(mu_p) - I(mu_eq) - closed form| = %.3e over %d pairs; infeasible, skipped:", worst, checked) + skipped;
  return r;
}

inline CriterionResult jlm_cubic_identity() {
  CriterionResult r{3, "JLM cubic regime identity"};
  const double p = 0.99;
  const double ratio = count_deviation_bracket(p) / (2.0 / 3.0 * std::pow(p - 1.0, 3));
  r.pass = std::abs(ratio - 1.0) <= 0.02;
  r.detail = fmt("bracket / ((2/3)(p-1)^3) at p=0.99: %.6f", ratio);
  return r;
}

inline CriterionResult annulus_law() {
  CriterionResult r{4, "Conditional-intensity annulus law"};
  const double R = 12.0;
  const double bulk = annulus_expected_count(R, 2.0, 4.0) / (R * R);
  const double edge = annulus_expected_count(R, 1.0, 2.0) / (R * R);
  r.pass = std::abs(bulk / 2.0 - 1.0) <= 0.05 && std::abs(edge / 2.0 - 1.0) <= 0.07;
  r.detail = fmt("R=12: count(2,4)/R^2 = %.5f (2 +- 5%%), count(1,2)/R^2 = %.5f (2 +- 7%%)", bulk, edge);
  return r;
}

inline CriterionResult edge_blow_up() {
  CriterionResult r{5, "Edge blow-up"};
  double c[3];
  const double radii[3] = {10.0, 15.0, 20.0};
  for (int i = 0; i < 3; ++i) c[i] = cond_intensity(radii[i], radii[i]) * 2.0 * kPi / (radii[i] * radii[i]);
  bool stable = true;
  for (double x : c) stable = stable && std::abs(x / c[1] - 1.0) <= 0.1;
  r.pass = c[1] >= 0.9 && c[1] <= 1.1 && stable;
  r.detail = fmt("rho(R) 2 pi / R^2 at R=10,15,20: %.6f %.6f %.6f", c[0], c[1], c[2]);
  return r;
}

inline CriterionResult brute_force_oracle(std::uint64_t seed) {
  CriterionResult r{6, "Small-R brute-force oracle"};
  Rng rng(seed);
  const std::size_t n = 24;
  const double lo = 1.45, hi = 1.55, scale = std::sqrt(static_cast<double>(n));
  std::size_t accepted = 0, drawn = 0, hits = 0;
  while (accepted < 20000) {
    const auto c = sample_ginibre_matrix(n, rng);
    ++drawn;
    bool hole = true;
    for (std::size_t i = 0; i < n && hole; ++i) hole = std::abs(c[i]) * scale >= 1.0;
    if (!hole) continue;
    ++accepted;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::abs(c[i]) * scale;
      hits += x >= lo && x < hi;
    }
  }
  const double empirical = static_cast<double>(hits) / (static_cast<double>(accepted) * kPi * (hi * hi - lo * lo));
  const double exact = cond_intensity(1.5, 1.0);
  r.pass = std::abs(empirical / exact - 1.0) <= 0.1;
  r.detail = fmt("n=24 rejection (%zu accepted of %zu): %.5f vs cond_intensity(1.5,1) = %.5f, ratio %.4f", accepted, drawn,
                 empirical, exact, empirical / exact);
  return r;
}

inline CriterionResult beta_independent_profile(std::uint64_t seed, std::size_t steps = 4000000) {
  CriterionResult r{7, "beta-independent conditional profile"};
  const double R = 8.0;
  const std::size_t N = 256;
  bool pass = true;
  for (double beta : {2.0, 4.0}) {
    Rng rng(seed + static_cast<std::uint64_t>(beta));
    auto c = init_chain(BetaGinibre{beta, N}, ConstraintSpec::hole(HoleRegion::disk(0.0, R)), rng);
    double collar = 0.0, bulk = 0.0;
    std::size_t samples = 0, inside = 0;
    const auto s = run_chain(c, steps, steps / 4, 2560, {[&](const PointConfiguration& x) {
                               collar += static_cast<double>(count_in_annulus(x, R, 1.15 * R));
                               bulk += static_cast<double>(count_in_annulus(x, 1.3 * R, 1.75 * R));
                               inside += count_in_annulus(x, 0.0, R);
                               ++samples;
                             }});
    collar /= static_cast<double>(samples);
    bulk /= static_cast<double>(samples);
    // the displaced mass R^2 = N/4 sits on the circle; the uniform background
    // contributes (1.15^2 - 1) R^2 points to the collar as well
    const double raw = collar / static_cast<double>(N);
    const double excess = (collar - (1.15 * 1.15 - 1.0) * R * R) / static_cast<double>(N);
    const double density = bulk / (kPi * (1.75 * 1.75 - 1.3 * 1.3) * R * R);
    const bool ok = std::abs(excess - 0.25) <= 0.08 && inside == 0 && std::abs(density * kPi - 1.0) <= 0.15;
    pass = pass && ok;
    r.detail += fmt("beta=%g: excess collar %.4f, raw collar %.4f, bulk density*pi %.4f, points in hole %zu, "
                    "acceptance %.3f, samples %zu; ",
                    beta, excess, raw, density * kPi, inside, s.acceptance_rate, samples);
  }
  r.detail.resize(r.detail.size() - 2);
  r.pass = pass;
  return r;
}

inline CriterionResult gef_hole_event(std::uint64_t seed) {
  CriterionResult r{8, "GEF hole event"};
  const double target = kE * kE / 4.0;
  double prev = kInf, at6 = 0.0;
  bool monotone = true;
  for (double R : {4.0, 5.0, 6.0, 8.0}) {
    const double q = -event_log_prob(hole_event_constraints(R, 0.0)) / std::pow(R, 4);
    monotone = monotone && q < prev && q > target;
    prev = q;
    if (R == 6.0) at6 = q;
  }
  Rng rng(seed);
  const double R = 5.0;
  const auto spec = hole_event_constraints(R, 0.0);
  const int n = 200;
  int certified = 0, edge_ok = 0, forbidden_ok = 0;
  for (int i = 0; i < n; ++i) {
    const auto c = sample_conditional_gef(spec, rng);
    certified += c.certificate && c.certificate->holds() && count_in_annulus(c, 0.0, R) == 0;
    edge_ok += count_in_annulus(c, R, 1.1 * R) >= 0.6 * kE * R * R;
    forbidden_ok += count_in_annulus(c, 1.15 * R, 0.9 * std::sqrt(kE) * R) <= 0.15 * kE * R * R;
  }
  const bool rate_ok = std::abs(at6 / target - 1.0) <= 0.2 && monotone;
  r.pass = rate_ok && certified == n && edge_ok >= 0.8 * n && forbidden_ok >= 0.8 * n;
  r.detail = fmt("-log P/R^4 / (e^2/4) at R=6: %.4f, decreasing over R=4,5,6,8: %s; R=5 samples: %d/%d certified empty, "
                 "edge mass ok %d/%d, forbidden region ok %d/%d",
                 at6 / target, monotone ? "yes" : "no", certified, n, edge_ok, n, forbidden_ok, n);
  return r;
}

inline CriterionResult fekete_consistency(std::uint64_t seed) {
  CriterionResult r{9, "Fekete consistency"};
  Rng rng(seed);
  const auto ring = FeketeDomain::outside(HoleRegion::disk(0.0, 1.0), 3.0);
  bool decreasing = true, feasible = true;
  double prev = kInf;
  for (std::size_t n = 10; n <= 60; ++n) {
    const auto f = optimize_fekete(n, ring, rng);
    feasible = feasible && !f.flagged;
    decreasing = decreasing && f.delta < prev;
    prev = f.delta;
  }
  const std::vector<std::size_t> ns{50, 80, 120, 160, 200};
  const auto disk = hole_rate_general(HoleRegion::disk(0.0, 1.0), ns, rng);
  const auto none = hole_rate_general(std::nullopt, ns, rng);
  const bool rate_ok = !disk.flagged && std::abs(disk.rate / 0.25 - 1.0) <= 0.05;
  const bool none_ok = !none.flagged && std::abs(none.rate) <= 0.02 && std::abs(disk.calibration_offset) <= 0.02;
  r.pass = decreasing && feasible && rate_ok && none_ok;
  r.detail = fmt("delta_n decreasing n=10..60 on 1<=|z|<=3: %s; unit-disk rate %.5f (0.25 +- 5%%); no-hole rate %.2e; "
                 "free-plane limit - 3/4 = %.5f",
                 decreasing && feasible ? "yes" : "no", disk.rate, none.rate, disk.calibration_offset);
  return r;
}

inline CriterionResult one_dimensional() {
  CriterionResult r{10, "1D gap density and equilibrium"};
  double mass_err = 0.0;
  for (double w : {0.5, 1.0, 2.0}) mass_err = std::max(mass_err, std::abs(gap_density_mass(w, -10.0, 10.0) - 1.0));
  double f0_err = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -2.0 + 4.0 * i / 4000.0;
    f0_err = std::max(f0_err, std::abs(gap_density(0.0, x) - semicircle_density(x)));
  }
  const auto ch = equilibrium_characterization_check(semicircle_density, -kSemicircleEdge, kSemicircleEdge,
                                                     [](double x) { return x * x; }, 2.0);
  const double c_err = std::abs(ch.constant - (1.0 + std::log(2.0)));
  r.pass = mass_err <= 1e-8 && f0_err <= 1e-12 && ch.max_deviation <= 1e-6 && c_err <= 1e-4 && ch.exterior_ok;
  r.detail = fmt("max |int f_w - 1| = %.2e; max |f_0 - semicircle| = %.2e; characterization deviation %.2e, constant %.8f "
                 "(1 + log 2 = %.8f), exterior excess %s",
                 mass_err, f0_err, ch.max_deviation, ch.constant, 1.0 + std::log(2.0), ch.exterior_ok ? "yes" : "no");
  return r;
}

inline CriterionResult sampler_cross_validation(std::uint64_t seed) {
  CriterionResult r{11, "Sampler cross-validation"};
  Rng rng(seed);
  std::vector<double> a, b;
  const std::size_t n = 200;
  for (int rep = 0; rep < 100; ++rep) {
    const auto c = sample_ginibre_matrix(n, rng);
    for (const auto& z : c.points()) a.push_back(std::abs(z) * std::sqrt(static_cast<double>(n)));
    for (double x : sample_ginibre_radii(n, rng)) b.push_back(x);
  }
  const double ks_p = stats::ks_two_sample(a, b).p_value;
  double frac = 0.0;
  const int weyl_reps = 20;
  for (int i = 0; i < weyl_reps; ++i) {
    const auto c = sample_weyl_zeros(400, rng);
    std::size_t in = 0;
    for (const auto& z : c.points()) in += std::abs(z) < 0.5;
    frac += static_cast<double>(in) / static_cast<double>(c.size());
  }
  frac /= weyl_reps;
  const double R = 5.0;
  double count = 0.0;
  for (int i = 0; i < 200; ++i) count += static_cast<double>(count_in_annulus(sample_gef_zeros(R, gef_alpha_min(R), rng), 0.0, R));
  count /= 200.0;
  r.pass = ks_p > 0.001 && std::abs(frac - 0.25) <= 0.03 && std::abs(count / (R * R) - 1.0) <= 0.03;
  r.detail = fmt("matrix vs Kostlan radii KS p = %.4f; Weyl n=400 fraction in |w|<1/2: %.4f; GEF mean count in D(0,5): %.3f (25)",
                 ks_p, frac, count);
  return r;
}

inline CriterionResult mcmc_correctness(std::uint64_t seed) {
  CriterionResult r{12, "MCMC correctness"};
  Rng rng(seed);
  const std::size_t n = 64;
  auto c = init_chain(BetaGinibre{2.0, n}, ConstraintSpec::none(), rng);
  std::vector<double> chain_r;
  const auto s = run_chain(c, 2100000, 100000, 1000, {[&](const PointConfiguration& x) {
                             for (std::size_t i = 0; i < x.size(); ++i) chain_r.push_back(std::abs(x.unscaled(i)));
                           }});
  std::vector<double> exact_r;
  for (int rep = 0; rep < 400; ++rep) {
    const auto e = sample_ginibre_matrix(n, rng);
    for (std::size_t i = 0; i < e.size(); ++i) exact_r.push_back(std::abs(e[i]) * std::sqrt(static_cast<double>(n)));
  }
  const double ks_p = stats::ks_two_sample(chain_r, exact_r).p_value;

  auto h = init_chain(BetaGinibre{2.0, 256}, ConstraintSpec::hole(HoleRegion::disk(0.0, 8.0)), rng);
  run_chain(h, 100000, 10000, 1000);
  const double drift = std::max(s.max_drift, h.max_drift);

  // two particles outside the unit disk: symmetric flows between binned states
  auto t = init_chain(BetaGinibre{2.0, 2}, ConstraintSpec::hole(HoleRegion::disk(0.0, 1.0)), rng);
  t.set_sigma(0.8);
  auto state = [&]() {
    auto bin = [](Point z) {
      const double x = std::abs(z);
      return x < 1.3 ? 0 : x < 1.6 ? 1 : x < 2.0 ? 2 : 3;
    };
    return 4 * bin(t.z[0]) + bin(t.z[1]);
  };
  for (int i = 0; i < 20000; ++i) mh_step(t);
  std::vector<double> flow(256, 0.0);
  int st = state();
  for (int i = 0; i < 1000000; ++i) {
    mh_step(t);
    const int nx = state();
    if (nx != st) flow[16 * st + nx] += 1.0;
    st = nx;
  }
  double chi2 = 0.0;
  int dof = 0;
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j) {
      const double ab = flow[16 * i + j], ba = flow[16 * j + i];
      if (ab + ba < 20) continue;
      chi2 += (ab - ba) * (ab - ba) / (ab + ba);
      ++dof;
    }
  const double balance_p = dof > 0 ? boost::math::gamma_q(0.5 * dof, 0.5 * chi2) : 0.0;
  r.pass = ks_p > 0.001 && drift <= 1e-8 && dof > 5 && balance_p > 0.01;
  r.detail = fmt("unconstrained N=64 chain vs matrix radii KS p = %.4f; max cache drift per audit %.2e; "
                 "detailed balance chi2 = %.2f on %d dof, p = %.4f",
                 ks_p, drift, chi2, dof, balance_p);
  return r;
}

}  // namespace acceptance

inline constexpr int kCriteria = 12;

/// Runs the selected criteria (1..12; empty = all), reporting each result as it completes.
inline std::vector<CriterionResult> run_acceptance(std::vector<int> which = {}, std::uint64_t seed = 2024,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
  if (which.empty())
    for (int i = 1; i <= kCriteria; ++i) which.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : which) {
    require(id >= 1 && id <= kCriteria, "run_acceptance: criteria are numbered 1..12");
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
      case 1: r = acceptance::ginibre_hole_constant(); break;
      case 2: r = acceptance::shirai_rate_vs_functional(); break;
      case 3: r = acceptance::jlm_cubic_identity(); break;
      case 4: r = acceptance::annulus_law(); break;
      case 5: r = acceptance::edge_blow_up(); break;
      case 6: r = acceptance::brute_force_oracle(seed + 6); break;
      case 7: r = acceptance::beta_independent_profile(seed + 7); break;
      case 8: r = acceptance::gef_hole_event(seed + 8); break;
      case 9: r = acceptance::fekete_consistency(seed + 9); break;
      case 10: r = acceptance::one_dimensional(); break;
      case 11: r = acceptance::sampler_cross_validation(seed + 11); break;
      case 12: r = acceptance::mcmc_correctness(seed + 12); break;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace holelab

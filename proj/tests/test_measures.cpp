#include <gtest/gtest.h>

#include <random>

#include "holelab/measures.hpp"

using namespace holelab;

namespace {

// Brute-force radial potential: angular average of log|r - s e^{it}| done by
// the trapezoid rule, integrated against the density in s with midpoints.
double potential_oracle(const RadialMeasure& mu, double r) {
  double u = 0.0;
  const int ns = 1500, nt = 1200;
  auto angular = [&](double s) {
    double acc = 0.0;
    for (int k = 0; k < nt; ++k) {
      const double t = 2.0 * kPi * (k + 0.5) / nt;
      acc += std::log(std::abs(Point(r, 0.0) - std::polar(s, t)));
    }
    return acc / nt;
  };
  for (const auto& a : mu.annuli()) {
    const double h = (a.r_hi - a.r_lo) / ns;
    for (int i = 0; i < ns; ++i) {
      const double s = a.r_lo + (i + 0.5) * h;
      u += angular(s) * 2.0 * kPi * a.density * s * h;
    }
  }
  for (const auto& c : mu.atoms()) u += c.mass * angular(c.radius);
  return u;
}

double energy_monte_carlo_disk(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point z = std::polar(std::sqrt(u(gen)), 2.0 * kPi * u(gen));
    const Point w = std::polar(std::sqrt(u(gen)), 2.0 * kPi * u(gen));
    acc += std::log(std::abs(z - w));
  }
  return acc / static_cast<double>(n);
}

}  // namespace

TEST(RadialMeasure, MergesAndSorts) {
  RadialMeasure mu({{1.0, 2.0, 0.5}, {0.0, 1.0, 0.5}, {1.5, 3.0, 1.0}}, {{1.0, 0.2}, {1.0, 0.3}, {0.5, 0.0}});
  ASSERT_EQ(mu.annuli().size(), 3u);
  EXPECT_DOUBLE_EQ(mu.annuli()[0].r_lo, 0.0);
  EXPECT_DOUBLE_EQ(mu.annuli()[0].r_hi, 1.5);
  EXPECT_DOUBLE_EQ(mu.annuli()[1].density, 1.5);
  ASSERT_EQ(mu.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(mu.atoms()[0].mass, 0.5);
  const double expect = kPi * (2.25 * 0.5 + (4.0 - 2.25) * 1.5 + (9.0 - 4.0) * 1.0) + 0.5;
  EXPECT_NEAR(mu.total_mass(), expect, 1e-12);
}

TEST(RadialMeasure, RejectsNegativeMass) {
  EXPECT_THROW(RadialMeasure::annulus(0.0, 1.0, -1.0), DomainError);
  EXPECT_THROW(RadialMeasure::atom(1.0, -0.1), DomainError);
}

TEST(LogPotential, UnitCircle) {
  const auto mt = RadialMeasure::unit_circle();
  EXPECT_DOUBLE_EQ(log_potential(mt, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(log_potential(mt, 2.0), std::log(2.0));
}

TEST(LogPotential, UniformDiskOnSupport) {
  EXPECT_NEAR(log_potential(equilibrium_measure(1.0), 0.5), -0.375, 1e-15);
}

TEST(LogPotential, AtomAtOriginDiverges) {
  EXPECT_THROW(log_potential(RadialMeasure::atom(0.0, 1.0), 0.0), DomainError);
}

TEST(LogPotential, MatchesBruteForceAngularOracle) {
  RadialMeasure mu({{0.3, 0.8, 0.7}, {1.2, 1.9, 0.2}}, {{1.0, 0.4}});
  for (double r : {0.0, 0.5, 1.05, 1.5, 2.5}) EXPECT_NEAR(log_potential(mu, r), potential_oracle(mu, r), 2e-5) << r;
}

TEST(LogPotential, ContinuousAndLogarithmicAtInfinity) {
  RadialMeasure mu({{0.0, 0.5, 1.0}, {0.7, 1.3, 0.3}}, {{1.0, 0.25}, {2.0, 0.5}});
  for (double b : mu.breakpoints()) {
    EXPECT_NEAR(log_potential(mu, b * (1 - 1e-10)), log_potential(mu, b * (1 + 1e-10)), 1e-8);
  }
  for (double r : {1e3, 1e5, 1e7}) EXPECT_NEAR(log_potential(mu, r), mu.total_mass() * std::log(r), 1e-12 * r + 1e-9);
}

TEST(LogEnergy, CircleAtoms) {
  EXPECT_NEAR(log_energy(RadialMeasure::unit_circle()), 0.0, 1e-15);
  EXPECT_NEAR(log_energy(RadialMeasure::atom(2.5, 1.0)), std::log(2.5), 1e-15);
  EXPECT_EQ(log_energy(RadialMeasure::atom(0.0, 1.0)), -kInf);
}

TEST(LogEnergy, UniformDisk) {
  EXPECT_NEAR(log_energy(equilibrium_measure(1.0)), -0.25, 1e-8);
  // Independent Monte Carlo over pairs of uniform points in the disk.
  EXPECT_NEAR(energy_monte_carlo_disk(2'000'000, 7), -0.25, 3e-3);
}

TEST(LogEnergy, MixtureAgreesWithPotentialOracle) {
  RadialMeasure mu({{0.2, 0.9, 0.4}}, {{1.1, 0.3}});
  // int U dmu with the brute-force potential at Gauss points in r.
  double oracle = 0.3 * potential_oracle(mu, 1.1);
  const int n = 40;
  const double h = 0.7 / n;
  for (int i = 0; i < n; ++i) {
    const double s = 0.2 + (i + 0.5) * h;
    oracle += potential_oracle(mu, s) * 2.0 * kPi * 0.4 * s * h;
  }
  EXPECT_NEAR(log_energy(mu), oracle, 2e-4);
}

TEST(MeanSquare, ClosedForms) {
  EXPECT_NEAR(mean_square(equilibrium_measure(1.0)), 0.5, 1e-15);
  EXPECT_NEAR(mean_square(RadialMeasure::unit_circle()), 1.0, 1e-15);
  EXPECT_NEAR(mean_square(equilibrium_measure(4.0)), 2.0, 1e-14);
}

TEST(CoulombFunctional, Values) {
  EXPECT_NEAR(coulomb_functional(equilibrium_measure(1.0), {1.0, 2.0}), 0.75, 1e-9);
  EXPECT_NEAR(coulomb_functional(equilibrium_measure(4.0), {4.0, 2.0}), 0.75 - 0.5 * std::log(4.0), 1e-9);
  EXPECT_NEAR(coulomb_functional(constrained_minimizer_ginibre(0.0, 1.0), {1.0, 2.0}), 1.0, 1e-9);
  EXPECT_THROW(coulomb_functional(RadialMeasure::atom(1.0, 2.0), {1.0, 2.0}), DomainError);
}

TEST(ExcessEnergy, ClosedForm) {
  EXPECT_NEAR(excess_energy_closed_form(0.0, 1.0), 0.25, 1e-15);
  for (double a : {1.0, 2.0, 7.0}) EXPECT_NEAR(excess_energy_closed_form(1.0, a), 0.0, 1e-15);
  EXPECT_NEAR(excess_energy_closed_form(2.0, 4.0), std::abs(8 * std::log(2.0) - 5) / 64.0, 1e-15);
  EXPECT_NEAR(excess_energy_closed_form(2.0, 4.0), 0.0085184, 1e-7);
}

TEST(ExcessEnergy, MatchesFunctionalDifference) {
  for (double alpha : {1.0, 2.0, 4.0}) {
    const FunctionalParams fp{alpha, 2.0};
    const double eq = coulomb_functional(equilibrium_measure(alpha), fp);
    for (double p : {0.0, 0.25, 0.5, 0.9}) {
      const double got = coulomb_functional(constrained_minimizer_ginibre(p, alpha), fp) - eq;
      EXPECT_NEAR(got, excess_energy_closed_form(p, alpha), 1e-6) << p << " " << alpha;
    }
    if (alpha >= 2.0) {
      const double got = coulomb_functional(overcrowding_minimizer_ginibre(2.0, alpha), fp) - eq;
      EXPECT_NEAR(got, excess_energy_closed_form(2.0, alpha), 1e-6) << alpha;
    }
  }
}

TEST(ConstrainedMinimizer, Shape) {
  auto m0 = constrained_minimizer_ginibre(0.0, 1.0);
  EXPECT_TRUE(m0.annuli().empty());
  ASSERT_EQ(m0.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(m0.atoms()[0].mass, 1.0);
  auto m = constrained_minimizer_ginibre(0.5, 2.0);
  ASSERT_EQ(m.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(m.atoms()[0].mass, 0.25);
  EXPECT_NEAR(m.total_mass(), 1.0, 1e-14);
  EXPECT_THROW(constrained_minimizer_ginibre(1.0, 2.0), DomainError);
}

TEST(ConstrainedMinimizer, PotentialProfile) {
  for (double alpha : {1.0, 2.0, 4.0}) {
    for (double p : {0.0, 0.3, 0.7}) {
      const auto mu = constrained_minimizer_ginibre(p, alpha);
      auto excess = [&](double r) {
        return log_potential(mu, r) - r * r / (2 * alpha) - (std::log(alpha) - 1) / 2;
      };
      const double c1 = (p * (p > 0 ? std::log(p) - 1 : 0) + 1) / (2 * alpha);
      for (int i = 0; i <= 10; ++i) {
        EXPECT_NEAR(excess(std::sqrt(p) * i / 10.0), c1, 1e-9);
        EXPECT_NEAR(excess(1.0 + (std::sqrt(alpha) - 1.0) * i / 10.0), 0.0, 1e-9);
      }
      for (int i = 1; i < 10; ++i) {
        const double r = std::sqrt(p) + (1 - std::sqrt(p)) * i / 10.0;
        EXPECT_LT(excess(r), c1);
        EXPECT_GT(excess(r), 0.0);
        EXPECT_LT(excess(std::sqrt(alpha) * (1 + 0.3 * i)), 0.0);
      }
    }
  }
}

namespace {

RadialMeasure random_measure(std::mt19937_64& gen, double inner_cap, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<AnnulusUniform> an;
  std::vector<CircleAtom> at;
  std::vector<double> w;
  const int pieces = 1 + static_cast<int>(u(gen) * 4);
  std::vector<std::pair<bool, std::pair<double, double>>> shape;
  double inner = 0.0, total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const bool atom = u(gen) < 0.4;
    double lo = u(gen) * r_max, hi = lo + 0.05 + u(gen) * (r_max - lo);
    const double weight = 0.05 + u(gen);
    shape.push_back({atom, {lo, hi}});
    w.push_back(weight);
    total += weight;
    if (lo < 1.0) inner += weight * (atom ? 1.0 : std::min(1.0, (1.0 - lo * lo) / (hi * hi - lo * lo)));
  }
  // Push everything outside the unit disk if the inner mass cap would be violated.
  const bool push_out = inner / total > inner_cap;
  for (int i = 0; i < pieces; ++i) {
    auto [lo, hi] = shape[i].second;
    if (push_out) {
      lo = 1.0 + lo * 0.5;
      hi = lo + 0.05 + (hi - shape[i].second.first) * 0.5;
    }
    const double m = w[i] / total;
    if (shape[i].first)
      at.push_back({lo, m});
    else
      an.push_back({lo, hi, m / (kPi * (hi * hi - lo * lo))});
  }
  return RadialMeasure(an, at);
}

}  // namespace

TEST(VariationalCertificate, Basics) {
  const FunctionalParams fp{1.0, 2.0};
  const auto eq = equilibrium_measure(1.0);
  EXPECT_TRUE(variational_certificate(eq, eq, fp));
  EXPECT_TRUE(variational_certificate(equilibrium_measure(2.0), RadialMeasure::atom(std::sqrt(2.0) * 1.5, 1.0), {2.0, 2.0}));
  EXPECT_FALSE(variational_certificate(RadialMeasure::unit_circle(), eq, fp));
  EXPECT_THROW(variational_certificate(eq, RadialMeasure::atom(0.0, 1.0), fp), DomainError);
}

TEST(VariationalCertificate, RandomSuiteAgainstConstrainedMinimizer) {
  std::mt19937_64 gen(2024);
  for (auto [p, alpha] : {std::pair{0.3, 2.0}, std::pair{0.0, 1.0}, std::pair{0.6, 4.0}}) {
    const auto mu0 = constrained_minimizer_ginibre(p, alpha);
    const FunctionalParams fp{alpha, 2.0};
    int checked = 0;
    while (checked < 100) {
      const auto mu = random_measure(gen, p / alpha, 2.5 * std::sqrt(alpha));
      if (mu.mass_inside(1.0) > p / alpha + 1e-12) continue;
      EXPECT_TRUE(variational_certificate(mu0, mu, fp)) << p << " " << alpha;
      ++checked;
    }
    // A perturbed candidate (atom moved off the unit circle) is caught.
    const double d = 1.0 / (kPi * alpha);
    RadialMeasure bad({{0.0, std::sqrt(p), d}, {1.0, std::sqrt(alpha), d}}, {{1.3, (1.0 - p) / alpha}});
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
      const auto mu = random_measure(gen, p / alpha, 2.5 * std::sqrt(alpha));
      if (mu.mass_inside(1.0) > p / alpha + 1e-12) continue;
      failures += !variational_certificate(bad, mu, fp);
    }
    failures += !variational_certificate(bad, mu0, fp);
    EXPECT_GE(failures, 1);
  }
}

TEST(WeylFunctional, EquilibriumIsZero) {
  for (double a : {1.0, 2.0, 4.0}) EXPECT_NEAR(weyl_functional(equilibrium_measure(a), a), 0.0, 1e-12);
}

TEST(WeylFunctional, GefHoleMeasureIsPositive) {
  const double alpha = 25.0;
  const auto mu = limiting_measure_gef(0.0).restricted(std::sqrt(alpha)).scaled_mass(1.0 / alpha);
  EXPECT_GT(weyl_functional(mu, alpha), 0.0);
}

TEST(WeylFunctional, DenseGridOracle) {
  const double alpha = 4.0;
  const auto nu = limiting_measure_gef(0.0).restricted(std::sqrt(alpha)).scaled_mass(1.0 / alpha);
  ASSERT_NEAR(nu.total_mass(), 1.0, 1e-12);
  auto sup_dense = [&](const RadialMeasure& m) {
    double best = -kInf;
    const int n = 409600;
    for (int i = 0; i <= n; ++i) {
      const double r = 10.0 * std::sqrt(alpha) * i / n;
      best = std::max(best, log_potential(m, r) - r * r / (2 * alpha));
    }
    return best;
  };
  const auto eq = equilibrium_measure(alpha);
  const double oracle = (2 * sup_dense(nu) - log_energy(nu)) - (2 * sup_dense(eq) - log_energy(eq));
  EXPECT_NEAR(weyl_functional(nu, alpha), oracle, 1e-6);
  EXPECT_NEAR(weyl_functional(nu, alpha, 8192), weyl_functional(nu, alpha), 1e-8);
}

TEST(WeylFunctional, RejectsUnboundedSupport) {
  EXPECT_THROW(weyl_functional(RadialMeasure::atom(30.0, 1.0), 4.0), DomainError);
}

TEST(QOfP, Values) {
  EXPECT_DOUBLE_EQ(q_of_p(0.0), kE);
  EXPECT_NEAR(q_of_p(0.5), 1.6030164899, 1e-9);
  EXPECT_NEAR(q_of_p(1.0 - 1e-6), 1.0, 1e-5);
  EXPECT_GT(q_of_p(1.0 - 1e-6), 1.0);
  EXPECT_THROW(q_of_p(1.0), DomainError);
  EXPECT_THROW(q_of_p(kE), DomainError);
  double prev = kInf;
  for (double p = 0.0; p < 1.0; p += 0.01) {
    const double q = q_of_p(p);
    const double lhs = p == 0 ? 0.0 : p * (std::log(p) - 1);
    EXPECT_NEAR(lhs, q * (std::log(q) - 1), 1e-12);
    EXPECT_LT(q, prev);
    prev = q;
  }
  for (double p : {1.2, 2.0, 2.7}) {
    const double q = q_of_p(p);
    EXPECT_GT(q, 0.0);
    EXPECT_LT(q, 1.0);
    EXPECT_NEAR(p * (std::log(p) - 1), q * (std::log(q) - 1), 1e-12);
  }
}

TEST(LimitingMeasures, Gef) {
  const auto m0 = limiting_measure_gef(0.0);
  ASSERT_EQ(m0.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(m0.atoms()[0].mass, kE);
  ASSERT_EQ(m0.annuli().size(), 1u);
  EXPECT_DOUBLE_EQ(m0.annuli()[0].r_lo, std::sqrt(kE));
  EXPECT_EQ(m0.annuli()[0].r_hi, kInf);
  EXPECT_NEAR(m0.annuli()[0].density, 1.0 / kPi, 1e-16);
  const auto me = limiting_measure_gef(kE);
  EXPECT_NEAR(me.atoms()[0].mass, kE, 1e-15);
  EXPECT_NEAR(me.annuli()[0].r_lo, std::sqrt(kE), 1e-15);
  const auto mh = limiting_measure_gef(0.5);
  EXPECT_NEAR(mh.atoms()[0].mass, 1.6030164899 - 0.5, 1e-9);
  EXPECT_NEAR(mh.annuli()[0].r_hi, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(mh.annuli()[1].r_lo, std::sqrt(q_of_p(0.5)), 1e-15);
  EXPECT_NEAR(limiting_measure_gef(1e-9).atoms()[0].mass, kE, 1e-6);
  EXPECT_THROW(limiting_measure_gef(1.0), DomainError);
}

TEST(LimitingMeasures, GinibreInfinite) {
  const auto m0 = limiting_measure_ginibre_infinite(0.0);
  EXPECT_DOUBLE_EQ(m0.atoms()[0].mass, 1.0);
  EXPECT_DOUBLE_EQ(m0.annuli()[0].r_lo, 1.0);
  const auto m2 = limiting_measure_ginibre_infinite(2.0);
  ASSERT_EQ(m2.annuli().size(), 2u);
  EXPECT_DOUBLE_EQ(m2.annuli()[0].r_hi, 1.0);
  EXPECT_DOUBLE_EQ(m2.annuli()[1].r_lo, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(m2.atoms()[0].mass, 1.0);
  EXPECT_NEAR(limiting_measure_ginibre_infinite(1 - 1e-9).atoms()[0].mass, 0.0, 1e-8);
  EXPECT_NEAR(limiting_measure_ginibre_infinite(1 + 1e-9).atoms()[0].mass, 0.0, 1e-8);
}

TEST(ShiraiRate, Values) {
  EXPECT_DOUBLE_EQ(shirai_rate(0.0), 0.25);
  EXPECT_NEAR(shirai_rate(1.0), 0.0, 1e-16);
  const double p = 0.99;
  EXPECT_NEAR(shirai_rate(p) / (0.25 * (2.0 / 3.0) * std::pow(std::abs(p - 1), 3)), 1.0, 0.02);
}

TEST(Jlm, ExponentBranches) {
  EXPECT_DOUBLE_EQ(jlm_exponent(2.0), 4.0);
  EXPECT_DOUBLE_EQ(jlm_exponent(1.0), 1.0);
  EXPECT_DOUBLE_EQ(jlm_exponent(0.75), 0.5);
  EXPECT_DOUBLE_EQ(jlm_exponent(3.0), 6.0);
  for (double a : {1.0, 2.0}) EXPECT_NEAR(jlm_exponent(a - 1e-9), jlm_exponent(a + 1e-9), 1e-8);
}

TEST(Jlm, Prefactors) {
  auto mid = jlm_rate({1.5, 1.0, 2.0, std::nullopt}, 100.0);
  EXPECT_DOUBLE_EQ(mid.exponent, 2.5);
  ASSERT_TRUE(mid.prefactor);
  EXPECT_NEAR(*mid.prefactor, 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(jlm_rate({1.0, 1.0, 2.0, std::nullopt}, 10.0).prefactor);
  EXPECT_FALSE(jlm_rate({0.75, 1.0, 2.0, std::nullopt}, 10.0).prefactor);
  EXPECT_NEAR(*jlm_rate({0.75, 2.0, 2.0, 0.1}, 10.0).prefactor, 0.8, 1e-15);
  EXPECT_NEAR(*jlm_rate({2.0, -1.0, 2.0, std::nullopt}, 10.0).prefactor, 0.25, 1e-15);
  EXPECT_FALSE(jlm_rate({2.0, 1.0, 4.0, std::nullopt}, 10.0).prefactor);
  EXPECT_NEAR(*jlm_rate({3.0, 1.0, 2.0, std::nullopt}, 10.0).prefactor, std::log(10.0), 1e-14);
  EXPECT_THROW(jlm_rate({2.0, -2.0, 2.0, std::nullopt}, 10.0), DomainError);
  EXPECT_THROW(jlm_rate({3.0, -1.0, 2.0, std::nullopt}, 10.0), DomainError);
  EXPECT_THROW(jlm_rate({0.4, 1.0, 2.0, std::nullopt}, 10.0), DomainError);
}

TEST(LogPartition, LeadingTerm) {
  EXPECT_NEAR(log_partition_asymptotic(10, {1.0, 2.0}), -75.0, 1e-7);
  EXPECT_EQ(log_partition_asymptotic(0, {1.0, 2.0}), 0.0);
  EXPECT_NEAR(log_partition_asymptotic(20, {2.0, 4.0}) / log_partition_asymptotic(10, {2.0, 4.0}), 4.0, 1e-12);
}

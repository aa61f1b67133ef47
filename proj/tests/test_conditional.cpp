#include <gtest/gtest.h>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "holelab/conditional.hpp"
#include "holelab/measures.hpp"
#include "holelab/samplers.hpp"

using namespace holelab;

namespace {

// rho^R(r) * pi = sum_n Poisson(n; r^2) / Q(n + 1, R^2), with Boost's
// regularized gamma and Poisson pmf.
double intensity_oracle(double r, double R) {
  boost::math::poisson_distribution<double> pois(r * r);
  double s = 0.0;
  for (int n = 0; n < 20000; ++n) {
    const double term = boost::math::pdf(pois, n) / boost::math::gamma_q(n + 1.0, R * R);
    s += term;
    if (n > r * r + 50 && term < 1e-18 * s) break;
  }
  return s / kPi;
}

}  // namespace

TEST(IncompleteGamma, Trivial) {
  for (double x : {0.0, 0.5, 3.0, 40.0}) EXPECT_NEAR(log_upper_incomplete_gamma(0, x), -x, 1e-13);
  for (std::size_t n : {0u, 1u, 5u, 30u, 170u}) EXPECT_NEAR(log_upper_incomplete_gamma(n, 0.0), std::lgamma(n + 1.0), 1e-12);
}

TEST(IncompleteGamma, QuadratureOracle) {
  auto f = [](double t) { return std::exp(-t + 10.0 * std::log(t)); };
  const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 10.0, 400.0, 30, 1e-14);
  EXPECT_NEAR(log_upper_incomplete_gamma(10, 10.0), std::log(q), 1e-10);
}

TEST(IncompleteGamma, AgreesWithBoostAndTable) {
  for (double x : {0.3, 2.0, 9.5, 64.0, 225.0}) {
    const auto table = log_upper_incomplete_gamma_table(600, x);
    for (std::size_t n : {0u, 1u, 3u, 9u, 10u, 63u, 64u, 200u, 600u}) {
      const double ref = std::log(boost::math::gamma_q(n + 1.0, x)) + std::lgamma(n + 1.0);
      EXPECT_NEAR(log_upper_incomplete_gamma(n, x), ref, 1e-12 * std::max(1.0, std::abs(ref))) << n << " " << x;
      EXPECT_NEAR(table[n], ref, 1e-11 * std::max(1.0, std::abs(ref))) << n << " " << x;
    }
  }
}

TEST(CondIntensity, FarFieldIsUnconditionalDensity) {
  EXPECT_NEAR(cond_intensity(24.0, 8.0) * kPi, 1.0, 0.01);
  EXPECT_NEAR(cond_intensity(24.0, 8.0), intensity_oracle(24.0, 8.0), 1e-12);
  for (double R : {2.0, 5.0, 8.0}) EXPECT_NEAR(cond_intensity(4 * R, R) * kPi, 1.0, 0.005) << R;
}

TEST(CondIntensity, MatchesPoissonOracle) {
  for (auto [r, R] : {std::pair{1.5, 1.0}, std::pair{10.0, 10.0}, std::pair{11.0, 10.0}, std::pair{20.0, 15.0}})
    EXPECT_NEAR(cond_intensity(r, R) / intensity_oracle(r, R), 1.0, 1e-10) << r << " " << R;
}

TEST(CondIntensity, EdgeBlowUp) {
  const double frozen[] = {1.056665234, 1.028464182, 1.017356862};
  const double radii[] = {10.0, 15.0, 20.0};
  for (int i = 0; i < 3; ++i) {
    const double R = radii[i];
    const double c = cond_intensity(R, R) * 2.0 * kPi / (R * R);
    EXPECT_NEAR(c, frozen[i], 1e-8) << R;
    EXPECT_GE(c, 0.9);
    EXPECT_LE(c, 1.1);
  }
}

TEST(CondIntensity, ExceedsUnconditionalDensityOutsideHole) {
  for (double R : {1.0, 4.0, 10.0}) {
    GinibreHoleIntensity rho(R);
    for (int i = 0; i <= 60; ++i) {
      const double r = R * (1.0 + 3.0 * i / 60.0);
      EXPECT_GE(rho(r) * kPi, 1.0 - 1e-10) << r;
    }
  }
}

TEST(CondIntensity, InsideHoleIsUndefined) {
  EXPECT_THROW(cond_intensity(0.5, 1.0), DomainError);
  EXPECT_FALSE(cond_intensity_profile(0.5, 1.0).has_value());
  EXPECT_TRUE(cond_intensity_profile(1.5, 1.0).has_value());
  EXPECT_THROW(cond_intensity(1.0, 0.0), DomainError);
}

TEST(CondIntensity, RejectionSampledFiniteGinibre) {
  // Condition n = 24 Ginibre (unit density) on no eigenvalue in |z| < 1 and
  // count points in a thin annulus around |z| = 1.5.
  Rng rng(31);
  const std::size_t n = 24;
  const double lo = 1.45, hi = 1.55;
  std::size_t accepted = 0, hits = 0;
  while (accepted < 5000) {
    const auto c = sample_ginibre_matrix(n, rng);
    bool hole = true;
    for (std::size_t i = 0; i < n && hole; ++i) hole = std::abs(c[i]) * std::sqrt(double(n)) >= 1.0;
    if (!hole) continue;
    ++accepted;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::abs(c[i]) * std::sqrt(double(n));
      hits += r >= lo && r < hi;
    }
  }
  const double empirical = hits / (accepted * kPi * (hi * hi - lo * lo));
  EXPECT_NEAR(empirical / cond_intensity(1.5, 1.0), 1.0, 0.1);
}

TEST(AnnulusCount, ShiraiLimits) {
  const double R = 12.0;
  const double bulk = annulus_expected_count(R, 2.0, 4.0) / (R * R);
  const double edge = annulus_expected_count(R, 1.0, 2.0) / (R * R);
  EXPECT_NEAR(bulk, 2.0, 0.1);
  EXPECT_NEAR(edge, 2.0, 0.14);
  // without conditioning the same annuli hold b - a particles per R^2, so the
  // excess in the edge annulus is the displaced unit mass
  EXPECT_NEAR(edge - 1.0, 1.0, 0.14);
  EXPECT_THROW(annulus_expected_count(R, 0.5, 2.0), DomainError);
}

TEST(AnnulusCount, MatchesRadialQuadratureOracle) {
  const double R = 3.0;
  // midpoint rule on the oracle intensity
  const int m = 4000;
  const double lo = R, hi = std::sqrt(2.0) * R;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = lo + (hi - lo) * (i + 0.5) / m;
    acc += 2 * kPi * intensity_oracle(r, R) * r * (hi - lo) / m;
  }
  EXPECT_NEAR(annulus_expected_count(R, 1.0, 2.0), acc, 1e-5);
}

TEST(HoleProbability, SmallRadii) {
  EXPECT_EQ(hole_log_prob_ginibre(0.0), 0.0);
  EXPECT_NEAR(hole_log_prob_ginibre(0.1), -0.01, 1e-4);
  // k = 1 factor exactly
  EXPECT_NEAR(hole_log_prob_ginibre(0.7, 1), -0.49, 1e-15);
}

TEST(HoleProbability, FiniteMatchesBoostProduct) {
  for (double r : {0.5, 2.0, 4.0}) {
    double ref = 0.0;
    for (int k = 1; k <= 30; ++k) ref += std::log(boost::math::gamma_q(k, r * r));
    EXPECT_NEAR(hole_log_prob_ginibre(r, 30), ref, 1e-11 * std::abs(ref));
  }
}

TEST(HoleProbability, InfiniteEnsembleValues) {
  // exact product evaluated independently in 50-digit arithmetic
  const double frozen[] = {-0.3599905993, -0.3262191956, -0.3064761397, -0.2938085913,
                           -0.2851356652, -0.2789058871, -0.2742625875};
  double prev = -kInf;
  for (int r = 4; r <= 10; ++r) {
    const auto h = hole_log_prob_ginibre_detail(r);
    const double ratio = h.log_p / std::pow(r, 4);
    EXPECT_NEAR(ratio, frozen[r - 4], 1e-9) << r;
    EXPECT_GT(ratio, prev);
    EXPECT_LT(h.tail_bound, 1e-14);
    prev = ratio;
  }
  // approach to the rate of the constrained energy problem
  EXPECT_LT(std::abs(-hole_log_prob_ginibre(10.0) / 1e4 - excess_energy_closed_form(0.0, 1.0)), 0.025);
}

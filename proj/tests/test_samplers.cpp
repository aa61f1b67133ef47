#include <gtest/gtest.h>

#include <random>

#include "holelab/samplers.hpp"
#include "holelab/stats.hpp"

using namespace holelab;

namespace {

// Extended-precision Horner for the unscaled Weyl polynomial at z.
double residual_oracle(const GefCoefficients& c, Point z) {
  using C = std::complex<long double>;
  const C zz(z.real(), z.imag());
  C p = 0;
  long double s = 0;
  const long double az = std::abs(zz);
  for (std::size_t k = c.xi.size(); k-- > 0;) {
    const long double f = std::exp(-0.5L * std::lgamma(static_cast<long double>(k) + 1.0L));
    const C ck(c.xi[k].real() * f, c.xi[k].imag() * f);
    p = p * zz + ck;
    s = s * az + std::abs(ck);
  }
  return static_cast<double>(std::abs(p) / s);
}

double fraction_inside(const PointConfiguration& c, double r) {
  std::size_t k = 0;
  for (const auto& z : c.points()) k += std::abs(z) <= r;
  return static_cast<double>(k) / static_cast<double>(c.size());
}

}  // namespace

TEST(Ginibre, OneByOneMoment) {
  Rng rng(1);
  double acc = 0.0;
  for (int i = 0; i < 10000; ++i) acc += std::norm(sample_ginibre_matrix(1, rng)[0]);
  EXPECT_NEAR(acc / 10000, 1.0, 0.05);
}

TEST(Ginibre, CircularLaw) {
  Rng rng(2);
  double acc = 0.0;
  std::vector<double> angles;
  for (int i = 0; i < 50; ++i) {
    const auto c = sample_ginibre_matrix(400, rng);
    ASSERT_EQ(c.size(), 400u);
    acc += fraction_inside(c, 0.5);
    for (const auto& z : c.points()) angles.push_back(std::arg(z));
  }
  EXPECT_NEAR(acc / 50, 0.25, 0.02);
  EXPECT_GT(stats::angle_uniformity_p(angles), 0.01);
}

TEST(Ginibre, RejectsBadSize) {
  Rng rng(0);
  EXPECT_THROW(sample_ginibre_matrix(0, rng), DomainError);
  EXPECT_THROW(sample_ginibre_matrix(2001, rng), DomainError);
}

TEST(Kostlan, ExponentialFirstRadius) {
  Rng rng(3);
  double acc = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double r = sample_ginibre_radii(1, rng)[0];
    acc += r * r;
  }
  EXPECT_NEAR(acc / 1e5, 1.0, 0.03);
}

TEST(Kostlan, ExpectedCountIdentity) {
  double oracle = 0.0;
  for (int k = 1; k <= 25; ++k) oracle += boost::math::gamma_p(k, 9.0);
  // The truncated sum misses P[Gamma_k <= 9] for k > 25 (about 4e-6).
  double full = oracle;
  for (int k = 26; k <= 200; ++k) full += boost::math::gamma_p(k, 9.0);
  EXPECT_NEAR(full, 9.0, 1e-12);
  EXPECT_NEAR(oracle, 9.0, 1e-5);
  Rng rng(4);
  double acc = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i)
    for (double r : sample_ginibre_radii(25, rng)) acc += r <= 3.0;
  EXPECT_NEAR(acc / reps, oracle, 0.05);
}

TEST(Kostlan, StochasticallyIncreasing) {
  Rng rng(5);
  std::vector<double> mean(10, 0.0);
  for (int i = 0; i < 5000; ++i) {
    const auto r = sample_ginibre_radii(10, rng);
    for (int k = 0; k < 10; ++k) mean[k] += r[k];
  }
  for (int k = 0; k + 1 < 10; ++k) EXPECT_LT(mean[k], mean[k + 1]);
}

TEST(Kostlan, MatchesMatrixRadii) {
  Rng rng(6);
  std::vector<double> a, b;
  const std::size_t n = 200;
  for (int rep = 0; rep < 20; ++rep) {
    const auto c = sample_ginibre_matrix(n, rng);
    for (const auto& z : c.points()) a.push_back(std::abs(z) * std::sqrt(double(n)));
    for (double r : sample_ginibre_radii(n, rng)) b.push_back(r);
  }
  EXPECT_GT(stats::ks_two_sample(a, b).p_value, 0.001);
}

TEST(Gue, SingleEntry) {
  Rng rng(7);
  std::vector<double> x;
  for (int i = 0; i < 20000; ++i) x.push_back(sample_gue(1, rng)[0]);
  const double sd = std::sqrt(0.5);
  auto cdf = [&](double v) { return 0.5 * std::erfc(-v / (sd * std::sqrt(2.0))); };
  EXPECT_GT(stats::ks_one_sample(x, cdf).p_value, 0.001);
}

TEST(Gue, SemicircleBulk) {
  Rng rng(8);
  // Oracle: midpoint rule on the semicircle density.
  double oracle = 0.0;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const double x = -0.5 + (i + 0.5) / m;
    oracle += std::sqrt(2.0 - x * x) / kPi / m;
  }
  double frac = 0.0, mean = 0.0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    const auto ev = sample_gue(500, rng);
    ASSERT_EQ(ev.size(), 500u);
    for (double x : ev) {
      frac += std::abs(x) <= 0.5;
      mean += x;
    }
  }
  EXPECT_NEAR(frac / (500.0 * reps), oracle, 0.02);
  // Mean of 10^4 eigenvalues; sd of the trace is about 1/sqrt(2) per matrix.
  EXPECT_NEAR(mean / (500.0 * reps), 0.0, 3.0 * std::sqrt(0.5 / reps) / 500.0 + 1e-3);
}

TEST(Weyl, UniformDiskFraction) {
  Rng rng(9);
  double acc = 0.0;
  std::vector<double> angles;
  for (int i = 0; i < 20; ++i) {
    const auto c = sample_weyl_zeros(400, rng);
    ASSERT_EQ(c.size(), 400u);
    EXPECT_FALSE(c.degraded) << c.max_residual;
    acc += fraction_inside(c, 0.5);
    for (const auto& z : c.points()) angles.push_back(std::arg(z));
  }
  EXPECT_NEAR(acc / 20, 0.25, 0.03);
  EXPECT_GT(stats::angle_uniformity_p(angles), 0.01);
}

TEST(Weyl, ResidualsAgainstExtendedPrecision) {
  Rng rng(10);
  Rng copy = rng;
  const auto c = sample_weyl_zeros(100, rng);
  const auto coef = sample_gef_coefficients(100, copy);
  ASSERT_EQ(c.size(), 100u);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, residual_oracle(coef, c.unscaled(i)));
  EXPECT_LE(worst, 1e-8);
  EXPECT_LE(c.max_residual, 1e-8);
}

TEST(Weyl, ConjugationSymmetryInLaw) {
  Rng rng(11);
  std::vector<double> up, down;
  for (int i = 0; i < 30; ++i) {
    const auto x = sample_weyl_zeros(60, rng);
    for (const auto& z : x.points()) {
      up.push_back(z.imag());
      down.push_back(-z.imag());
    }
  }
  EXPECT_GT(stats::ks_two_sample(up, down).p_value, 0.001);
}

TEST(Weyl, Deterministic) {
  Rng a(99), b(99);
  const auto x = sample_weyl_zeros(50, a);
  const auto y = sample_weyl_zeros(50, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], y[i]);
  Rng c(5), d(5);
  const auto g1 = sample_ginibre_matrix(30, c);
  const auto g2 = sample_ginibre_matrix(30, d);
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_EQ(g1[i], g2[i]);
}

TEST(Gef, ExpectedCountInDisk) {
  Rng rng(12);
  const double R = 5.0, alpha = gef_alpha_min(R);
  double acc = 0.0, small = 0.0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) {
    const auto c = sample_gef_zeros(R, alpha, rng);
    EXPECT_FALSE(c.degraded);
    for (std::size_t j = 0; j < c.size(); ++j) {
      acc += std::abs(c.unscaled(j)) < 5.0;
      small += std::abs(c.unscaled(j)) < 0.05;
    }
  }
  EXPECT_NEAR(acc / reps, 25.0, 0.75);
  EXPECT_LT(small / reps, 0.02);
}

TEST(Gef, AgreesWithWeylUnderIdentification) {
  Rng rng(13);
  const double R = 4.0, alpha = gef_alpha_min(R);
  const auto n = static_cast<std::size_t>(std::floor(alpha * R * R));
  const double keep = 0.9 * std::sqrt(alpha) * R;
  std::vector<double> a, b;
  for (int i = 0; i < 40; ++i) {
    const auto g = sample_gef_zeros(R, alpha, rng);
    for (std::size_t j = 0; j < g.size(); ++j) a.push_back(std::abs(g.unscaled(j)));
    const auto w = sample_weyl_zeros(n, rng);
    for (std::size_t j = 0; j < w.size(); ++j)
      if (std::abs(w.unscaled(j)) <= keep) b.push_back(std::abs(w.unscaled(j)));
  }
  EXPECT_GT(stats::ks_two_sample(a, b).p_value, 0.001);
}

TEST(Gef, TruncationTailBound) {
  for (double R : {5.0, 10.0}) {
    const auto n = static_cast<std::size_t>(std::floor(gef_alpha_min(R) * R * R));
    EXPECT_LT(0.5 * gef_truncation_log_tail(n, std::sqrt(kE) * R), std::log(1e-12)) << R;
  }
  // At small R the formula leaves a visible tail.
  const auto n2 = static_cast<std::size_t>(std::floor(gef_alpha_min(2.0) * 4.0));
  EXPECT_GT(0.5 * gef_truncation_log_tail(n2, std::sqrt(kE) * 2.0), std::log(1e-12));
}

TEST(Gef, RejectsSmallAlpha) {
  Rng rng(0);
  EXPECT_THROW(sample_gef_zeros(5.0, 4.0, rng), DomainError);
}

TEST(Smoothed, TwoSeparatedPoints) {
  const double d = 1.0, t = 0.1;
  PointConfiguration c({{0.0, 0.0}, {d, 0.0}}, 1.0, "x");
  const auto s = smoothed_config_stats(c, t);
  EXPECT_NEAR(s.smoothed_energy, 0.5 * std::log(d) + 0.5 * std::log(t), 1e-14);
  EXPECT_NEAR(s.pair_energy, 0.5 * std::log(d), 1e-15);
}

TEST(Smoothed, CirclePairEnergyOracle) {
  const double t = 0.3;
  for (double d : {0.0, 0.1, 0.3, 0.5, 0.59}) {
    const int m = 1500;
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Point x = std::polar(t, 2 * kPi * (i + 0.5) / m);
        const Point y = Point(d, 0) + std::polar(t, 2 * kPi * (j + 0.25) / m);
        acc += std::log(std::abs(x - y));
      }
    EXPECT_NEAR(circle_pair_energy(d, t), acc / (double(m) * m), 2e-3) << d;
  }
}

TEST(Smoothed, ClaimInequalityAndMeanSquare) {
  std::mt19937_64 gen(14);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<Point> pts(20);
    for (auto& z : pts) z = {g(gen), g(gen)};
    PointConfiguration c(pts, 1.0, "x");
    const double t = 0.05;
    const auto s = smoothed_config_stats(c, t);
    EXPECT_LE(s.pair_energy, s.smoothed_energy + 2.0 * std::log(1.0 / t) / 20.0);
    // Trapezoid oracle for the smeared second moment.
    double sq = 0.0;
    for (const auto& z : pts)
      for (int k = 0; k < 64; ++k) sq += std::norm(z + std::polar(t, 2 * kPi * k / 64)) / 64.0;
    EXPECT_NEAR(s.smoothed_mean_sq, sq / 20.0, 1e-12);
    EXPECT_NEAR(s.smoothed_mean_sq - s.mean_sq, t * t, 1e-15);
  }
}

TEST(Smoothed, CoincidentPoints) {
  PointConfiguration c({{0.5, 0.0}, {0.5, 0.0}, {1.0, 1.0}}, 1.0, "x");
  const auto s = smoothed_config_stats(c, 0.1);
  EXPECT_EQ(s.pair_energy, -kInf);
  EXPECT_TRUE(std::isfinite(s.smoothed_energy));
}

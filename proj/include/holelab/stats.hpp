#pragma once

// Goodness-of-fit helpers for the statistical tests: Kolmogorov-Smirnov and
// Pearson chi-square. Boost.Math has no Kolmogorov distribution, so the
// asymptotic series is summed directly.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "holelab/core.hpp"

namespace holelab::stats {

/// P[K > lambda] for the limiting Kolmogorov distribution.
inline double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample test with the Stephens small-sample correction.
inline KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  require(!x.empty() && !y.empty(), "ks_two_sample: empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

/// One-sample test against a continuous CDF.
inline KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  require(!x.empty(), "ks_one_sample: empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double ne = std::sqrt(n);
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

/// Pearson chi-square p-value of observed counts against expected counts.
inline double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected,
                           int constraints = 1) {
  require(observed.size() == expected.size() && observed.size() >= 2, "chi_square_p: bad bins");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    require(expected[i] > 0.0, "chi_square_p: empty expected bin");
    chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  const double dof = static_cast<double>(observed.size()) - constraints;
  return boost::math::gamma_q(0.5 * dof, 0.5 * chi2);
}

/// Chi-square test that angles in [-pi, pi) are uniform.
inline double angle_uniformity_p(const std::vector<double>& angles, int bins = 16) {
  std::vector<double> obs(bins, 0.0), exp(bins, static_cast<double>(angles.size()) / bins);
  for (double a : angles) {
    int b = static_cast<int>(std::floor((a + kPi) / (2.0 * kPi) * bins));
    obs[std::clamp(b, 0, bins - 1)] += 1.0;
  }
  return chi_square_p(obs, exp);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace holelab::stats

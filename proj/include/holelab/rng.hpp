#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "holelab/core.hpp"

namespace holelab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the stream for replica `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ splitmix64(index + 1);
}

/// Random stream. All variates are built from raw 64-bit engine output so that
/// a seed reproduces bit-identical samples regardless of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(splitmix64(seed)) {}

  Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_of_engine(), index)); }

  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    double u;
    do {
      u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double exponential() { return -std::log(uniform()); }

  /// Standard complex Gaussian: E|g|^2 = 1.
  Point complex_normal() {
    const double a = normal(), b = normal();
    return {a * std::sqrt(0.5), b * std::sqrt(0.5)};
  }

  /// Gamma(shape, rate 1). Integer shapes up to 32 are sums of exponentials;
  /// everything else goes through Marsaglia-Tsang.
  double gamma(double shape) {
    require(shape > 0.0, "gamma: shape must be positive");
    if (shape <= 32.0 && shape == std::floor(shape)) {
      double s = 0.0;
      for (int i = 0; i < static_cast<int>(shape); ++i) s += exponential();
      return s;
    }
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Chi variable with `dof` degrees of freedom.
  double chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

 private:
  std::uint64_t seed_of_engine() const {
    std::mt19937_64 copy = engine_;
    return copy();
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace holelab

#pragma once

// Adaptive 1D quadrature on top of Boost.Math, with explicit breakpoints.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "holelab/core.hpp"

namespace holelab::quad {

namespace detail {

// Globally adaptive Gauss-Kronrod with an absolute error target: the interval
// with the largest error estimate is bisected until the summed estimate meets
// the target, the estimate stalls at rounding level, or the budget runs out.
// Boost's own driver uses a relative test, which never terminates early on
// integrands that are close to zero everywhere.
template <class F>
double gk_adaptive(F& f, double a, double b, double tol, std::size_t max_intervals = 2000) {
  struct Piece {
    double lo, hi, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  auto eval = [&](double lo, double hi) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &err);
    return Piece{lo, hi, v, err};
  };
  std::priority_queue<Piece> heap;
  heap.push(eval(a, b));
  double error = heap.top().error;
  while (error > tol && heap.size() < max_intervals) {
    const Piece worst = heap.top();
    const double m = 0.5 * (worst.lo + worst.hi);
    if (!(m > worst.lo && m < worst.hi)) break;
    if (worst.error <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(worst.value)) break;
    heap.pop();
    const Piece l = eval(worst.lo, m), r = eval(m, worst.hi);
    error += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod on [a, b]. Interior `breaks` are where the
/// integrand (or a derivative) jumps; each smooth piece is integrated
/// separately to absolute tolerance `tol` split over the pieces.
template <class F>
double integrate(F&& f, double a, double b, std::vector<double> breaks = {}, double tol = 1e-12) {
  if (b <= a) return 0.0;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi <= lo) continue;
    total += detail::gk_adaptive(f, lo, hi, tol * (hi - lo) / (b - a));
  }
  return total;
}

/// Double-exponential quadrature for integrands with endpoint singularities.
template <class F>
double integrate_singular(F&& f, double a, double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  return integrator.integrate(f, a, b, tol);
}

/// Golden-section search for the maximum of a unimodal f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol = 1e-13) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace holelab::quad

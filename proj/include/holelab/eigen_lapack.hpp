#pragma once

// Complex non-symmetric eigenvalues through LAPACK: balancing, Hessenberg
// reduction and the shifted-QR iteration (zgebal / zgehrd / zhseqr).

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <lapacke.h>

#include "holelab/core.hpp"

namespace holelab {

/// Eigenvalues of a general complex matrix (destroys nothing: works on a copy).
inline std::vector<Point> general_eigenvalues(Eigen::MatrixXcd a) {
  const auto n = static_cast<lapack_int>(a.rows());
  std::vector<Point> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
                    reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalError("eigenvalues: QR iteration did not converge (zgeev info " + std::to_string(info) + ")");
  return w;
}

/// Eigenvalues of an upper Hessenberg matrix after balancing.
inline std::vector<Point> hessenberg_eigenvalues(Eigen::MatrixXcd h) {
  const auto n = static_cast<lapack_int>(h.rows());
  auto* data = reinterpret_cast<lapack_complex_double*>(h.data());
  lapack_int ilo = 1, ihi = n;
  std::vector<double> scale(static_cast<std::size_t>(n));
  if (LAPACKE_zgebal(LAPACK_COL_MAJOR, 'B', n, data, n, &ilo, &ihi, scale.data()) != 0)
    throw NumericalError("eigenvalues: balancing failed");
  std::vector<Point> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, ilo, ihi, data, n,
                                         reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1);
  if (info != 0) throw NumericalError("eigenvalues: QR iteration did not converge (zhseqr info " + std::to_string(info) + ")");
  return w;
}

}  // namespace holelab

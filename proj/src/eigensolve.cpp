// SPDX-License-Identifier: Apache-2.0

#include "phonband/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "phonband/errors.hpp"

namespace phonband {
namespace {

// Eigenvalues (ascending) of the Hermitian matrix held in a; a is overwritten,
// with the eigenvectors when requested.
Eigen::VectorXd heev(Eigen::MatrixXcd& a, bool vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n,
                                        a.data(), n, w.data());
  if (info != 0) throw NumericError("eigensolve: Hermitian eigenvalue iteration failed");
  return w;
}

bool is_diagonal(const Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

// Snap eigenvalues within round-off of zero to exactly zero so rigid-body
// modes report omega == 0; anything clearly negative means the pencil lost
// positive semidefiniteness. The snap band must stay well below the smallest
// physical eigenvalue (which can reach ~1e-9 of the pencil scale for the
// first branch next to the zone center) while staying above the solver's
// round-off floor for rigid modes (~1e-13 of the scale).
void clamp_nonnegative(Eigen::VectorXd& lam) {
  const double scale = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  const double tol_neg = 1e-8 * scale;
  const double tol_zero = 1e-11 * scale;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol_neg)
      throw NumericError("eigensolve: negative eigenvalue beyond tolerance; "
                         "the assembled pencil is not positive semidefinite");
    if (lam(i) <= tol_zero) lam(i) = 0.0;
  }
}

struct StandardForm {
  Eigen::VectorXd lambdas;   // ascending, clamped
  Eigen::MatrixXcd vectors;  // pencil eigenvectors (when requested)
};

StandardForm solve(const ReducedSystem& red, GevpPath path, bool want_vectors) {
  Eigen::MatrixXcd k = 0.5 * (red.stiffness + red.stiffness.adjoint());
  Eigen::MatrixXcd m = 0.5 * (red.mass + red.mass.adjoint());
  if (k.rows() != m.rows() || k.rows() != k.cols())
    throw NumericError("eigensolve: dimension mismatch");
  if (path == GevpPath::Auto)
    path = red.mass_diagonal ? GevpPath::DiagonalScaling : GevpPath::Cholesky;

  StandardForm out;
  if (path == GevpPath::DiagonalScaling) {
    if (!is_diagonal(m))
      throw NumericError("eigensolve: diagonal-scaling path requires a diagonal mass matrix");
    Eigen::VectorXd d = m.diagonal().real();
    if (d.minCoeff() <= 0.0)
      throw NumericError("eigensolve: mass matrix is not positive definite");
    const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXcd a = s.asDiagonal() * k * s.asDiagonal();
    a = 0.5 * (a + a.adjoint()).eval();
    out.lambdas = heev(a, want_vectors);
    if (want_vectors) out.vectors = s.asDiagonal() * a;
  } else {
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
      throw NumericError("eigensolve: mass matrix is not positive definite");
    const auto l = llt.matrixL();
    Eigen::MatrixXcd y = l.solve(k);                     // L^{-1} K
    Eigen::MatrixXcd a = l.solve(y.adjoint()).adjoint();  // L^{-1} K L^{-H}
    a = 0.5 * (a + a.adjoint()).eval();
    out.lambdas = heev(a, want_vectors);
    if (want_vectors) {
      out.vectors = a;
      llt.matrixU().solveInPlace(out.vectors);  // v = L^{-H} y
    }
  }
  clamp_nonnegative(out.lambdas);
  return out;
}

}  // namespace

ModalSet solve_gevp(const ReducedSystem& red, const WaveVector& k, int n_modes, GevpPath path) {
  if (n_modes < 1) throw ConfigError("solve_gevp: n_modes must be >= 1");
  StandardForm sf = solve(red, path, false);
  const int count = std::min<int>(n_modes, static_cast<int>(sf.lambdas.size()));
  ModalSet modes{k, {}};
  modes.omegas.resize(count);
  for (int i = 0; i < count; ++i) modes.omegas[i] = std::sqrt(sf.lambdas(i));
  return modes;
}

GevpSolution solve_gevp_full(const ReducedSystem& red, GevpPath path) {
  StandardForm sf = solve(red, path, true);
  return {sf.lambdas, sf.vectors};
}

}  // namespace phonband

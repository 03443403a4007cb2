// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_EIGENSOLVE_HPP_
#define PHONBAND_EIGENSOLVE_HPP_

#include <vector>

#include <Eigen/Dense>

#include "phonband/bloch.hpp"

namespace phonband {

// Ascending angular frequencies at one wave vector.
struct ModalSet {
  WaveVector k;
  std::vector<double> omegas;  // rad/s
};

// Reduction of the generalized problem to a standard Hermitian one: via
// M^{-1/2} scaling when the mass is diagonal, else via Cholesky M = L L^H.
enum class GevpPath { Auto, DiagonalScaling, Cholesky };

ModalSet solve_gevp(const ReducedSystem& red, const WaveVector& k, int n_modes,
                    GevpPath path = GevpPath::Auto);

// Full spectrum with eigenvectors of the original pencil (K v = lambda M v),
// for residual verification. eigenvalues holds the clamped lambda = omega^2.
struct GevpSolution {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // column i pairs with eigenvalues(i)
};

GevpSolution solve_gevp_full(const ReducedSystem& red, GevpPath path = GevpPath::Auto);

}  // namespace phonband

#endif  // PHONBAND_EIGENSOLVE_HPP_

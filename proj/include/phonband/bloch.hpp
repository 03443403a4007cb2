// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_BLOCH_HPP_
#define PHONBAND_BLOCH_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "phonband/assembly.hpp"
#include "phonband/cellmesh.hpp"

namespace phonband {

struct WaveVector {
  double k_x = 0.0;  // rad/m
  double k_y = 0.0;
};

// Periodicity transform T mapping the reduced basis {left, bottom, lb corner,
// interior} to all DOFs. Every full DOF carries exactly one unit-modulus
// coefficient, stored sparsely as (reduced column, phase).
struct BlochTransform {
  int n_full = 0;
  int n_reduced = 0;
  double psi_x = 0.0;  // phase shift 2*k_x*d_a
  double psi_y = 0.0;  // phase shift 2*k_y*d_b
  std::vector<int> reduced_col;             // per full DOF
  std::vector<std::complex<double>> phase;  // per full DOF

  Eigen::MatrixXcd matrix() const;  // dense T, intended for small-scale checks
};

BlochTransform build_transform(const DofPartition& part, const Mesh& mesh, const WaveVector& k);

struct ReducedSystem {
  Eigen::MatrixXcd stiffness;  // T^H K T
  Eigen::MatrixXcd mass;       // T^H M T
  bool mass_diagonal = false;
};

ReducedSystem reduce(const SystemMatrices& sys, const BlochTransform& t);

}  // namespace phonband

#endif  // PHONBAND_BLOCH_HPP_

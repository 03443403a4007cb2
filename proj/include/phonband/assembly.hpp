// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_ASSEMBLY_HPP_
#define PHONBAND_ASSEMBLY_HPP_

#include <Eigen/Dense>

#include "phonband/cellmesh.hpp"
#include "phonband/elasticity.hpp"

namespace phonband {

// Element pair (Ke, Me) in local DOF order: all u_x (nodes lex (y, x)), then all u_y.
struct ElementMatrices {
  Eigen::MatrixXd stiffness;
  Eigen::MatrixXd mass;
};

ElementMatrices element_matrices(double hx, double hy, const ElementSpec& spec,
                                 const Material& mat);

// Assembled real symmetric pair. mass_diagonal marks a mass matrix whose
// off-diagonal entries are identically zero (spectral elements or lumping).
struct SystemMatrices {
  Eigen::MatrixXd stiffness;  // N/m
  Eigen::MatrixXd mass;       // kg
  bool mass_diagonal = false;
};

SystemMatrices assemble(const Mesh& mesh);

// Diagonal-scaling normalization: per displacement-component block (each
// block's diagonal sums to the element mass) or over the full element trace.
enum class LumpNorm { PerBlock, FullTrace };

SystemMatrices lump(const SystemMatrices& sys, const Mesh& mesh,
                    LumpNorm norm = LumpNorm::PerBlock);

}  // namespace phonband

#endif  // PHONBAND_ASSEMBLY_HPP_

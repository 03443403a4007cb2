// SPDX-License-Identifier: Apache-2.0

#include "phonband/bloch.hpp"

#include <cmath>

#include "phonband/errors.hpp"

namespace phonband {

Eigen::MatrixXcd BlochTransform::matrix() const {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n_full, n_reduced);
  for (int i = 0; i < n_full; ++i) t(i, reduced_col[i]) = phase[i];
  return t;
}

BlochTransform build_transform(const DofPartition& part, const Mesh& mesh, const WaveVector& k) {
  if (part.num_nodes() != mesh.num_nodes())
    throw NumericError("build_transform: partition does not cover the mesh nodes");
  const int nn = mesh.num_nodes();
  const int n_l = static_cast<int>(part.left.size());
  const int n_b = static_cast<int>(part.bottom.size());
  const int n_i = static_cast<int>(part.interior.size());
  const int rn = n_l + n_b + 1 + n_i;  // reduced node count

  BlochTransform t;
  t.n_full = 2 * nn;
  t.n_reduced = 2 * rn;
  t.psi_x = 2.0 * k.k_x * mesh.half_width;
  t.psi_y = 2.0 * k.k_y * mesh.half_height;
  const std::complex<double> px = std::polar(1.0, t.psi_x);
  const std::complex<double> py = std::polar(1.0, t.psi_y);
  const std::complex<double> pxy = std::polar(1.0, t.psi_x + t.psi_y);

  // per-node reduced index and phase; reduced node order: left, bottom, lb, interior
  std::vector<int> rnode(nn, -1);
  std::vector<std::complex<double>> pnode(nn);
  auto place = [&](int node, int idx, std::complex<double> p) {
    rnode[node] = idx;
    pnode[node] = p;
  };
  for (int i = 0; i < n_l; ++i) {
    place(part.left[i], i, 1.0);
    place(part.right[i], i, px);
  }
  for (int i = 0; i < n_b; ++i) {
    place(part.bottom[i], n_l + i, 1.0);
    place(part.top[i], n_l + i, py);
  }
  const int corner = n_l + n_b;
  place(part.corner_lb, corner, 1.0);
  place(part.corner_rb, corner, px);
  place(part.corner_lt, corner, py);
  place(part.corner_rt, corner, pxy);
  for (int i = 0; i < n_i; ++i) place(part.interior[i], corner + 1 + i, 1.0);

  t.reduced_col.resize(t.n_full);
  t.phase.resize(t.n_full);
  for (int n = 0; n < nn; ++n) {
    if (rnode[n] < 0) throw NumericError("build_transform: node missing from partition");
    t.reduced_col[mesh.dof_x(n)] = rnode[n];
    t.phase[mesh.dof_x(n)] = pnode[n];
    t.reduced_col[mesh.dof_y(n)] = rn + rnode[n];
    t.phase[mesh.dof_y(n)] = pnode[n];
  }
  return t;
}

ReducedSystem reduce(const SystemMatrices& sys, const BlochTransform& t) {
  if (sys.stiffness.rows() != t.n_full)
    throw NumericError("reduce: system size does not match the transform");
  ReducedSystem red;
  red.stiffness = Eigen::MatrixXcd::Zero(t.n_reduced, t.n_reduced);
  red.mass = Eigen::MatrixXcd::Zero(t.n_reduced, t.n_reduced);
  red.mass_diagonal = sys.mass_diagonal;
  for (int i = 0; i < t.n_full; ++i) {
    const int ci = t.reduced_col[i];
    const std::complex<double> pi = std::conj(t.phase[i]);
    for (int j = 0; j < t.n_full; ++j) {
      const std::complex<double> w = pi * t.phase[j];
      red.stiffness(ci, t.reduced_col[j]) += w * sys.stiffness(i, j);
      if (!sys.mass_diagonal) red.mass(ci, t.reduced_col[j]) += w * sys.mass(i, j);
    }
    if (sys.mass_diagonal) red.mass(ci, ci) += sys.mass(i, i);
  }
  return red;
}

}  // namespace phonband

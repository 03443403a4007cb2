// SPDX-License-Identifier: Apache-2.0

#include "phonband/assembly.hpp"

#include <cmath>
#include <vector>

#include "phonband/errors.hpp"

namespace phonband {
namespace {

// 1D shape values and derivatives of every nodal function at every quadrature point.
struct Tables1d {
  Eigen::MatrixXd value;  // (nq, nps)
  Eigen::MatrixXd deriv;
};

Tables1d tabulate(const ElementSpec& spec) {
  const int nq = spec.quadrature.num_points();
  const int nps = spec.nodes_per_side();
  Tables1d t{Eigen::MatrixXd(nq, nps), Eigen::MatrixXd(nq, nps)};
  for (int q = 0; q < nq; ++q) {
    const double x = spec.quadrature.points[q];
    for (int j = 0; j < nps; ++j) {
      t.value(q, j) = lagrange_eval(spec.nodal, j, x);
      t.deriv(q, j) = lagrange_deriv(spec.nodal, j, x);
    }
  }
  return t;
}

// Element mass computed alongside lumping so the element loop is shared.
void lump_element(const Eigen::MatrixXd& me, double element_mass, LumpNorm norm,
                  Eigen::VectorXd& out) {
  const int n = static_cast<int>(me.rows()) / 2;
  out.resize(2 * n);
  if (norm == LumpNorm::FullTrace) {
    const double tr = me.trace();
    if (tr <= 0.0) throw NumericError("lump: nonpositive element mass trace");
    const double scale = 2.0 * element_mass / tr;
    out = scale * me.diagonal();
    return;
  }
  for (int block = 0; block < 2; ++block) {
    const double tr = me.diagonal().segment(block * n, n).sum();
    if (tr <= 0.0) throw NumericError("lump: nonpositive element mass block trace");
    const double scale = element_mass / tr;
    out.segment(block * n, n) = scale * me.diagonal().segment(block * n, n);
  }
}

}  // namespace

ElementMatrices element_matrices(double hx, double hy, const ElementSpec& spec,
                                 const Material& mat) {
  if (!(hx > 0.0) || !(hy > 0.0))
    throw NumericError("element_matrices: degenerate element geometry");
  validate(mat);
  const Eigen::Matrix3d d = constitutive(mat);
  const Tables1d t = tabulate(spec);
  const int nps = spec.nodes_per_side();
  const int nn = nps * nps;
  const int nq = spec.quadrature.num_points();
  const double jx = 0.5 * hx;  // dx/dxi
  const double jy = 0.5 * hy;

  ElementMatrices em{Eigen::MatrixXd::Zero(2 * nn, 2 * nn), Eigen::MatrixXd::Zero(2 * nn, 2 * nn)};
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 2 * nn);
  Eigen::VectorXd shape(nn), ddx(nn), ddy(nn);
  for (int qy = 0; qy < nq; ++qy) {
    for (int qx = 0; qx < nq; ++qx) {
      const double w = spec.quadrature.weights[qx] * spec.quadrature.weights[qy] * jx * jy;
      for (int ay = 0; ay < nps; ++ay) {
        for (int ax = 0; ax < nps; ++ax) {
          const int a = ay * nps + ax;
          shape(a) = t.value(qx, ax) * t.value(qy, ay);
          ddx(a) = t.deriv(qx, ax) * t.value(qy, ay) / jx;
          ddy(a) = t.value(qx, ax) * t.deriv(qy, ay) / jy;
        }
      }
      for (int a = 0; a < nn; ++a) {
        b(0, a) = ddx(a);
        b(2, a) = ddy(a);
        b(1, nn + a) = ddy(a);
        b(2, nn + a) = ddx(a);
      }
      em.stiffness.noalias() += w * b.transpose() * d * b;
      const double wm = w * mat.density;
      em.mass.topLeftCorner(nn, nn).noalias() += wm * shape * shape.transpose();
      em.mass.bottomRightCorner(nn, nn).noalias() += wm * shape * shape.transpose();
    }
  }
  em.stiffness = 0.5 * (em.stiffness + em.stiffness.transpose()).eval();
  em.mass = 0.5 * (em.mass + em.mass.transpose()).eval();
  return em;
}

SystemMatrices assemble(const Mesh& mesh) {
  const int n = mesh.num_dofs();
  SystemMatrices sys{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
                     mesh.spec.is_spectral()};
  const int en = mesh.spec.nodes_per_element();
  for (const auto& el : mesh.elements) {
    if (!el.active) continue;
    const ElementMatrices em =
        element_matrices(el.x1 - el.x0, el.y1 - el.y0, mesh.spec, mesh.materials[el.material]);
    // local DOF a (u_x) and en + a (u_y) scatter to global node el.nodes[a]
    std::vector<int> gdof(2 * en);
    for (int a = 0; a < en; ++a) {
      gdof[a] = mesh.dof_x(el.nodes[a]);
      gdof[en + a] = mesh.dof_y(el.nodes[a]);
    }
    for (int i = 0; i < 2 * en; ++i) {
      for (int j = 0; j < 2 * en; ++j) {
        sys.stiffness(gdof[i], gdof[j]) += em.stiffness(i, j);
        sys.mass(gdof[i], gdof[j]) += em.mass(i, j);
      }
    }
  }
  return sys;
}

SystemMatrices lump(const SystemMatrices& sys, const Mesh& mesh, LumpNorm norm) {
  const int n = mesh.num_dofs();
  if (sys.mass.rows() != n)
    throw NumericError("lump: mass matrix size does not match the mesh");
  // an already-diagonal mass is a fixed point of diagonal scaling
  if (sys.mass_diagonal) return sys;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  const int en = mesh.spec.nodes_per_element();
  Eigen::VectorXd local;
  for (const auto& el : mesh.elements) {
    if (!el.active) continue;
    const double hx = el.x1 - el.x0;
    const double hy = el.y1 - el.y0;
    const Material& mat = mesh.materials[el.material];
    const ElementMatrices em = element_matrices(hx, hy, mesh.spec, mat);
    lump_element(em.mass, mat.density * hx * hy, norm, local);
    for (int a = 0; a < en; ++a) {
      diag(mesh.dof_x(el.nodes[a])) += local(a);
      diag(mesh.dof_y(el.nodes[a])) += local(en + a);
    }
  }
  SystemMatrices out{sys.stiffness, Eigen::MatrixXd(diag.asDiagonal()), true};
  return out;
}

}  // namespace phonband

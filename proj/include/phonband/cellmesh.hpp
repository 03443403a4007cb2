// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_CELLMESH_HPP_
#define PHONBAND_CELLMESH_HPP_

#include <variant>
#include <vector>

#include "phonband/basis.hpp"
#include "phonband/elasticity.hpp"

namespace phonband {

// Unit-cell layouts. The cell occupies [-d_a, d_a] x [-d_b, d_b].
struct Homogeneous {
  Material material;
};

struct Bilayer {
  Material bottom;
  Material top;
};

struct MatrixInclusion {
  Material matrix;
  Material inclusion;
  double side_fraction = 0.5;  // inclusion is a centered square of side 2*d_a*side_fraction
};

struct MatrixPore {
  Material matrix;
  double side_fraction = 0.5;  // pore is a centered square of side 2*d_a*side_fraction
};

using CellLayout = std::variant<Homogeneous, Bilayer, MatrixInclusion, MatrixPore>;

struct UnitCell {
  double half_width = 1.0;   // d_a (m)
  double half_height = 1.0;  // d_b (m)
  CellLayout layout = Homogeneous{};
};

// One axis-aligned rectangular element of the structured grid.
struct ElementRecord {
  int ix = 0;  // column in the element grid
  int iy = 0;  // row in the element grid
  double x0 = 0.0, x1 = 0.0;  // horizontal extent
  double y0 = 0.0, y1 = 0.0;  // vertical extent
  int material = -1;          // index into Mesh::materials; -1 when inactive
  bool active = true;
  std::vector<int> nodes;  // active-node ids, local lexicographic (y, x); empty when inactive
};

// Structured conforming mesh over the unit cell. Nodes belonging only to
// inactive (pore) elements are dropped; remaining nodes are numbered in
// lexicographic (y, x) order. DOF ordering: all u_x first, then all u_y.
struct Mesh {
  double half_width = 1.0;
  double half_height = 1.0;
  ElementSpec spec;
  int nx = 0;
  int ny = 0;
  std::vector<Material> materials;
  std::vector<double> node_x;  // per active node (m)
  std::vector<double> node_y;
  std::vector<ElementRecord> elements;  // all nx*ny records, row-major (iy, ix)

  int num_nodes() const { return static_cast<int>(node_x.size()); }
  int num_dofs() const { return 2 * num_nodes(); }
  int dof_x(int node) const { return node; }
  int dof_y(int node) const { return num_nodes() + node; }
};

Mesh build_mesh(const UnitCell& cell, int nx, int ny, const ElementSpec& spec);

// Nine disjoint node sets of the periodic cell boundary taxonomy. Boundary
// lists are coordinate-sorted so that left[i]/right[i] share y and
// bottom[i]/top[i] share x within the pairing tolerance.
struct DofPartition {
  std::vector<int> left;      // x = -d_a, corners excluded
  std::vector<int> right;     // x = +d_a, corners excluded
  std::vector<int> bottom;    // y = -d_b, corners excluded
  std::vector<int> top;       // y = +d_b, corners excluded
  int corner_lb = -1;
  int corner_rb = -1;
  int corner_lt = -1;
  int corner_rt = -1;
  std::vector<int> interior;

  int num_nodes() const {
    return static_cast<int>(left.size() + right.size() + bottom.size() + top.size() +
                            interior.size()) +
           4;
  }
};

DofPartition classify_dofs(const Mesh& mesh);

}  // namespace phonband

#endif  // PHONBAND_CELLMESH_HPP_

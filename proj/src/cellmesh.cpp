// SPDX-License-Identifier: Apache-2.0

#include "phonband/cellmesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "phonband/errors.hpp"

namespace phonband {
namespace {

// Gridline e of n spanning [-half, half]; exact at both ends.
double gridline(int e, int n, double half) { return half * (2.0 * e / n - 1.0); }

// 1D nodal coordinates of the structured grid along one axis: n elements of
// degree M give n*M+1 columns. Endpoint reference nodes map exactly onto the
// gridlines so shared nodes coincide bitwise.
std::vector<double> axis_nodes(int n, double half, const NodalSet& nodal) {
  const int m = nodal.order;
  std::vector<double> out(static_cast<std::size_t>(n) * m + 1);
  for (int e = 0; e < n; ++e) {
    const double a = gridline(e, n, half);
    const double b = gridline(e + 1, n, half);
    for (int j = 0; j <= m; ++j) {
      double x;
      if (j == 0) {
        x = a;
      } else if (j == m) {
        x = b;
      } else {
        x = 0.5 * (a + b) + 0.5 * nodal.coords[j] * (b - a);
      }
      out[static_cast<std::size_t>(e) * m + j] = x;
    }
  }
  return out;
}

struct ElementFill {
  int material = -1;
  bool active = true;
};

// Overlap of [a0,a1] with [b0,b1].
double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

// Assign a material (or inactive flag) to the element [x0,x1]x[y0,y1] for a
// centered square obstacle of half-side h: fully outside -> matrix, fully
// inside -> obstacle, partial overlap -> misaligned discretization.
ElementFill square_fill(double x0, double x1, double y0, double y1, double h, int matrix_id,
                        int obstacle_id, bool pore) {
  const double area = (x1 - x0) * (y1 - y0);
  const double inter = overlap(x0, x1, -h, h) * overlap(y0, y1, -h, h);
  const double tol = 1e-12 * area;
  if (inter <= tol) return {matrix_id, true};
  if (inter >= area - tol) return pore ? ElementFill{-1, false} : ElementFill{obstacle_id, true};
  throw ConfigError(
      "build_mesh: inclusion/pore boundary does not fall on element boundaries; "
      "choose nx, ny so that side_fraction*nx/2 and the matching vertical count are integers");
}

}  // namespace

Mesh build_mesh(const UnitCell& cell, int nx, int ny, const ElementSpec& spec) {
  if (cell.half_width <= 0.0 || cell.half_height <= 0.0)
    throw ConfigError("build_mesh: cell half-sizes must be positive");
  if (nx < 1 || ny < 1) throw ConfigError("build_mesh: nx and ny must be >= 1");
  const bool classical =
      spec.nodal.family == NodalFamily::Equispaced && spec.quadrature.kind == QuadratureKind::GaussLegendre;
  const bool spectral =
      spec.nodal.family == NodalFamily::Lobatto && spec.quadrature.kind == QuadratureKind::GaussLobatto;
  if (!classical && !spectral)
    throw ConfigError(
        "build_mesh: element must pair equispaced nodes with Gauss-Legendre quadrature "
        "(classical) or Lobatto nodes with Gauss-Lobatto quadrature (spectral)");

  Mesh mesh;
  mesh.half_width = cell.half_width;
  mesh.half_height = cell.half_height;
  mesh.spec = spec;
  mesh.nx = nx;
  mesh.ny = ny;

  // Per-element material assignment.
  std::vector<ElementFill> fill(static_cast<std::size_t>(nx) * ny);
  const double da = cell.half_width;
  const double db = cell.half_height;
  if (const auto* homo = std::get_if<Homogeneous>(&cell.layout)) {
    validate(homo->material);
    mesh.materials = {homo->material};
    for (auto& f : fill) f = {0, true};
  } else if (const auto* bi = std::get_if<Bilayer>(&cell.layout)) {
    validate(bi->bottom);
    validate(bi->top);
    if (ny % 2 != 0)
      throw ConfigError(
          "build_mesh: bilayer requires even ny so the material interface falls on an "
          "element boundary");
    mesh.materials = {bi->bottom, bi->top};
    for (int iy = 0; iy < ny; ++iy) {
      const double yc = 0.5 * (gridline(iy, ny, db) + gridline(iy + 1, ny, db));
      for (int ix = 0; ix < nx; ++ix) fill[static_cast<std::size_t>(iy) * nx + ix] = {yc < 0.0 ? 0 : 1, true};
    }
  } else if (const auto* inc = std::get_if<MatrixInclusion>(&cell.layout)) {
    validate(inc->matrix);
    validate(inc->inclusion);
    if (!(inc->side_fraction > 0.0 && inc->side_fraction < 1.0))
      throw ConfigError("build_mesh: side_fraction must lie in (0, 1)");
    const double h = inc->side_fraction * da;
    if (h > db) throw ConfigError("build_mesh: inclusion square does not fit the cell height");
    mesh.materials = {inc->matrix, inc->inclusion};
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        fill[static_cast<std::size_t>(iy) * nx + ix] =
            square_fill(gridline(ix, nx, da), gridline(ix + 1, nx, da), gridline(iy, ny, db),
                        gridline(iy + 1, ny, db), h, 0, 1, false);
  } else {
    const auto& pore = std::get<MatrixPore>(cell.layout);
    validate(pore.matrix);
    if (!(pore.side_fraction > 0.0 && pore.side_fraction < 1.0))
      throw ConfigError("build_mesh: side_fraction must lie in (0, 1)");
    const double h = pore.side_fraction * da;
    if (h > db) throw ConfigError("build_mesh: pore square does not fit the cell height");
    mesh.materials = {pore.matrix};
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        fill[static_cast<std::size_t>(iy) * nx + ix] =
            square_fill(gridline(ix, nx, da), gridline(ix + 1, nx, da), gridline(iy, ny, db),
                        gridline(iy + 1, ny, db), h, 0, -1, true);
  }

  // Structured node grid and active-node compaction (lexicographic (y, x)).
  const int m = spec.order();
  const std::vector<double> xs = axis_nodes(nx, da, spec.nodal);
  const std::vector<double> ys = axis_nodes(ny, db, spec.nodal);
  const int ncols = static_cast<int>(xs.size());
  const int nrows = static_cast<int>(ys.size());
  std::vector<char> touched(static_cast<std::size_t>(ncols) * nrows, 0);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (!fill[static_cast<std::size_t>(iy) * nx + ix].active) continue;
      for (int jy = 0; jy <= m; ++jy)
        for (int jx = 0; jx <= m; ++jx)
          touched[static_cast<std::size_t>(iy * m + jy) * ncols + (ix * m + jx)] = 1;
    }
  }
  std::vector<int> active_id(touched.size(), -1);
  for (int gy = 0; gy < nrows; ++gy) {
    for (int gx = 0; gx < ncols; ++gx) {
      const std::size_t sid = static_cast<std::size_t>(gy) * ncols + gx;
      if (!touched[sid]) continue;
      active_id[sid] = mesh.num_nodes();
      mesh.node_x.push_back(xs[gx]);
      mesh.node_y.push_back(ys[gy]);
    }
  }

  mesh.elements.reserve(fill.size());
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const ElementFill& f = fill[static_cast<std::size_t>(iy) * nx + ix];
      ElementRecord rec;
      rec.ix = ix;
      rec.iy = iy;
      rec.x0 = gridline(ix, nx, da);
      rec.x1 = gridline(ix + 1, nx, da);
      rec.y0 = gridline(iy, ny, db);
      rec.y1 = gridline(iy + 1, ny, db);
      rec.material = f.material;
      rec.active = f.active;
      if (f.active) {
        rec.nodes.resize(static_cast<std::size_t>(m + 1) * (m + 1));
        for (int jy = 0; jy <= m; ++jy)
          for (int jx = 0; jx <= m; ++jx)
            rec.nodes[static_cast<std::size_t>(jy) * (m + 1) + jx] =
                active_id[static_cast<std::size_t>(iy * m + jy) * ncols + (ix * m + jx)];
      }
      mesh.elements.push_back(std::move(rec));
    }
  }
  return mesh;
}

DofPartition classify_dofs(const Mesh& mesh) {
  const double da = mesh.half_width;
  const double db = mesh.half_height;
  const double tol = 1e-10 * std::min(da, db);
  DofPartition part;
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const bool on_l = std::abs(mesh.node_x[n] + da) <= tol;
    const bool on_r = std::abs(mesh.node_x[n] - da) <= tol;
    const bool on_b = std::abs(mesh.node_y[n] + db) <= tol;
    const bool on_t = std::abs(mesh.node_y[n] - db) <= tol;
    if (on_l && on_b)
      part.corner_lb = n;
    else if (on_r && on_b)
      part.corner_rb = n;
    else if (on_l && on_t)
      part.corner_lt = n;
    else if (on_r && on_t)
      part.corner_rt = n;
    else if (on_l)
      part.left.push_back(n);
    else if (on_r)
      part.right.push_back(n);
    else if (on_b)
      part.bottom.push_back(n);
    else if (on_t)
      part.top.push_back(n);
    else
      part.interior.push_back(n);
  }
  if (part.corner_lb < 0 || part.corner_rb < 0 || part.corner_lt < 0 || part.corner_rt < 0)
    throw NumericError("classify_dofs: a cell corner node is missing");

  auto sort_by = [&](std::vector<int>& v, const std::vector<double>& coord) {
    std::sort(v.begin(), v.end(), [&](int a, int b) { return coord[a] < coord[b]; });
  };
  sort_by(part.left, mesh.node_y);
  sort_by(part.right, mesh.node_y);
  sort_by(part.bottom, mesh.node_x);
  sort_by(part.top, mesh.node_x);
  std::sort(part.interior.begin(), part.interior.end());

  auto check_pairs = [&](const std::vector<int>& a, const std::vector<int>& b,
                         const std::vector<double>& coord, const char* what) {
    if (a.size() != b.size())
      throw NumericError(std::string("classify_dofs: unmatched ") + what + " boundary nodes");
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(coord[a[i]] - coord[b[i]]) > tol)
        throw NumericError(std::string("classify_dofs: ") + what +
                           " boundary nodes are not periodically aligned");
  };
  check_pairs(part.left, part.right, mesh.node_y, "left/right");
  check_pairs(part.bottom, part.top, mesh.node_x, "bottom/top");
  return part;
}

}  // namespace phonband

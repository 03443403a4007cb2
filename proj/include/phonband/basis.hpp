// SPDX-License-Identifier: Apache-2.0

#ifndef PHONBAND_BASIS_HPP
#define PHONBAND_BASIS_HPP

#include <functional>
#include <vector>

namespace phonband {

enum class NodalFamily { Equispaced, Chebyshev, Lobatto };
enum class QuadratureKind { GaussLegendre, GaussLobatto };

/// Interpolation nodes on the reference interval [-1, 1].
struct NodalSet {
  NodalFamily family;
  int order;                   // polynomial degree M; coords has M + 1 entries
  std::vector<double> coords;  // strictly increasing

  int num_nodes() const { return static_cast<int>(coords.size()); }
};

/// Integration rule on [-1, 1]. Weights sum to 2.
struct QuadratureRule {
  QuadratureKind kind;
  std::vector<double> points;
  std::vector<double> weights;

  int num_points() const { return static_cast<int>(points.size()); }
};

/// Nodal distribution plus integration rule defining an element family.
/// An "n x n element" has n nodes per side, i.e. polynomial degree n - 1.
struct ElementSpec {
  NodalSet nodal;
  QuadratureRule quadrature;

  int order() const { return nodal.order; }
  int nodes_per_side() const { return nodal.order + 1; }
  int nodes_per_element() const { return nodes_per_side() * nodes_per_side(); }

  // Lobatto nodes collocated with a Gauss-Lobatto rule.
  bool is_spectral() const;
};

// Legendre polynomial P_n and its derivative (three-term recurrences).
double legendre(int n, double x);
double legendre_deriv(int n, double x);

// M + 1 uniformly spaced nodes, degree M >= 1.
NodalSet equispaced_nodes(int degree);

// The n roots of the Chebyshev polynomial T_n, ascending; n >= 2.
NodalSet chebyshev_nodes(int count);

// The M + 1 roots of (1 - x^2) P'_M(x) including the endpoints; M >= 1.
NodalSet lobatto_nodes(int degree);

// Gauss-Lobatto-Legendre rule on the Lobatto nodes of the given degree.
// Exact for polynomials of degree <= 2(M+1) - 3.
QuadratureRule gll_quadrature(int degree);

// n-point Gauss-Legendre rule, exact for degree <= 2n - 1.
QuadratureRule gauss_legendre_quadrature(int points);

// Equispaced nodes with a fully integrating (n-point) Gauss-Legendre rule.
ElementSpec classical_element(int nodes_per_side);

// Lobatto nodes with the matching Gauss-Lobatto rule (diagonal mass).
ElementSpec spectral_element(int nodes_per_side);

// Lagrange cardinal polynomial for node q (0-based) evaluated at x.
double lagrange_eval(const NodalSet& nodal, int q, double x);

// Derivative of the cardinal polynomial, in the sum-of-products form that
// stays finite at the nodes themselves.
double lagrange_deriv(const NodalSet& nodal, int q, double x);

struct Shape2d {
  double value;
  double dx;
  double dy;
};

// Tensor-product shape function for 2D node q = qy * (M+1) + qx at (x, y).
Shape2d shape2d(const ElementSpec& spec, int q, double x, double y);

// Max abs error of degree-M interpolation of f, probed on a uniform grid.
double interpolation_max_error(const NodalSet& nodal,
                               const std::function<double(double)>& f,
                               int probe_points);

}  // namespace phonband

#endif  // PHONBAND_BASIS_HPP

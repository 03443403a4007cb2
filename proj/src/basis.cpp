// SPDX-License-Identifier: Apache-2.0

#include "phonband/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phonband/errors.hpp"

namespace phonband {

namespace {

// All roots of g on (-1, 1), located by sign changes on a cosine-spaced scan
// and refined by bisection down to floating-point resolution.
std::vector<double> bracketed_roots(const std::function<double(double)>& g,
                                    int expected) {
  const int scan = 32 * (expected + 2);
  std::vector<double> roots;
  double xa = -1.0 + 1e-14;
  double ga = g(xa);
  for (int j = 1; j <= scan; ++j) {
    double xb = -std::cos(std::numbers::pi * j / scan);
    if (j == scan) xb = 1.0 - 1e-14;
    double gb = g(xb);
    if (ga == 0.0) {
      roots.push_back(xa);
    } else if (ga * gb < 0.0) {
      double a = xa, b = xb, fa = ga;
      while (true) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        double fm = g(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    xa = xb;
    ga = gb;
  }
  if (static_cast<int>(roots.size()) != expected) {
    throw NumericError("root finder located " + std::to_string(roots.size()) +
                       " of " + std::to_string(expected) + " expected roots");
  }
  return roots;
}

// Enforce exact symmetry about 0 on an ascending node list.
void symmetrize(std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  for (int k = 0; k < n / 2; ++k) {
    const double v = 0.5 * (x[n - 1 - k] - x[k]);
    x[n - 1 - k] = v;
    x[k] = -v;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double pm = 1.0;
  double p = x;
  for (int k = 2; k <= n; ++k) {
    const double pn = ((2 * k - 1) * x * p - (k - 1) * pm) / k;
    pm = p;
    p = pn;
  }
  return p;
}

double legendre_deriv(int n, double x) {
  // P'_k = P'_{k-2} + (2k - 1) P_{k-1}
  if (n == 0) return 0.0;
  double pm = 1.0;
  double p = x;
  double dm = 0.0;
  double d = 1.0;
  for (int k = 2; k <= n; ++k) {
    const double pn = ((2 * k - 1) * x * p - (k - 1) * pm) / k;
    const double dn = dm + (2 * k - 1) * p;
    pm = p;
    p = pn;
    dm = d;
    d = dn;
  }
  return d;
}

NodalSet equispaced_nodes(int degree) {
  if (degree < 1) throw std::invalid_argument("equispaced_nodes: degree must be >= 1");
  std::vector<double> x(degree + 1);
  for (int k = 0; k <= degree; ++k) x[k] = static_cast<double>(2 * k - degree) / degree;
  return {NodalFamily::Equispaced, degree, std::move(x)};
}

NodalSet chebyshev_nodes(int count) {
  if (count < 2) throw std::invalid_argument("chebyshev_nodes: need at least 2 nodes");
  std::vector<double> x(count);
  // x_k = cos((2k - 1) pi / (2n)), mirrored so the set is exactly symmetric
  for (int k = 1; k <= count / 2; ++k) {
    const double v = std::cos((2 * k - 1) * std::numbers::pi / (2 * count));
    x[count - k] = v;
    x[k - 1] = -v;
  }
  if (count % 2 == 1) x[count / 2] = 0.0;
  return {NodalFamily::Chebyshev, count - 1, std::move(x)};
}

NodalSet lobatto_nodes(int degree) {
  if (degree < 1) throw std::invalid_argument("lobatto_nodes: degree must be >= 1");
  std::vector<double> x;
  x.reserve(degree + 1);
  x.push_back(-1.0);
  if (degree > 1) {
    auto interior = bracketed_roots(
        [degree](double t) { return legendre_deriv(degree, t); }, degree - 1);
    x.insert(x.end(), interior.begin(), interior.end());
  }
  x.push_back(1.0);
  symmetrize(x);
  return {NodalFamily::Lobatto, degree, std::move(x)};
}

QuadratureRule gll_quadrature(int degree) {
  NodalSet nodes = lobatto_nodes(degree);
  const int n = nodes.num_nodes();
  std::vector<double> w(n);
  const double c = 2.0 / (degree * (degree + 1.0));
  for (int i = 0; i < n; ++i) {
    const double p = legendre(degree, nodes.coords[i]);
    w[i] = c / (p * p);
  }
  // exact symmetry of the weights
  for (int i = 0; i < n / 2; ++i) w[n - 1 - i] = w[i];
  return {QuadratureKind::GaussLobatto, std::move(nodes.coords), std::move(w)};
}

QuadratureRule gauss_legendre_quadrature(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre_quadrature: need n >= 1");
  std::vector<double> x;
  if (points == 1) {
    x = {0.0};
  } else {
    x = bracketed_roots([points](double t) { return legendre(points, t); }, points);
    symmetrize(x);
  }
  std::vector<double> w(points);
  for (int i = 0; i < points; ++i) {
    const double d = legendre_deriv(points, x[i]);
    w[i] = 2.0 / ((1.0 - x[i] * x[i]) * d * d);
  }
  for (int i = 0; i < points / 2; ++i) w[points - 1 - i] = w[i];
  return {QuadratureKind::GaussLegendre, std::move(x), std::move(w)};
}

ElementSpec classical_element(int nodes_per_side) {
  if (nodes_per_side < 2) {
    throw std::invalid_argument("classical_element: need at least a 2x2 element");
  }
  return {equispaced_nodes(nodes_per_side - 1),
          gauss_legendre_quadrature(nodes_per_side)};
}

ElementSpec spectral_element(int nodes_per_side) {
  if (nodes_per_side < 2) {
    throw std::invalid_argument("spectral_element: need at least a 2x2 element");
  }
  return {lobatto_nodes(nodes_per_side - 1), gll_quadrature(nodes_per_side - 1)};
}

bool ElementSpec::is_spectral() const {
  if (nodal.family != NodalFamily::Lobatto) return false;
  if (quadrature.kind != QuadratureKind::GaussLobatto) return false;
  if (quadrature.num_points() != nodal.num_nodes()) return false;
  for (int i = 0; i < nodal.num_nodes(); ++i) {
    if (std::abs(quadrature.points[i] - nodal.coords[i]) > 1e-12) return false;
  }
  return true;
}

double lagrange_eval(const NodalSet& nodal, int q, double x) {
  const int n = nodal.num_nodes();
  if (q < 0 || q >= n) throw std::invalid_argument("lagrange_eval: node index out of range");
  const auto& xs = nodal.coords;
  double v = 1.0;
  for (int p = 0; p < n; ++p) {
    if (p == q) continue;
    v *= (x - xs[p]) / (xs[q] - xs[p]);
  }
  return v;
}

double lagrange_deriv(const NodalSet& nodal, int q, double x) {
  const int n = nodal.num_nodes();
  if (q < 0 || q >= n) throw std::invalid_argument("lagrange_deriv: node index out of range");
  const auto& xs = nodal.coords;
  double sum = 0.0;
  for (int p = 0; p < n; ++p) {
    if (p == q) continue;
    double term = 1.0 / (xs[q] - xs[p]);
    for (int r = 0; r < n; ++r) {
      if (r == q || r == p) continue;
      term *= (x - xs[r]) / (xs[q] - xs[r]);
    }
    sum += term;
  }
  return sum;
}

Shape2d shape2d(const ElementSpec& spec, int q, double x, double y) {
  const int n = spec.nodes_per_side();
  if (q < 0 || q >= n * n) throw std::invalid_argument("shape2d: node index out of range");
  const int qx = q % n;
  const int qy = q / n;
  const double lx = lagrange_eval(spec.nodal, qx, x);
  const double ly = lagrange_eval(spec.nodal, qy, y);
  const double dlx = lagrange_deriv(spec.nodal, qx, x);
  const double dly = lagrange_deriv(spec.nodal, qy, y);
  return {lx * ly, dlx * ly, lx * dly};
}

double interpolation_max_error(const NodalSet& nodal,
                               const std::function<double(double)>& f,
                               int probe_points) {
  const int n = nodal.num_nodes();
  std::vector<double> fv(n);
  for (int q = 0; q < n; ++q) fv[q] = f(nodal.coords[q]);
  double worst = 0.0;
  for (int j = 0; j < probe_points; ++j) {
    const double x = -1.0 + 2.0 * j / (probe_points - 1);
    double p = 0.0;
    for (int q = 0; q < n; ++q) p += fv[q] * lagrange_eval(nodal, q, x);
    worst = std::max(worst, std::abs(p - f(x)));
  }
  return worst;
}

}  // namespace phonband

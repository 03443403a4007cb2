// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_ANALYTIC_HPP_
#define PHONBAND_ANALYTIC_HPP_

#include <vector>

namespace phonband {

// Folded branch of the homogeneous medium: omega = c*sqrt((k + n*pi/d)^2 + (m*pi/d)^2).
struct FoldedBranchSpec {
  double c = 1.0;  // wave speed (m/s)
  double d = 1.0;  // half cell side (m)
  int n = 0;       // fold index along the swept direction
  int m = 0;       // transverse fold index
};

double folded_homogeneous(const FoldedBranchSpec& spec, double k);

// Rayleigh's relation for a periodic bilayer at perpendicular incidence,
// per decoupled wave family (use shear speeds or longitudinal speeds).
// d is the thickness of each layer, so the cell period is 2d and the reduced
// wave numbers live in [0, pi/(2d)].
struct BilayerSpec {
  double rho1 = 1.0, c1 = 1.0;  // bottom layer density (kg/m^3) and speed (m/s)
  double rho2 = 1.0, c2 = 1.0;  // top layer
  double d = 1.0;               // layer thickness (m)
};

// cos(2dk) = cos(w d/c1) cos(w d/c2)
//            - ((rho1 c1)^2 + (rho2 c2)^2)/(2 rho1 c1 rho2 c2) sin(w d/c1) sin(w d/c2);
// a propagating wave exists iff the returned value lies in [-1, 1].
double rayleigh_rhs(const BilayerSpec& spec, double omega);

// One monotone piece of an inverted dispersion branch.
struct BranchSegment {
  std::vector<double> k;      // rad/m, strictly monotone
  std::vector<double> omega;  // rad/s, ascending
};

struct Bandgap {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
};

struct BilayerBands {
  std::vector<BranchSegment> segments;
  std::vector<Bandgap> gaps;  // ascending, widths below 1e-8*omega_max dropped
};

BilayerBands bilayer_branches(const BilayerSpec& spec, double omega_max, int n_samples);

}  // namespace phonband

#endif  // PHONBAND_ANALYTIC_HPP_

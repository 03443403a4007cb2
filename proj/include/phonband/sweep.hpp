// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_SWEEP_HPP_
#define PHONBAND_SWEEP_HPP_

#include <string>
#include <vector>

#include "phonband/analytic.hpp"
#include "phonband/assembly.hpp"
#include "phonband/bloch.hpp"
#include "phonband/cellmesh.hpp"
#include "phonband/eigensolve.hpp"

namespace phonband {

// Brillouin-zone path through the standard vertices of the rectangular cell:
// G = (0,0), X = (pi/(2 d_a), 0), M = (pi/(2 d_a), pi/(2 d_b)), Y = (0, pi/(2 d_b)).
struct PathSpec {
  std::vector<std::string> vertices = {"G", "Y"};
  int samples_per_segment = 30;
};

WaveVector zone_vertex(const std::string& name, const UnitCell& cell);

struct PathSample {
  double coordinate = 0.0;  // cumulative arc length along the path (rad/m)
  WaveVector k;
};

// Inclusive linear sampling per segment; duplicate junction points dropped.
std::vector<PathSample> sample_path(const PathSpec& path, const UnitCell& cell);

struct Provenance {
  std::string layout;
  int nx = 0, ny = 0;
  int nodes_per_side = 0;
  bool spectral = false;
  bool lumped = false;
};

struct DispersionResult {
  std::vector<PathSample> samples;
  std::vector<std::vector<double>> modes;  // [sample][branch], ascending per sample
  double c_ref = 1.0;                      // normalization reference speed (m/s)
  double L_ref = 1.0;                      // normalization reference length (m)
  bool normalized = false;                 // false: rad/s and rad/m; true: dimensionless
  Provenance provenance;
};

struct SweepOptions {
  bool lump_mass = false;
  LumpNorm lump_norm = LumpNorm::PerBlock;
  int n_modes = 10;
  int threads = 1;  // worker threads for the per-k eigenproblems
};

DispersionResult compute_dispersion(const UnitCell& cell, int nx, int ny, const ElementSpec& spec,
                                    const PathSpec& path, const SweepOptions& opts);

// Dimensionless form: Omega = omega*L_ref/(pi*c_ref), xi = k*L_ref/pi.
DispersionResult normalize(const DispersionResult& result, double c_ref, double L_ref);
DispersionResult denormalize(const DispersionResult& result);

// Default references: L_ref = cell width 2 d_a, c_ref = shear speed of the
// first (matrix/bottom) material.
double default_c_ref(const UnitCell& cell);
double default_l_ref(const UnitCell& cell);

struct BranchErrorStats {
  double max_error = 0.0;
  double median_error = 0.0;
};

// Per-branch, per-sample error table against an analytic oracle.
struct ErrorReport {
  std::vector<std::vector<double>> errors;  // [branch][sample]
  std::vector<BranchErrorStats> branches;
  // number of leading branches whose max error stays below tol
  int leading_resolved(double tol) const;
};

// Homogeneous oracle: relative distance to the nearest folded branch
// omega = c*sqrt((k_x + n*pi/d_a)^2 + (k_y + m*pi/d_b)^2), n, m in
// [-fold_range, fold_range], c in {c_P, c_S}. Frequencies are compared
// relative to max(omega_analytic, pi*c_ref/L_ref) so the zero modes at G are
// well-defined.
ErrorReport compare_homogeneous(const DispersionResult& result, const UnitCell& cell,
                                int fold_range = 3);

// Bilayer oracle at vertical incidence: residual
// |cos(2 d k) - rhs(omega_num)| minimized over the shear and longitudinal
// families. Requires a path with k_x = 0 and a Bilayer cell.
ErrorReport compare_bilayer(const DispersionResult& result, const UnitCell& cell);

// Rayleigh spec for one decoupled family of the cell's bilayer (d = d_b).
BilayerSpec bilayer_family(const UnitCell& cell, bool shear);

}  // namespace phonband

#endif  // PHONBAND_SWEEP_HPP_

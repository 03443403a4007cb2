// SPDX-License-Identifier: Apache-2.0

#include "phonband/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "phonband/errors.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace phonband {

double folded_homogeneous(const FoldedBranchSpec& spec, double k) {
  if (!(spec.c > 0.0) || !(spec.d > 0.0))
    throw ConfigError("folded_homogeneous: c and d must be positive");
  const double kx = k + spec.n * kPi / spec.d;
  const double ky = spec.m * kPi / spec.d;
  return spec.c * std::hypot(kx, ky);
}

double rayleigh_rhs(const BilayerSpec& spec, double omega) {
  if (!(spec.rho1 > 0.0) || !(spec.rho2 > 0.0) || !(spec.c1 > 0.0) || !(spec.c2 > 0.0) ||
      !(spec.d > 0.0))
    throw ConfigError("rayleigh_rhs: bilayer parameters must be positive");
  const double o1 = omega * spec.d / spec.c1;
  const double o2 = omega * spec.d / spec.c2;
  const double z1 = spec.rho1 * spec.c1;
  const double z2 = spec.rho2 * spec.c2;
  const double coeff = (z1 * z1 + z2 * z2) / (2.0 * z1 * z2);
  return std::cos(o1) * std::cos(o2) - coeff * std::sin(o1) * std::sin(o2);
}

namespace {

// Refine a |rhs| = 1 crossing inside (a, b) to 1e-10 relative.
double refine_edge(const BilayerSpec& spec, double a, double b) {
  const bool a_prop = std::abs(rayleigh_rhs(spec, a)) <= 1.0;
  while (b - a > 1e-10 * b) {
    const double mid = 0.5 * (a + b);
    if ((std::abs(rayleigh_rhs(spec, mid)) <= 1.0) == a_prop)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

double invert_k(const BilayerSpec& spec, double omega) {
  const double rhs = std::clamp(rayleigh_rhs(spec, omega), -1.0, 1.0);
  return std::acos(rhs) / (2.0 * spec.d);
}

// Split a pass-band point run into maximal strictly monotone-k pieces
// (branches fold back at the zone boundary and centre).
void emit_segments(const std::vector<double>& ks, const std::vector<double>& ws,
                   std::vector<BranchSegment>& out) {
  const std::size_t n = ks.size();
  std::size_t start = 0;
  while (start + 1 < n) {
    std::size_t stop = start + 1;
    while (stop < n && ks[stop] == ks[stop - 1]) ++stop;  // skip plateaus
    if (stop >= n) break;
    const bool up = ks[stop] > ks[start];
    std::size_t end = stop;
    while (end + 1 < n && (up ? ks[end + 1] > ks[end] : ks[end + 1] < ks[end])) ++end;
    BranchSegment seg;
    for (std::size_t i = start; i <= end; ++i) {
      if (!seg.k.empty() && ks[i] == seg.k.back()) continue;
      seg.k.push_back(ks[i]);
      seg.omega.push_back(ws[i]);
    }
    if (seg.k.size() >= 2) out.push_back(std::move(seg));
    start = end;
  }
}

}  // namespace

BilayerBands bilayer_branches(const BilayerSpec& spec, double omega_max, int n_samples) {
  if (!(omega_max > 0.0)) throw ConfigError("bilayer_branches: omega_max must be positive");
  if (n_samples < 100) throw ConfigError("bilayer_branches: n_samples must be >= 100");

  std::vector<double> omegas(n_samples);
  std::vector<bool> prop(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    omegas[i] = omega_max * i / (n_samples - 1);
    prop[i] = std::abs(rayleigh_rhs(spec, omegas[i])) <= 1.0;
  }

  BilayerBands bands;
  std::vector<double> run_k, run_w;
  auto flush_run = [&]() {
    emit_segments(run_k, run_w, bands.segments);
    run_k.clear();
    run_w.clear();
  };
  double gap_start = -1.0;
  for (int i = 0; i < n_samples; ++i) {
    if (prop[i]) {
      if (i > 0 && !prop[i - 1]) {  // evanescent -> propagating: close a gap
        const double edge = refine_edge(spec, omegas[i - 1], omegas[i]);
        if (gap_start >= 0.0) bands.gaps.push_back({gap_start, edge});
        gap_start = -1.0;
        run_k.push_back(invert_k(spec, edge));
        run_w.push_back(edge);
      }
      run_k.push_back(invert_k(spec, omegas[i]));
      run_w.push_back(omegas[i]);
    } else if (i > 0 && prop[i - 1]) {  // propagating -> evanescent: open a gap
      const double edge = refine_edge(spec, omegas[i - 1], omegas[i]);
      run_k.push_back(invert_k(spec, edge));
      run_w.push_back(edge);
      flush_run();
      gap_start = edge;
    }
  }
  flush_run();
  if (gap_start >= 0.0) bands.gaps.push_back({gap_start, omega_max});  // clipped at the window

  auto too_narrow = [&](const Bandgap& g) { return g.omega_hi - g.omega_lo < 1e-8 * omega_max; };
  bands.gaps.erase(std::remove_if(bands.gaps.begin(), bands.gaps.end(), too_narrow),
                   bands.gaps.end());

  for (const BranchSegment& seg : bands.segments) {
    for (std::size_t i = 1; i < seg.k.size(); ++i) {
      const bool up = seg.k.back() > seg.k.front();
      if (up ? seg.k[i] <= seg.k[i - 1] : seg.k[i] >= seg.k[i - 1])
        throw NumericError("bilayer_branches: inverted branch is not monotone");
    }
  }
  return bands;
}

}  // namespace phonband

// SPDX-License-Identifier: Apache-2.0

#include "phonband/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "phonband/errors.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace phonband {

WaveVector zone_vertex(const std::string& name, const UnitCell& cell) {
  const double kx = kPi / (2.0 * cell.half_width);
  const double ky = kPi / (2.0 * cell.half_height);
  if (name == "G" || name == "Gamma") return {0.0, 0.0};
  if (name == "X") return {kx, 0.0};
  if (name == "M") return {kx, ky};
  if (name == "Y") return {0.0, ky};
  throw ConfigError("zone_vertex: unknown vertex '" + name + "' (use G, X, M, Y)");
}

std::vector<PathSample> sample_path(const PathSpec& path, const UnitCell& cell) {
  if (path.vertices.size() < 2) throw ConfigError("sample_path: need at least two vertices");
  if (path.samples_per_segment < 2)
    throw ConfigError("sample_path: need at least two samples per segment");
  std::vector<PathSample> out;
  double coord = 0.0;
  for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const WaveVector a = zone_vertex(path.vertices[s], cell);
    const WaveVector b = zone_vertex(path.vertices[s + 1], cell);
    const double len = std::hypot(b.k_x - a.k_x, b.k_y - a.k_y);
    const int n = path.samples_per_segment;
    for (int j = (s == 0 ? 0 : 1); j < n; ++j) {  // skip duplicated junction
      const double t = static_cast<double>(j) / (n - 1);
      out.push_back({coord + t * len,
                     {a.k_x + t * (b.k_x - a.k_x), a.k_y + t * (b.k_y - a.k_y)}});
    }
    coord += len;
  }
  return out;
}

double default_c_ref(const UnitCell& cell) {
  const Material* first = nullptr;
  if (const auto* h = std::get_if<Homogeneous>(&cell.layout))
    first = &h->material;
  else if (const auto* b = std::get_if<Bilayer>(&cell.layout))
    first = &b->bottom;
  else if (const auto* i = std::get_if<MatrixInclusion>(&cell.layout))
    first = &i->matrix;
  else
    first = &std::get<MatrixPore>(cell.layout).matrix;
  return wave_speeds(*first).c_s;
}

double default_l_ref(const UnitCell& cell) { return 2.0 * cell.half_width; }

DispersionResult compute_dispersion(const UnitCell& cell, int nx, int ny, const ElementSpec& spec,
                                    const PathSpec& path, const SweepOptions& opts) {
  if (opts.n_modes < 1) throw ConfigError("compute_dispersion: n_modes must be >= 1");
  if (opts.threads < 1) throw ConfigError("compute_dispersion: threads must be >= 1");
  const Mesh mesh = build_mesh(cell, nx, ny, spec);
  const DofPartition part = classify_dofs(mesh);
  SystemMatrices sys = assemble(mesh);
  if (opts.lump_mass) sys = lump(sys, mesh, opts.lump_norm);

  DispersionResult result;
  result.samples = sample_path(path, cell);
  result.modes.resize(result.samples.size());
  result.c_ref = default_c_ref(cell);
  result.L_ref = default_l_ref(cell);
  result.provenance = {std::string(), nx, ny, spec.nodes_per_side(), spec.is_spectral(),
                       opts.lump_mass};
  result.provenance.layout = std::visit(
      [](const auto& l) -> std::string {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Homogeneous>) return "homogeneous";
        if constexpr (std::is_same_v<T, Bilayer>) return "bilayer";
        if constexpr (std::is_same_v<T, MatrixInclusion>) return "inclusion";
        if constexpr (std::is_same_v<T, MatrixPore>) return "pore";
      },
      cell.layout);

  // independent per-k jobs merged by sample index: identical output for any
  // worker count
  const int n_jobs = static_cast<int>(result.samples.size());
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  int error_index = -1;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_jobs) return;
      try {
        const WaveVector k = result.samples[i].k;
        const BlochTransform t = build_transform(part, mesh, k);
        const ReducedSystem red = reduce(sys, t);
        result.modes[i] = solve_gevp(red, k, opts.n_modes).omegas;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          error_index = i;
        }
        return;
      }
    }
  };
  if (opts.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_workers = std::min(opts.threads, n_jobs);
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      const WaveVector k = result.samples[error_index].k;
      throw NumericError(std::string(e.what()) + " [at k = (" + std::to_string(k.k_x) + ", " +
                         std::to_string(k.k_y) + ")]");
    }
  }
  return result;
}

DispersionResult normalize(const DispersionResult& result, double c_ref, double L_ref) {
  if (result.normalized) throw ConfigError("normalize: result is already dimensionless");
  if (!(c_ref > 0.0) || !(L_ref > 0.0))
    throw ConfigError("normalize: reference speed and length must be positive");
  DispersionResult out = result;
  out.c_ref = c_ref;
  out.L_ref = L_ref;
  out.normalized = true;
  const double kw = L_ref / kPi;
  const double ww = L_ref / (kPi * c_ref);
  for (auto& s : out.samples) {
    s.coordinate *= kw;
    s.k.k_x *= kw;
    s.k.k_y *= kw;
  }
  for (auto& row : out.modes)
    for (auto& w : row) w *= ww;
  return out;
}

DispersionResult denormalize(const DispersionResult& result) {
  if (!result.normalized) throw ConfigError("denormalize: result is already dimensional");
  DispersionResult out = result;
  out.normalized = false;
  const double kw = kPi / result.L_ref;
  const double ww = kPi * result.c_ref / result.L_ref;
  for (auto& s : out.samples) {
    s.coordinate *= kw;
    s.k.k_x *= kw;
    s.k.k_y *= kw;
  }
  for (auto& row : out.modes)
    for (auto& w : row) w *= ww;
  return out;
}

int ErrorReport::leading_resolved(double tol) const {
  int count = 0;
  for (const auto& b : branches) {
    if (!(b.max_error < tol)) break;
    ++count;
  }
  return count;
}

namespace {

ErrorReport summarize(std::vector<std::vector<double>> errors) {
  ErrorReport report;
  report.errors = std::move(errors);
  for (const auto& row : report.errors) {
    BranchErrorStats stats;
    if (!row.empty()) {
      stats.max_error = *std::max_element(row.begin(), row.end());
      std::vector<double> sorted = row;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      stats.median_error = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    }
    report.branches.push_back(stats);
  }
  return report;
}

std::size_t max_branches(const DispersionResult& r) {
  std::size_t n = 0;
  for (const auto& row : r.modes) n = std::max(n, row.size());
  return n;
}

}  // namespace

ErrorReport compare_homogeneous(const DispersionResult& result, const UnitCell& cell,
                                int fold_range) {
  if (result.normalized)
    throw ConfigError("compare_homogeneous: comparison expects a dimensional result");
  const auto* homo = std::get_if<Homogeneous>(&cell.layout);
  if (!homo) throw ConfigError("compare_homogeneous: cell layout is not homogeneous");
  const WaveSpeeds speeds = wave_speeds(homo->material);
  const double floor = kPi * result.c_ref / result.L_ref;

  const std::size_t n_branches = max_branches(result);
  std::vector<std::vector<double>> errors(n_branches);
  for (std::size_t s = 0; s < result.samples.size(); ++s) {
    const WaveVector k = result.samples[s].k;
    for (std::size_t b = 0; b < result.modes[s].size(); ++b) {
      const double w = result.modes[s][b];
      double best = std::numeric_limits<double>::max();
      for (double c : {speeds.c_p, speeds.c_s}) {
        for (int n = -fold_range; n <= fold_range; ++n) {
          for (int m = -fold_range; m <= fold_range; ++m) {
            const double wx = k.k_x + n * kPi / cell.half_width;
            const double wy = k.k_y + m * kPi / cell.half_height;
            const double wa = c * std::hypot(wx, wy);
            const double err = std::abs(w - wa) / std::max(wa, floor);
            best = std::min(best, err);
          }
        }
      }
      errors[b].push_back(best);
    }
  }
  return summarize(std::move(errors));
}

BilayerSpec bilayer_family(const UnitCell& cell, bool shear) {
  const auto* bi = std::get_if<Bilayer>(&cell.layout);
  if (!bi) throw ConfigError("bilayer_family: cell layout is not a bilayer");
  const WaveSpeeds sb = wave_speeds(bi->bottom);
  const WaveSpeeds st = wave_speeds(bi->top);
  return {bi->bottom.density, shear ? sb.c_s : sb.c_p, bi->top.density,
          shear ? st.c_s : st.c_p, cell.half_height};
}

ErrorReport compare_bilayer(const DispersionResult& result, const UnitCell& cell) {
  if (result.normalized)
    throw ConfigError("compare_bilayer: comparison expects a dimensional result");
  const BilayerSpec shear = bilayer_family(cell, true);
  const BilayerSpec longi = bilayer_family(cell, false);
  const std::size_t n_branches = max_branches(result);
  std::vector<std::vector<double>> errors(n_branches);
  for (std::size_t s = 0; s < result.samples.size(); ++s) {
    const WaveVector k = result.samples[s].k;
    if (std::abs(k.k_x) > 1e-12 / cell.half_width)
      throw ConfigError("compare_bilayer: oracle requires vertical incidence (k_x = 0)");
    const double lhs = std::cos(2.0 * cell.half_height * k.k_y);
    for (std::size_t b = 0; b < result.modes[s].size(); ++b) {
      const double w = result.modes[s][b];
      const double res = std::min(std::abs(lhs - rayleigh_rhs(shear, w)),
                                  std::abs(lhs - rayleigh_rhs(longi, w)));
      errors[b].push_back(res);
    }
  }
  return summarize(std::move(errors));
}

}  // namespace phonband

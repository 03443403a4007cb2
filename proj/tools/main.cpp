// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phonband/analytic.hpp"
#include "phonband/basis.hpp"
#include "phonband/config.hpp"
#include "phonband/errors.hpp"
#include "phonband/report.hpp"
#include "phonband/sweep.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

using namespace phonband;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("PHONBAND_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError("PHONBAND_THREADS must be a positive integer");
  }
  return 1;
}

std::filesystem::path prep_out_dir(const RunConfig& cfg, const std::string& override_dir) {
  std::filesystem::path dir = override_dir.empty() ? cfg.out_dir : override_dir;
  if (!dir.empty()) std::filesystem::create_directories(dir);
  return dir;
}

double runge_function(double x) { return 1.0 / (1.0 + 25.0 * x * x); }

int cmd_dispersion(const std::string& config_path, const std::string& out_dir, int threads,
                   bool svg) {
  const RunConfig cfg = parse_config(config_path);
  const std::filesystem::path dir = prep_out_dir(cfg, out_dir);
  const DispersionResult result = compute_dispersion(
      cfg.cell, cfg.nx, cfg.ny, cfg.element, cfg.path, cfg.sweep_options(resolve_threads(threads)));
  const std::string csv = (dir / "dispersion.csv").string();
  write_dispersion_csv(csv, result, cfg.hash);
  write_summary_json((dir / "summary.json").string(), cfg, result, nullptr);
  if (svg) write_band_svg((dir / "bands.svg").string(), result);
  std::cout << "wrote " << csv << " (" << result.samples.size() << " samples x "
            << (result.modes.empty() ? 0 : result.modes.front().size()) << " modes)\n";
  return 0;
}

int cmd_compare(const std::string& config_path, const std::string& out_dir, int threads) {
  const RunConfig cfg = parse_config(config_path);
  const std::filesystem::path dir = prep_out_dir(cfg, out_dir);
  const DispersionResult result = compute_dispersion(
      cfg.cell, cfg.nx, cfg.ny, cfg.element, cfg.path, cfg.sweep_options(resolve_threads(threads)));
  ErrorReport errors;
  std::string kind;
  if (std::get_if<Homogeneous>(&cfg.cell.layout)) {
    errors = compare_homogeneous(result, cfg.cell);
    kind = "homogeneous-folded";
  } else if (std::get_if<Bilayer>(&cfg.cell.layout)) {
    errors = compare_bilayer(result, cfg.cell);
    kind = "bilayer-rayleigh";
  } else {
    throw ConfigError("compare: no analytic oracle exists for layout '" +
                      result.provenance.layout + "'");
  }
  write_compare_json((dir / "compare.json").string(), cfg, errors, kind);
  write_summary_json((dir / "summary.json").string(), cfg, result, &errors);
  std::printf("oracle: %s\n%-8s %-14s %-14s\n", kind.c_str(), "branch", "max_error",
              "median_error");
  for (std::size_t b = 0; b < errors.branches.size(); ++b)
    std::printf("%-8zu %-14.6e %-14.6e\n", b + 1, errors.branches[b].max_error,
                errors.branches[b].median_error);
  for (double tol : {1e-4, 1e-3, 1e-2})
    std::printf("branches resolved at %g: %d\n", tol, errors.leading_resolved(tol));
  return 0;
}

int cmd_analytic(const std::string& config_path, const std::string& out_dir, double omega_max_n) {
  const RunConfig cfg = parse_config(config_path);
  const std::filesystem::path dir = prep_out_dir(cfg, out_dir);
  const std::string csv = (dir / "analytic.csv").string();
  std::ofstream out(csv);
  if (!out) throw ConfigError("analytic: cannot open '" + csv + "' for writing");
  const double wnorm = cfg.l_ref / (kPi * cfg.c_ref);
  const double omega_cap = omega_max_n / wnorm;

  if (const auto* homo = std::get_if<Homogeneous>(&cfg.cell.layout)) {
    const WaveSpeeds speeds = wave_speeds(homo->material);
    const auto samples = sample_path(cfg.path, cfg.cell);
    out << "# phonband analytic v1 (folded homogeneous branches)\n";
    out << "# config_hash = " << std::hex << cfg.hash << std::dec << "\n";
    out << "# omega_normalized_cap = " << fmt(omega_max_n) << "\n";
    out << "family,n,m,path_coordinate,k_x,k_y,omega,omega_normalized\n";
    for (int family = 0; family < 2; ++family) {
      const double c = family == 0 ? speeds.c_p : speeds.c_s;
      for (int n = -3; n <= 3; ++n) {
        for (int m = 0; m <= 3; ++m) {
          bool any = false;
          for (const auto& s : samples) {
            const double wx = s.k.k_x + n * kPi / cfg.cell.half_width;
            const double wy = s.k.k_y + m * kPi / cfg.cell.half_height;
            const double w = c * std::hypot(wx, wy);
            if (w > omega_cap) continue;
            any = true;
            out << (family == 0 ? "P" : "S") << ',' << n << ',' << m << ','
                << fmt(s.coordinate) << ',' << fmt(s.k.k_x) << ',' << fmt(s.k.k_y) << ','
                << fmt(w) << ',' << fmt(w * wnorm) << '\n';
          }
          (void)any;
        }
      }
    }
    std::cout << "wrote " << csv << "\n";
    return 0;
  }
  if (std::get_if<Bilayer>(&cfg.cell.layout)) {
    out << "# phonband analytic v1 (bilayer Rayleigh branches)\n";
    out << "# config_hash = " << std::hex << cfg.hash << std::dec << "\n";
    out << "# omega_normalized_cap = " << fmt(omega_max_n) << "\n";
    std::vector<std::string> gap_lines;
    std::ostringstream rows;
    for (int family = 0; family < 2; ++family) {
      const BilayerSpec spec = bilayer_family(cfg.cell, family == 1);
      const BilayerBands bands = bilayer_branches(spec, omega_cap, 4000);
      const char* tag = family == 0 ? "P" : "S";
      for (std::size_t seg = 0; seg < bands.segments.size(); ++seg) {
        const BranchSegment& s = bands.segments[seg];
        for (std::size_t i = 0; i < s.k.size(); ++i) {
          rows << tag << ',' << seg << ',' << fmt(s.k[i]) << ',' << fmt(s.omega[i]) << ','
               << fmt(s.omega[i] * wnorm) << '\n';
        }
      }
      for (const Bandgap& g : bands.gaps) {
        gap_lines.push_back(std::string("# gap ") + tag + " = [" + fmt(g.omega_lo) + ", " +
                            fmt(g.omega_hi) + "] rad/s");
      }
    }
    for (const auto& line : gap_lines) out << line << "\n";
    out << "family,segment,k_y,omega,omega_normalized\n" << rows.str();
    std::cout << "wrote " << csv << " (" << gap_lines.size() << " stop bands)\n";
    return 0;
  }
  throw ConfigError("analytic: closed-form curves exist only for homogeneous and bilayer cells");
}

int cmd_runge(const std::string& out_dir) {
  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "runge.csv").string();
  std::ofstream out(csv);
  if (!out) throw ConfigError("runge: cannot open '" + csv + "' for writing");
  out << "# max |f - interpolant| of f(x) = 1/(1+25x^2) on 2001 probe points\n";
  out << "degree,equispaced,chebyshev,lobatto\n";
  std::printf("%-8s %-14s %-14s %-14s\n", "degree", "equispaced", "chebyshev", "lobatto");
  for (int degree : {2, 4, 6, 8, 10, 12, 14, 16}) {
    const double e_eq = interpolation_max_error(equispaced_nodes(degree), runge_function, 2001);
    const double e_ch = interpolation_max_error(chebyshev_nodes(degree + 1), runge_function, 2001);
    const double e_lo = interpolation_max_error(lobatto_nodes(degree), runge_function, 2001);
    out << degree << ',' << fmt(e_eq) << ',' << fmt(e_ch) << ',' << fmt(e_lo) << '\n';
    std::printf("%-8d %-14.6e %-14.6e %-14.6e\n", degree, e_eq, e_ch, e_lo);
  }
  std::cout << "wrote " << csv << "\n";
  return 0;
}

int cmd_quadcheck(const std::string& out_dir) {
  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "quadcheck.csv").string();
  std::ofstream out(csv);
  if (!out) throw ConfigError("quadcheck: cannot open '" + csv + "' for writing");
  auto moment = [](int p) { return p % 2 ? 0.0 : 2.0 / (p + 1); };  // integral of x^p over [-1,1]
  auto apply = [](const QuadratureRule& rule, int p) {
    double sum = 0.0;
    for (int i = 0; i < rule.num_points(); ++i)
      sum += rule.weights[i] * std::pow(rule.points[i], p);
    return sum;
  };
  out << "rule,points,max_exact_degree,error_at_max,error_at_next\n";
  std::printf("%-16s %-8s %-18s %-14s %-14s\n", "rule", "points", "max_exact_degree",
              "err_at_max", "err_at_next");
  for (int m = 1; m <= 9; ++m) {
    const QuadratureRule gll = gll_quadrature(m);
    const int dmax = 2 * (m + 1) - 3;
    const double e1 = std::abs(apply(gll, dmax) - moment(dmax));
    const double e2 = std::abs(apply(gll, dmax + 1) - moment(dmax + 1));
    out << "gauss-lobatto," << (m + 1) << ',' << dmax << ',' << fmt(e1) << ',' << fmt(e2) << '\n';
    std::printf("%-16s %-8d %-18d %-14.6e %-14.6e\n", "gauss-lobatto", m + 1, dmax, e1, e2);
  }
  for (int n = 1; n <= 9; ++n) {
    const QuadratureRule gl = gauss_legendre_quadrature(n);
    const int dmax = 2 * n - 1;
    const double e1 = std::abs(apply(gl, dmax) - moment(dmax));
    const double e2 = std::abs(apply(gl, dmax + 1) - moment(dmax + 1));
    out << "gauss-legendre," << n << ',' << dmax << ',' << fmt(e1) << ',' << fmt(e2) << '\n';
    std::printf("%-16s %-8d %-18d %-14.6e %-14.6e\n", "gauss-legendre", n, dmax, e1, e2);
  }
  std::cout << "wrote " << csv << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phonband: dispersion curves of 2D periodic elastic media"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  bool svg = false;
  double omega_max_n = 8.0;

  CLI::App* dispersion = app.add_subcommand("dispersion", "compute a band structure");
  dispersion->add_option("--config", config_path, "run configuration file")->required();
  dispersion->add_option("--out", out_dir, "output directory (overrides config)");
  dispersion->add_option("--threads", threads, "worker threads (or PHONBAND_THREADS)");
  dispersion->add_flag("--svg", svg, "also emit a band-diagram SVG");

  CLI::App* compare = app.add_subcommand("compare", "compare a run against the analytic oracle");
  compare->add_option("--config", config_path, "run configuration file")->required();
  compare->add_option("--out", out_dir, "output directory (overrides config)");
  compare->add_option("--threads", threads, "worker threads (or PHONBAND_THREADS)");

  CLI::App* analytic = app.add_subcommand("analytic", "emit analytic dispersion curves alone");
  analytic->add_option("--config", config_path, "run configuration file")->required();
  analytic->add_option("--out", out_dir, "output directory (overrides config)");
  analytic->add_option("--omega-max", omega_max_n, "normalized frequency window (default 8)");

  CLI::App* runge = app.add_subcommand("runge", "interpolation error study at high degree");
  runge->add_option("--out", out_dir, "output directory");

  CLI::App* quadcheck = app.add_subcommand("quadcheck", "quadrature exactness table");
  quadcheck->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dispersion->parsed()) return cmd_dispersion(config_path, out_dir, threads, svg);
    if (compare->parsed()) return cmd_compare(config_path, out_dir, threads);
    if (analytic->parsed()) return cmd_analytic(config_path, out_dir, omega_max_n);
    if (runge->parsed()) return cmd_runge(out_dir);
    if (quadcheck->parsed()) return cmd_quadcheck(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

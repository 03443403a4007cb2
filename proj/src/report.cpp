// SPDX-License-Identifier: Apache-2.0

#include "phonband/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "phonband/errors.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace phonband {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("report: cannot open '" + path + "' for writing");
  return out;
}

double parse_field(const std::string& field, const std::string& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("report: malformed numeric field '" + field + "' in '" + path + "'");
  }
}

}  // namespace

void write_dispersion_csv(const std::string& path, const DispersionResult& result,
                          std::uint64_t config_hash) {
  if (result.normalized)
    throw ConfigError("write_dispersion_csv: expected a dimensional result");
  std::ofstream out = open_out(path);
  const double wnorm = result.L_ref / (kPi * result.c_ref);
  out << "# phonband dispersion v1\n";
  out << "# config_hash = " << hash_hex(config_hash) << "\n";
  out << "# layout = " << result.provenance.layout << "\n";
  out << "# nx = " << result.provenance.nx << "\n";
  out << "# ny = " << result.provenance.ny << "\n";
  out << "# nodes_per_side = " << result.provenance.nodes_per_side << "\n";
  out << "# spectral = " << (result.provenance.spectral ? "true" : "false") << "\n";
  out << "# lumped = " << (result.provenance.lumped ? "true" : "false") << "\n";
  out << "# c_ref = " << fmt(result.c_ref) << " # m/s\n";
  out << "# L_ref = " << fmt(result.L_ref) << " # m\n";
  out << "# omega_normalized = omega*L_ref/(pi*c_ref); path_coordinate, k in rad/m; omega in "
         "rad/s\n";
  out << "path_coordinate,k_x,k_y,mode_index,omega,omega_normalized\n";
  for (std::size_t s = 0; s < result.samples.size(); ++s) {
    const PathSample& ps = result.samples[s];
    for (std::size_t b = 0; b < result.modes[s].size(); ++b) {
      const double w = result.modes[s][b];
      out << fmt(ps.coordinate) << ',' << fmt(ps.k.k_x) << ',' << fmt(ps.k.k_y) << ','
          << (b + 1) << ',' << fmt(w) << ',' << fmt(w * wnorm) << '\n';
    }
  }
}

DispersionResult read_dispersion_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("report: cannot open '" + path + "'");
  DispersionResult result;
  std::string line;
  bool header_seen = false;
  auto meta = [&](const std::string& key) -> std::string {
    // "# key = value [# comment]"
    const std::string prefix = "# " + key + " = ";
    if (line.rfind(prefix, 0) != 0) return {};
    std::string value = line.substr(prefix.size());
    const std::size_t comment = value.find(" #");
    if (comment != std::string::npos) value.erase(comment);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\r')) value.pop_back();
    return value;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string v;
      if (!(v = meta("layout")).empty()) result.provenance.layout = v;
      if (!(v = meta("nx")).empty()) result.provenance.nx = static_cast<int>(parse_field(v, path));
      if (!(v = meta("ny")).empty()) result.provenance.ny = static_cast<int>(parse_field(v, path));
      if (!(v = meta("nodes_per_side")).empty())
        result.provenance.nodes_per_side = static_cast<int>(parse_field(v, path));
      if (!(v = meta("spectral")).empty()) result.provenance.spectral = v == "true";
      if (!(v = meta("lumped")).empty()) result.provenance.lumped = v == "true";
      if (!(v = meta("c_ref")).empty()) result.c_ref = parse_field(v, path);
      if (!(v = meta("L_ref")).empty()) result.L_ref = parse_field(v, path);
      continue;
    }
    if (!header_seen) {  // column header row
      if (line != "path_coordinate,k_x,k_y,mode_index,omega,omega_normalized")
        throw ConfigError("report: unexpected column header in '" + path + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (fields.size() != 6)
      throw ConfigError("report: expected 6 fields per data row in '" + path + "'");
    const int mode_index = static_cast<int>(parse_field(fields[3], path));
    if (mode_index == 1) {
      PathSample ps;
      ps.coordinate = parse_field(fields[0], path);
      ps.k.k_x = parse_field(fields[1], path);
      ps.k.k_y = parse_field(fields[2], path);
      result.samples.push_back(ps);
      result.modes.emplace_back();
    }
    if (result.modes.empty() ||
        mode_index != static_cast<int>(result.modes.back().size()) + 1)
      throw ConfigError("report: mode_index rows out of order in '" + path + "'");
    result.modes.back().push_back(parse_field(fields[4], path));
  }
  if (!header_seen) throw ConfigError("report: no data found in '" + path + "'");
  return result;
}

namespace {

nlohmann::ordered_json branch_stats_json(const ErrorReport& errors) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t b = 0; b < errors.branches.size(); ++b) {
    arr.push_back({{"index", b + 1},
                   {"max_error", errors.branches[b].max_error},
                   {"median_error", errors.branches[b].median_error}});
  }
  return arr;
}

}  // namespace

void write_summary_json(const std::string& path, const RunConfig& cfg,
                        const DispersionResult& result, const ErrorReport* errors) {
  nlohmann::ordered_json j;
  j["tool"] = "phonband";
  j["config_hash"] = hash_hex(cfg.hash);
  j["layout"] = result.provenance.layout;
  j["n_samples"] = result.samples.size();
  j["n_modes"] = result.modes.empty() ? std::size_t{0} : result.modes.front().size();
  j["c_ref"] = result.c_ref;
  j["L_ref"] = result.L_ref;
  const double wnorm = result.L_ref / (kPi * result.c_ref);
  nlohmann::ordered_json branches = nlohmann::ordered_json::array();
  const std::size_t n_branches = result.modes.empty() ? 0 : result.modes.front().size();
  for (std::size_t b = 0; b < n_branches; ++b) {
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    for (const auto& row : result.modes) {
      if (b < row.size()) {
        lo = std::min(lo, row[b]);
        hi = std::max(hi, row[b]);
      }
    }
    branches.push_back({{"index", b + 1},
                        {"omega_min", lo},
                        {"omega_max", hi},
                        {"omega_normalized_min", lo * wnorm},
                        {"omega_normalized_max", hi * wnorm}});
  }
  j["branches"] = branches;
  if (errors) j["oracle_errors"] = branch_stats_json(*errors);
  j["config"] = cfg.canonical;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_compare_json(const std::string& path, const RunConfig& cfg, const ErrorReport& errors,
                        const std::string& oracle_kind) {
  nlohmann::ordered_json j;
  j["tool"] = "phonband";
  j["config_hash"] = hash_hex(cfg.hash);
  j["oracle"] = oracle_kind;
  j["branches"] = branch_stats_json(errors);
  nlohmann::ordered_json resolved;
  for (double tol : {1e-4, 1e-3, 1e-2}) {
    char key[32];
    std::snprintf(key, sizeof key, "%g", tol);
    resolved[key] = errors.leading_resolved(tol);
  }
  j["leading_resolved"] = resolved;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_band_svg(const std::string& path, const DispersionResult& result) {
  if (result.normalized)
    throw ConfigError("write_band_svg: expected a dimensional result");
  const double wnorm = result.L_ref / (kPi * result.c_ref);
  const int width = 900, height = 600;
  const int ml = 70, mr = 20, mt = 20, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double xmax = result.samples.empty() ? 1.0 : result.samples.back().coordinate;
  double ymax = 0.0;
  for (const auto& row : result.modes)
    for (double w : row) ymax = std::max(ymax, w * wnorm);
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;
  auto px = [&](double c) { return ml + (xmax > 0.0 ? c / xmax : 0.0) * pw; };
  auto py = [&](double w) { return mt + ph - (w / ymax) * ph; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  char buf[128];
  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  // horizontal grid lines at integer normalized frequencies
  for (int g = 1; g < static_cast<int>(ymax); ++g) {
    std::snprintf(buf, sizeof buf, "%.2f", py(g));
    out << "<line x1=\"" << ml << "\" y1=\"" << buf << "\" x2=\"" << (ml + pw) << "\" y2=\""
        << buf << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << (ml - 8) << "\" y=\"" << buf
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-size=\"12\">" << g
        << "</text>\n";
  }
  const std::size_t n_branches = result.modes.empty() ? 0 : result.modes.front().size();
  for (std::size_t b = 0; b < n_branches; ++b) {
    out << "<polyline fill=\"none\" stroke=\"" << palette[b % 8] << "\" stroke-width=\"1.2\" "
        << "points=\"";
    for (std::size_t s = 0; s < result.samples.size(); ++s) {
      if (b >= result.modes[s].size()) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(result.samples[s].coordinate),
                    py(result.modes[s][b] * wnorm));
      out << buf;
    }
    out << "\"/>\n";
  }
  out << "<text x=\"" << (ml + pw / 2) << "\" y=\"" << (height - 12)
      << "\" text-anchor=\"middle\" font-size=\"14\">path coordinate (rad/m, 0 to "
      << fmt(xmax) << ")</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + ph / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << (mt + ph / 2) << ")\">normalized frequency</text>\n";
  out << "</svg>\n";
}

}  // namespace phonband

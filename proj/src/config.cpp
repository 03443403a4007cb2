// SPDX-License-Identifier: Apache-2.0

#include "phonband/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "phonband/errors.hpp"

namespace phonband {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// Raw sectioned key-value store with consumption tracking so that unknown
// keys can be reported by name.
struct RawConfig {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::set<std::string> consumed;  // "section/key"

  bool has(const std::string& sec, const std::string& key) const {
    auto s = sections.find(sec);
    return s != sections.end() && s->second.count(key) > 0;
  }
  std::string take(const std::string& sec, const std::string& key, const std::string& fallback) {
    consumed.insert(sec + "/" + key);
    auto s = sections.find(sec);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
  }
  std::string require(const std::string& sec, const std::string& key) {
    if (!has(sec, key))
      throw ConfigError("config: missing required key '" + key + "' in section [" + sec + "]");
    return take(sec, key, "");
  }
  void check_consumed() const {
    for (const auto& [sec, keys] : sections)
      for (const auto& [key, value] : keys)
        if (!consumed.count(sec + "/" + key))
          throw ConfigError("config: unknown key '" + key + "' in section [" + sec + "]");
  }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::string section;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header on line " + std::to_string(lineno));
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw ConfigError("config: empty section name on line " + std::to_string(lineno));
      raw.sections[section];  // allow empty sections
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value on line " + std::to_string(lineno));
    if (section.empty())
      throw ConfigError("config: key outside any section on line " + std::to_string(lineno));
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: empty key on line " + std::to_string(lineno));
    raw.sections[section][key] = value;
  }
  return raw;
}

double parse_double(const std::string& value, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + where + "' is not a number: '" + value + "'");
  }
}

int parse_int(const std::string& value, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + where + "' is not an integer: '" + value + "'");
  }
}

bool parse_bool(const std::string& value, const std::string& where) {
  const std::string v = lower(value);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("config: '" + where + "' is not a boolean: '" + value + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const Material& lookup(const std::map<std::string, Material>& mats, const std::string& name) {
  auto it = mats.find(name);
  if (it == mats.end())
    throw ConfigError("config: unknown material '" + name + "' in 'cell/materials'");
  return it->second;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

RunConfig parse_config_text(const std::string& text) {
  RawConfig raw = tokenize(text);
  RunConfig cfg;

  // materials
  for (const auto& [sec, keys] : raw.sections) {
    if (sec.rfind("material ", 0) != 0) continue;
    const std::string name = trim(sec.substr(9));
    if (name.empty()) throw ConfigError("config: material section without a name");
    Material mat;
    mat.name = name;
    mat.young = parse_double(raw.require(sec, "young"), sec + "/young");
    mat.poisson = parse_double(raw.require(sec, "poisson"), sec + "/poisson");
    mat.density = parse_double(raw.require(sec, "density"), sec + "/density");
    try {
      validate(mat);
    } catch (const std::exception& e) {
      throw ConfigError("config: material '" + name + "': " + e.what());
    }
    cfg.materials[name] = mat;
  }
  if (cfg.materials.empty())
    throw ConfigError("config: at least one [material <name>] section is required");

  // cell
  const std::string layout = lower(raw.take("cell", "layout", "homogeneous"));
  cfg.cell.half_width = parse_double(raw.take("cell", "d_a", "1"), "cell/d_a");
  cfg.cell.half_height = parse_double(raw.take("cell", "d_b", "1"), "cell/d_b");
  if (!(cfg.cell.half_width > 0.0)) throw ConfigError("config: 'cell/d_a' must be positive");
  if (!(cfg.cell.half_height > 0.0)) throw ConfigError("config: 'cell/d_b' must be positive");
  std::vector<std::string> names;
  if (raw.has("cell", "materials")) {
    names = split(lower(raw.take("cell", "materials", "")), ',');
  } else if (cfg.materials.size() == 1) {
    names = {cfg.materials.begin()->first};
    raw.take("cell", "materials", "");
  } else {
    throw ConfigError("config: 'cell/materials' is required when several materials are defined");
  }
  const double side_fraction =
      parse_double(raw.take("cell", "side_fraction", "0.5"), "cell/side_fraction");
  auto expect_names = [&](std::size_t n) {
    if (names.size() != n)
      throw ConfigError("config: layout '" + layout + "' expects " + std::to_string(n) +
                        " entry(ies) in 'cell/materials', got " + std::to_string(names.size()));
  };
  if (layout == "homogeneous") {
    expect_names(1);
    cfg.cell.layout = Homogeneous{lookup(cfg.materials, names[0])};
  } else if (layout == "bilayer") {
    expect_names(2);
    cfg.cell.layout = Bilayer{lookup(cfg.materials, names[0]), lookup(cfg.materials, names[1])};
  } else if (layout == "inclusion") {
    expect_names(2);
    cfg.cell.layout = MatrixInclusion{lookup(cfg.materials, names[0]),
                                      lookup(cfg.materials, names[1]), side_fraction};
  } else if (layout == "pore") {
    expect_names(1);
    cfg.cell.layout = MatrixPore{lookup(cfg.materials, names[0]), side_fraction};
  } else {
    throw ConfigError("config: unknown 'cell/layout' value '" + layout + "'");
  }
  if ((layout == "inclusion" || layout == "pore") &&
      !(side_fraction > 0.0 && side_fraction < 1.0))
    throw ConfigError("config: 'cell/side_fraction' must lie in (0, 1)");

  // discretization
  cfg.nx = parse_int(raw.take("discretization", "nx", "1"), "discretization/nx");
  cfg.ny = parse_int(raw.take("discretization", "ny", "1"), "discretization/ny");
  if (cfg.nx < 1 || cfg.ny < 1)
    throw ConfigError("config: 'discretization/nx' and 'ny' must be >= 1");
  if (layout == "bilayer" && cfg.ny % 2 != 0)
    throw ConfigError(
        "config: 'discretization/ny' must be even for a bilayer so the material interface "
        "falls on an element boundary");
  const int nps =
      parse_int(raw.require("discretization", "nodes_per_side"), "discretization/nodes_per_side");
  if (nps < 2) throw ConfigError("config: 'discretization/nodes_per_side' must be >= 2");
  const std::string family = lower(raw.take("discretization", "family", "lobatto"));
  std::string quad_default;
  if (family == "lobatto")
    quad_default = "gauss-lobatto";
  else if (family == "equispaced")
    quad_default = "gauss-legendre";
  else
    throw ConfigError("config: 'discretization/family' must be 'lobatto' or 'equispaced'");
  const std::string quad = lower(raw.take("discretization", "quadrature", quad_default));
  if (quad != quad_default)
    throw ConfigError("config: 'discretization/quadrature' value '" + quad +
                      "' does not match family '" + family +
                      "' (lobatto needs gauss-lobatto, equispaced needs gauss-legendre)");
  cfg.element = family == "lobatto" ? spectral_element(nps) : classical_element(nps);
  cfg.lumping = parse_bool(raw.take("discretization", "lumping", "false"),
                           "discretization/lumping");
  const std::string norm =
      lower(raw.take("discretization", "lump_norm", "per-block"));
  if (norm == "per-block")
    cfg.lump_norm = LumpNorm::PerBlock;
  else if (norm == "full-trace")
    cfg.lump_norm = LumpNorm::FullTrace;
  else
    throw ConfigError("config: 'discretization/lump_norm' must be 'per-block' or 'full-trace'");

  // sweep
  cfg.path.vertices = split(raw.take("sweep", "path", "G,Y"), ',');
  if (cfg.path.vertices.size() < 2)
    throw ConfigError("config: 'sweep/path' needs at least two vertices");
  for (auto& v : cfg.path.vertices) zone_vertex(v, cfg.cell);  // validates names
  cfg.path.samples_per_segment = parse_int(raw.take("sweep", "samples", "30"), "sweep/samples");
  if (cfg.path.samples_per_segment < 2)
    throw ConfigError("config: 'sweep/samples' must be >= 2");
  cfg.n_modes = parse_int(raw.take("sweep", "n_modes", "10"), "sweep/n_modes");
  if (cfg.n_modes < 1) throw ConfigError("config: 'sweep/n_modes' must be >= 1");

  // normalization
  const std::string cref = lower(raw.take("normalization", "c_ref", "auto"));
  cfg.c_ref = cref == "auto" ? default_c_ref(cfg.cell) : parse_double(cref, "normalization/c_ref");
  const std::string lref = lower(raw.take("normalization", "l_ref", "auto"));
  cfg.l_ref = lref == "auto" ? default_l_ref(cfg.cell) : parse_double(lref, "normalization/l_ref");
  if (!(cfg.c_ref > 0.0)) throw ConfigError("config: 'normalization/c_ref' must be positive");
  if (!(cfg.l_ref > 0.0)) throw ConfigError("config: 'normalization/l_ref' must be positive");

  // output
  cfg.out_dir = raw.take("output", "directory", ".");

  raw.check_consumed();

  // canonical echo of every resolved value, in fixed order
  std::ostringstream echo;
  for (const auto& [name, mat] : cfg.materials) {
    echo << "[material " << name << "]\n"
         << "young = " << fmt(mat.young) << "\n"
         << "poisson = " << fmt(mat.poisson) << "\n"
         << "density = " << fmt(mat.density) << "\n";
  }
  echo << "[cell]\nlayout = " << layout << "\n"
       << "d_a = " << fmt(cfg.cell.half_width) << "\n"
       << "d_b = " << fmt(cfg.cell.half_height) << "\n"
       << "materials = ";
  for (std::size_t i = 0; i < names.size(); ++i) echo << (i ? "," : "") << names[i];
  echo << "\n";
  if (layout == "inclusion" || layout == "pore")
    echo << "side_fraction = " << fmt(side_fraction) << "\n";
  echo << "[discretization]\n"
       << "nx = " << cfg.nx << "\nny = " << cfg.ny << "\n"
       << "nodes_per_side = " << nps << "\n"
       << "family = " << family << "\n"
       << "quadrature = " << quad << "\n"
       << "lumping = " << (cfg.lumping ? "true" : "false") << "\n"
       << "lump_norm = " << (cfg.lump_norm == LumpNorm::PerBlock ? "per-block" : "full-trace")
       << "\n[sweep]\npath = ";
  for (std::size_t i = 0; i < cfg.path.vertices.size(); ++i)
    echo << (i ? "," : "") << cfg.path.vertices[i];
  echo << "\nsamples = " << cfg.path.samples_per_segment << "\n"
       << "n_modes = " << cfg.n_modes << "\n"
       << "[normalization]\n"
       << "c_ref = " << fmt(cfg.c_ref) << "\n"
       << "l_ref = " << fmt(cfg.l_ref) << "\n"
       << "[output]\ndirectory = " << cfg.out_dir << "\n";
  cfg.canonical = echo.str();
  cfg.hash = fnv1a(cfg.canonical);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace phonband

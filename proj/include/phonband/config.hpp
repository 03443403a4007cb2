// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_CONFIG_HPP_
#define PHONBAND_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "phonband/assembly.hpp"
#include "phonband/cellmesh.hpp"
#include "phonband/sweep.hpp"

namespace phonband {

// Fully resolved run description: every default applied, every reference
// validated. canonical holds the deterministic echo of the resolved values;
// hash is its FNV-1a digest, recorded in all output artifacts.
struct RunConfig {
  std::map<std::string, Material> materials;
  UnitCell cell;
  int nx = 1;
  int ny = 1;
  ElementSpec element;
  bool lumping = false;
  LumpNorm lump_norm = LumpNorm::PerBlock;
  PathSpec path;
  int n_modes = 10;
  double c_ref = 0.0;  // resolved reference speed (m/s)
  double l_ref = 0.0;  // resolved reference length (m)
  std::string out_dir = ".";
  std::string canonical;
  std::uint64_t hash = 0;

  SweepOptions sweep_options(int threads) const {
    return {lumping, lump_norm, n_modes, threads};
  }
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

std::uint64_t fnv1a(const std::string& text);

}  // namespace phonband

#endif  // PHONBAND_CONFIG_HPP_

// SPDX-License-Identifier: Apache-2.0

#ifndef PHONBAND_ELASTICITY_HPP
#define PHONBAND_ELASTICITY_HPP

#include <string>

#include <Eigen/Core>

namespace phonband {

/// Linear isotropic material for in-plane P/SV waves under plane strain.
struct Material {
  std::string name;
  double young;    // Pa
  double poisson;  // dimensionless, -1 < nu < 0.5
  double density;  // kg/m^3
};

struct LameConstants {
  double lambda;  // Pa
  double mu;      // Pa
};

struct WaveSpeeds {
  double c_p;  // m/s
  double c_s;  // m/s
};

// Throws std::invalid_argument when E, rho or nu is out of range.
void validate(const Material& m);

LameConstants lame_constants(const Material& m);

WaveSpeeds wave_speeds(const Material& m);

// Plane-strain constitutive matrix relating (eps_xx, eps_yy, gamma_xy)
// to (sigma_xx, sigma_yy, sigma_xy).
Eigen::Matrix3d constitutive(const Material& m);

}  // namespace phonband

#endif  // PHONBAND_ELASTICITY_HPP

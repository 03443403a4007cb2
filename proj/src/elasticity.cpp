// SPDX-License-Identifier: Apache-2.0

#include "phonband/elasticity.hpp"

#include <cmath>
#include <stdexcept>

namespace phonband {

void validate(const Material& m) {
  if (!(m.young > 0.0)) {
    throw std::invalid_argument("material '" + m.name + "': E must be positive");
  }
  if (!(m.density > 0.0)) {
    throw std::invalid_argument("material '" + m.name + "': rho must be positive");
  }
  if (!(m.poisson > -1.0 && m.poisson < 0.5)) {
    throw std::invalid_argument("material '" + m.name + "': nu must lie in (-1, 0.5)");
  }
}

LameConstants lame_constants(const Material& m) {
  validate(m);
  const double lambda = m.young * m.poisson / ((1.0 + m.poisson) * (1.0 - 2.0 * m.poisson));
  const double mu = m.young / (2.0 * (1.0 + m.poisson));
  return {lambda, mu};
}

WaveSpeeds wave_speeds(const Material& m) {
  const auto [lambda, mu] = lame_constants(m);
  return {std::sqrt((lambda + 2.0 * mu) / m.density), std::sqrt(mu / m.density)};
}

Eigen::Matrix3d constitutive(const Material& m) {
  const auto [lambda, mu] = lame_constants(m);
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  d(0, 0) = d(1, 1) = lambda + 2.0 * mu;
  d(0, 1) = d(1, 0) = lambda;
  d(2, 2) = mu;
  return d;
}

}  // namespace phonband

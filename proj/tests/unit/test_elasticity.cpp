// SPDX-License-Identifier: Apache-2.0

#include "phonband/elasticity.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <doctest.h>

using namespace phonband;

namespace {
const Material kAluminum{"aluminum", 7.31e10, 0.325, 2770.0};
const Material kBrass{"brass", 9.2e10, 0.33, 8270.0};
}  // namespace

TEST_CASE("lame constants") {
  auto [l0, m0] = lame_constants({"test", 1.0, 0.0, 1.0});
  CHECK(l0 == 0.0);
  CHECK(m0 == 0.5);

  // closed-form evaluation oracle
  auto [la, ma] = lame_constants(kAluminum);
  CHECK(la == doctest::Approx(7.31e10 * 0.325 / (1.325 * 0.35)).epsilon(1e-14));
  CHECK(la == doctest::Approx(5.123e10).epsilon(1e-3));
  CHECK(ma == doctest::Approx(2.758e10).epsilon(1e-3));

  auto [lb, mb] = lame_constants(kBrass);
  CHECK(mb == doctest::Approx(3.459e10).epsilon(1e-3));
  (void)lb;
}

TEST_CASE("material validation") {
  CHECK_THROWS_AS(lame_constants({"bad", -1.0, 0.3, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lame_constants({"bad", 1.0, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lame_constants({"bad", 1.0, 0.3, 0.0}), std::invalid_argument);
}

TEST_CASE("wave speeds") {
  auto sa = wave_speeds(kAluminum);
  CHECK(sa.c_p == doctest::Approx(6197.0).epsilon(2e-4));
  CHECK(sa.c_s == doctest::Approx(3156.0).epsilon(2e-4));
  auto sb = wave_speeds(kBrass);
  CHECK(sb.c_p == doctest::Approx(4060.0).epsilon(2e-4));
  CHECK(sb.c_s == doctest::Approx(2045.0).epsilon(2e-4));

  // speed ratio depends on nu only
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unu(-0.4, 0.45);
  std::uniform_real_distribution<double> upos(0.1, 10.0);
  for (int t = 0; t < 50; ++t) {
    Material m{"rand", 1e9 * upos(rng), unu(rng), 1000.0 * upos(rng)};
    auto s = wave_speeds(m);
    CHECK(s.c_p > s.c_s);
    const double expected = std::sqrt((2.0 - 2.0 * m.poisson) / (1.0 - 2.0 * m.poisson));
    CHECK(s.c_p / s.c_s == doctest::Approx(expected).epsilon(1e-12));

    // round trip: mu = rho c_s^2, lambda + 2 mu = rho c_p^2
    auto [lambda, mu] = lame_constants(m);
    CHECK(mu == doctest::Approx(m.density * s.c_s * s.c_s).epsilon(1e-10));
    CHECK(lambda + 2.0 * mu == doctest::Approx(m.density * s.c_p * s.c_p).epsilon(1e-10));
  }
}

TEST_CASE("constitutive matrix") {
  Eigen::Matrix3d d0 = constitutive({"test", 2.0, 0.0, 1.0});
  CHECK(d0(0, 0) == doctest::Approx(2.0));
  CHECK(d0(1, 1) == doctest::Approx(2.0));
  CHECK(d0(2, 2) == doctest::Approx(1.0));
  CHECK(d0(0, 1) == 0.0);
  CHECK(d0(0, 2) == 0.0);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unu(-0.4, 0.45);
  std::uniform_real_distribution<double> upos(0.1, 10.0);
  for (int t = 0; t < 20; ++t) {
    Material m{"rand", 1e9 * upos(rng), unu(rng), 1000.0 * upos(rng)};
    Eigen::Matrix3d d = constitutive(m);
    CHECK((d - d.transpose()).norm() == 0.0);
    // positive definite: leading principal minors
    CHECK(d(0, 0) > 0.0);
    CHECK(d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0) > 0.0);
    CHECK(d.determinant() > 0.0);
  }

  for (const auto& m : {kAluminum, kBrass}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(constitutive(m));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

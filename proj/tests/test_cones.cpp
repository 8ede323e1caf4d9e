// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pdcone/cones.hpp"
#include "test_util.hpp"

using namespace pdcone;
using testutil::cone_families;
using testutil::random_cone_member;
using testutil::random_vector;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Brute-force projection onto SecondOrder(3) by scanning a fine grid of
// cone members (interior and boundary), independent of the closed form.
VectorXd grid_project_soc3(const VectorXd& y, double lo, double hi, double step) {
  VectorXd best = VectorXd::Zero(3);
  double best_d = (y - best).norm();
  for (double x1 = lo; x1 <= hi; x1 += step) {
    for (double x2 = lo; x2 <= hi; x2 += step) {
      const double nx = std::sqrt(x1 * x1 + x2 * x2);
      for (double t = nx; t <= hi; t += step) {
        const VectorXd z = vec({t, x1, x2});
        const double d = (y - z).norm();
        if (d < best_d) {
          best_d = d;
          best = z;
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("dual cone maps each family correctly") {
  CHECK(dual_cone(ConeSpec::zero(3)) == ConeSpec::full(3));
  CHECK(dual_cone(ConeSpec::full(4)) == ConeSpec::zero(4));
  CHECK(dual_cone(ConeSpec::nonneg_orthant(5)) == ConeSpec::nonneg_orthant(5));
  CHECK(dual_cone(ConeSpec::second_order(4)) == ConeSpec::second_order(4));
  CHECK(dual_cone(ConeSpec::product({ConeSpec::zero(1), ConeSpec::nonneg_orthant(2)})) ==
        ConeSpec::product({ConeSpec::full(1), ConeSpec::nonneg_orthant(2)}));
}

TEST_CASE("dual cone is involutive") {
  SplitMix64 rng(11);
  for (const auto& spec : cone_families(6)) {
    CHECK(dual_cone(dual_cone(spec)) == spec);
  }
  (void)rng;
}

TEST_CASE("cone spec invariants are enforced") {
  CHECK_THROWS_AS(ConeSpec::zero(0), std::invalid_argument);
  CHECK_THROWS_AS(ConeSpec::second_order(1), std::invalid_argument);
  const auto prod = ConeSpec::product({ConeSpec::zero(2), ConeSpec::second_order(3)});
  CHECK(prod.dim() == 5);
}

TEST_CASE("projection basics") {
  CHECK((project(ConeSpec::nonneg_orthant(2), vec({1, -2})) - vec({1, 0})).norm() == 0.0);
  CHECK((project(ConeSpec::full(2), vec({3, -4})) - vec({3, -4})).norm() == 0.0);
  CHECK(project(ConeSpec::zero(3), vec({1, 2, 3})).norm() == 0.0);
  CHECK_THROWS_AS(project(ConeSpec::zero(3), vec({1, 2})), std::invalid_argument);
}

TEST_CASE("second-order projection matches the closed form and a grid oracle") {
  const VectorXd y = vec({0.5, 1.0, 0.0});
  const VectorXd p = project(ConeSpec::second_order(3), y);
  CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(0.0).epsilon(1e-12));

  // The grid oracle cannot beat the closed form by more than a grid cell.
  const VectorXd g = grid_project_soc3(y, -2.0, 2.0, 0.01);
  CHECK((y - p).norm() <= (y - g).norm() + 1e-12);
  CHECK((p - g).norm() < 0.02);
}

TEST_CASE("projection is idempotent and lands in the cone") {
  SplitMix64 rng(5);
  for (const auto& spec : cone_families(7)) {
    for (int trial = 0; trial < 50; ++trial) {
      const VectorXd y = random_vector(rng, spec.dim(), 2.0);
      const VectorXd p = project(spec, y);
      CHECK((project(spec, p) - p).norm() <= 1e-12 * (1.0 + p.norm()));
    }
  }
}

TEST_CASE("moreau split on the orthant and the zero cone") {
  auto [d1, n1] = moreau_split(ConeSpec::nonneg_orthant(2), vec({1, -2}));
  CHECK((d1 - vec({1, 0})).norm() == 0.0);
  CHECK((n1 - vec({0, -2})).norm() == 0.0);

  auto [d2, n2] = moreau_split(ConeSpec::zero(2), vec({3, -4}));
  CHECK((d2 - vec({3, -4})).norm() == 0.0);
  CHECK(n2.norm() == 0.0);
}

TEST_CASE("moreau split on the second-order cone") {
  const VectorXd y = vec({-2, 1, 0});
  auto [yd, yn] = moreau_split(ConeSpec::second_order(3), y);
  CHECK((yd + yn - y).norm() <= 1e-12);
  CHECK(std::abs(yd.dot(yn)) <= 1e-12);
}

TEST_CASE("moreau identity and orthogonality on random vectors") {
  SplitMix64 rng(17);
  for (const auto& spec : cone_families(8)) {
    for (int trial = 0; trial < 1000; ++trial) {
      const VectorXd y = random_vector(rng, spec.dim(), 3.0);
      auto [yd, yn] = moreau_split(spec, y);
      CHECK((y - yd - yn).norm() <= 1e-10 * (1.0 + y.norm()));
      CHECK(std::abs(yd.dot(yn)) <= 1e-10 * (1.0 + y.squaredNorm()));
    }
  }
}

TEST_CASE("variational characterization of the projection") {
  SplitMix64 rng(23);
  for (const auto& spec : cone_families(6)) {
    for (int trial = 0; trial < 20; ++trial) {
      const VectorXd y = random_vector(rng, spec.dim(), 2.0);
      const VectorXd py = project(spec, y);
      for (int zs = 0; zs < 100; ++zs) {
        const VectorXd z = random_cone_member(rng, spec, 2.0);
        CHECK((z - py).dot(y - py) <= 1e-10);
      }
    }
  }
}

TEST_CASE("projection is nonexpansive") {
  SplitMix64 rng(31);
  for (const auto& spec : cone_families(9)) {
    for (int trial = 0; trial < 200; ++trial) {
      const VectorXd x = random_vector(rng, spec.dim(), 2.0);
      const VectorXd y = random_vector(rng, spec.dim(), 2.0);
      CHECK((project(spec, x) - project(spec, y)).norm() <= (x - y).norm() + 1e-12);
    }
  }
}

TEST_CASE("three-point projection inequality") {
  SplitMix64 rng(37);
  for (const auto& spec : cone_families(6)) {
    for (int trial = 0; trial < 300; ++trial) {
      const VectorXd x = random_vector(rng, spec.dim(), 2.0);
      const VectorXd y = random_vector(rng, spec.dim(), 2.0);
      const VectorXd z = random_vector(rng, spec.dim(), 2.0);
      const VectorXd pzx = project(spec, z + x);
      const VectorXd pzy = project(spec, z + y);
      const double lhs = 2.0 * (pzx - pzy).dot(x);
      const double rhs = (x - y).squaredNorm() + (pzx - z).squaredNorm() -
                         (pzy - z).squaredNorm();
      CHECK(lhs <= rhs + 1e-10);
    }
  }
}

TEST_CASE("ball projection") {
  CHECK((project_ball(vec({3, 4}), 10.0) - vec({3, 4})).norm() == 0.0);
  CHECK((project_ball(vec({3, 4}), 5.0) - vec({3, 4})).norm() == 0.0);
  CHECK((project_ball(vec({3, 4}), 1.0) - vec({0.6, 0.8})).norm() <= 1e-15);
  CHECK_THROWS_AS(project_ball(vec({1, 1}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_ball(vec({1, 1}), -1.0), std::invalid_argument);
}

TEST_CASE("ball projection preserves cone membership") {
  SplitMix64 rng(41);
  for (const auto& spec : cone_families(5)) {
    const ConeSpec dual = dual_cone(spec);
    for (int trial = 0; trial < 200; ++trial) {
      const VectorXd p = random_cone_member(rng, dual, 3.0);
      const VectorXd clipped = project_ball(p, 0.5);
      CHECK((project(dual, clipped) - clipped).norm() <= 1e-12 * (1.0 + clipped.norm()));
    }
  }
}

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pdcone/core_function.hpp"
#include "test_util.hpp"

using namespace pdcone;
using testutil::random_vector;

TEST_CASE("quadratic core divergence") {
  const auto blocks = BlockStructure::uniform(2, 2);
  const auto core = CoreFunction::quadratic(blocks);
  CHECK(core.beta() == 1.0);
  CHECK(core.B() == 1.0);

  VectorXd u(2), v(2);
  u << 1, 0;
  v << 0, 0;
  CHECK(bregman_D(core, u, v) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bregman_D(core, u, u) == 0.0);
}

TEST_CASE("weighted quadratic core") {
  const auto blocks = BlockStructure::uniform(2, 2);
  VectorXd w(2);
  w << 1, 2;
  const auto core = CoreFunction::weighted_quadratic(blocks, w);
  CHECK(core.beta() == 1.0);
  CHECK(core.B() == 2.0);

  VectorXd u(2), v(2);
  u << 1, 1;
  v << 0, 0;
  CHECK(bregman_D(core, u, v) == doctest::Approx(1.5).epsilon(1e-15));

  // D from first principles: K(u) - K(v) - <grad K(v), u - v>.
  SplitMix64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const VectorXd a = random_vector(rng, 2);
    const VectorXd b = random_vector(rng, 2);
    const double direct = core.value(a) - core.value(b) - core.gradient(b).dot(a - b);
    CHECK(bregman_D(core, a, b) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("divergence sandwich bound") {
  SplitMix64 rng(7);
  const auto blocks = BlockStructure::from_sizes({2, 3, 1});
  VectorXd w(3);
  w << 0.5, 2.0, 1.0;
  for (const auto& core :
       {CoreFunction::quadratic(blocks), CoreFunction::weighted_quadratic(blocks, w)}) {
    for (int t = 0; t < 1000; ++t) {
      const VectorXd u = random_vector(rng, 6, 2.0);
      const VectorXd v = random_vector(rng, 6, 2.0);
      const double d = bregman_D(core, u, v);
      const double sq = (u - v).squaredNorm();
      CHECK(d >= 0.5 * core.beta() * sq - 1e-12);
      CHECK(d <= 0.5 * core.B() * sq + 1e-12);
      CHECK(d >= 0.0);
    }
  }
}

TEST_CASE("core validation") {
  const auto blocks = BlockStructure::uniform(4, 2);
  VectorXd bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(CoreFunction::weighted_quadratic(blocks, bad), std::invalid_argument);
  VectorXd wrong_len(3);
  wrong_len << 1, 1, 1;
  CHECK_THROWS_AS(CoreFunction::weighted_quadratic(blocks, wrong_len), std::invalid_argument);
}

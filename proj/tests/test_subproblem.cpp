// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "pdcone/instance.hpp"
#include "pdcone/subproblem.hpp"
#include "test_util.hpp"

using namespace pdcone;
using testutil::random_vector;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Scalar problem with one block, J chosen by kind, usable for grid oracles.
ProblemSpec scalar_problem(InstanceData::NonsmoothKind kind, double lambda, double lo,
                           double hi) {
  InstanceData data;
  data.block_sizes = {1};
  data.cone = ConeSpec::zero(1);
  data.Q = MatrixXd::Identity(1, 1);
  data.c = VectorXd::Zero(1);
  data.A = MatrixXd::Zero(1, 1);
  data.b = VectorXd::Zero(1);
  data.nonsmooth_kind = kind;
  data.lambda = lambda;
  data.lo = vec({lo});
  data.hi = vec({hi});
  return build_problem(data);
}

// Exhaustive scan of <g, x> + J(x) + w/(2 eps) (x - anchor)^2.
double grid_minimize(const std::function<double(double)>& j_value, double g, double eps,
                     double w, double anchor, double lo, double hi, double step) {
  double best_x = lo;
  double best = std::numeric_limits<double>::infinity();
  for (double x = lo; x <= hi + 1e-15; x += step) {
    const double val = g * x + j_value(x) + 0.5 * w / eps * (x - anchor) * (x - anchor);
    if (val < best) {
      best = val;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("plain gradient step when J vanishes") {
  const auto prob = scalar_problem(InstanceData::NonsmoothKind::zero, 0, 0, 0);
  const auto core = CoreFunction::quadratic(prob.blocks);
  const BlockWorkItem item{.block = 0, .linear_term = vec({1}), .epsilon = 0.5,
                           .anchor = vec({1})};
  CHECK(solve_block(prob, core, item, VectorXd::Zero(1))[0] == doctest::Approx(0.5));
}

TEST_CASE("soft threshold forces small coefficients to zero") {
  const auto prob = scalar_problem(InstanceData::NonsmoothKind::l1, 2.0, 0, 0);
  const auto core = CoreFunction::quadratic(prob.blocks);
  const BlockWorkItem item{.block = 0, .linear_term = vec({1}), .epsilon = 0.5,
                           .anchor = vec({1})};
  CHECK(solve_block(prob, core, item, VectorXd::Zero(1))[0] == doctest::Approx(0.0));
}

TEST_CASE("box-constrained block against the grid oracle") {
  const auto prob = scalar_problem(InstanceData::NonsmoothKind::box, 0, 0.0, 1.0);
  const auto core = CoreFunction::quadratic(prob.blocks);
  const BlockWorkItem item{.block = 0, .linear_term = vec({-1}), .epsilon = 1.0,
                           .anchor = vec({0.9})};
  const double got = solve_block(prob, core, item, VectorXd::Zero(1))[0];
  CHECK(got == doctest::Approx(1.0));
  const double oracle = grid_minimize([](double) { return 0.0; }, -1, 1, 1, 0.9, 0, 1, 1e-4);
  CHECK(std::abs(got - oracle) <= 1e-3);
}

TEST_CASE("work item assembly") {
  InstanceData data;
  data.block_sizes = {1};
  data.cone = ConeSpec::zero(1);
  data.Q = MatrixXd::Zero(1, 1);
  data.c = vec({3});  // grad_1 G = 3 everywhere
  data.A = MatrixXd::Identity(1, 1);
  data.b = VectorXd::Zero(1);
  const auto prob = build_problem(data);

  const auto item = assemble_work_item(prob, vec({0}), vec({2}), 0, 1.0);
  CHECK(item.linear_term[0] == doctest::Approx(5.0));  // 3 + 1 * 2

  const auto no_price = assemble_work_item(prob, vec({0}), vec({0}), 0, 1.0);
  CHECK(no_price.linear_term[0] == doctest::Approx(3.0));

  CHECK_THROWS_AS(assemble_work_item(prob, vec({0}), vec({2}), 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_work_item(prob, vec({0}), vec({1, 2}), 0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("assembly includes the constraint-map adjoint") {
  // Omega(u) = ||u||^2 / 2, one block over both coordinates, q = (3):
  // the adjoint adds q * u = (3, 6) at u = (1, 2).
  InstanceData data;
  data.block_sizes = {2};
  data.cone = ConeSpec::zero(1);
  data.Q = MatrixXd::Zero(2, 2);
  data.c = VectorXd::Zero(2);
  data.A = MatrixXd::Zero(1, 2);
  data.b = VectorXd::Zero(1);
  auto prob = build_problem(data);
  prob.omega.is_zero = false;
  prob.omega.value = [](const VectorXd& u) { return vec({0.5 * u.squaredNorm()}); };
  prob.omega.block_adjoint = [blocks = prob.blocks](const VectorXd& u, int i,
                                                    const VectorXd& q) {
    return (q[0] * blocks.segment(u, i)).eval();
  };

  const VectorXd u = vec({1, 2});
  const VectorXd q = vec({3});
  const auto item = assemble_work_item(prob, u, q, 0, 1.0);
  CHECK((item.linear_term - vec({3, 6})).norm() <= 1e-12);

  // Finite-difference check of the Jacobian-adjoint against <q, Omega(.)>.
  const double h = 1e-6;
  for (int j = 0; j < 2; ++j) {
    VectorXd e = VectorXd::Zero(2);
    e[j] = h;
    const double fd =
        (q.dot(prob.omega.value(u + e)) - q.dot(prob.omega.value(u - e))) / (2 * h);
    CHECK(item.linear_term[j] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("custom Phi requires a hook") {
  ProblemSpec prob{.blocks = BlockStructure::uniform(1, 1),
                   .objective = {},
                   .nonsmooth = {nonsmooth_zero()},
                   .omega = SmoothConstraintMap::zero_map(1, BlockStructure::uniform(1, 1)),
                   .phi = CustomBlockMap{[](int, const VectorXd& ui) {
                                           return (ui.array() * ui.array()).matrix().eval();
                                         },
                                         nullptr},
                   .cone = ConeSpec::nonneg_orthant(1),
                   .constants = {}};
  prob.objective.value = [](const VectorXd& u) { return 0.5 * u.squaredNorm(); };
  prob.objective.gradient = [](const VectorXd& u) { return u; };
  const auto core = CoreFunction::quadratic(prob.blocks);

  const auto item = assemble_work_item(prob, vec({1}), vec({1}), 0, 0.5);
  CHECK_THROWS_AS(solve_block(prob, core, item, vec({1})), UnsupportedProblemError);

  // With a hook registered the result is whatever the hook returns.
  std::get<CustomBlockMap>(prob.phi).hook =
      [](int, const VectorXd&, const VectorXd&, double, const VectorXd& anchor) {
        return (0.5 * anchor).eval();
      };
  CHECK(solve_block(prob, core, item, vec({1}))[0] == doctest::Approx(0.5));
}

TEST_CASE("variational inequality at the block optimum") {
  SplitMix64 rng(211);
  for (int inst = 0; inst < 50; ++inst) {
    const int kind_draw = rng.next_index(3);
    const double lambda = 0.1 + 2.0 * rng.next_double();
    const double lo = -1.0 - rng.next_double();
    const double hi = 1.0 + rng.next_double();
    const auto kind = kind_draw == 0 ? InstanceData::NonsmoothKind::zero
                      : kind_draw == 1 ? InstanceData::NonsmoothKind::l1
                                       : InstanceData::NonsmoothKind::box;
    const auto prob = scalar_problem(kind, lambda, lo, hi);
    const auto core = CoreFunction::quadratic(prob.blocks);

    const BlockWorkItem item{.block = 0,
                             .linear_term = vec({2.0 * rng.next_gaussian()}),
                             .epsilon = 0.1 + rng.next_double(),
                             .anchor = vec({rng.next_gaussian()})};
    const VectorXd x = solve_block(prob, core, item, VectorXd::Zero(1));
    const double jx = prob.nonsmooth[0].value(x);
    REQUIRE(std::isfinite(jx));

    for (int t = 0; t < 50; ++t) {
      VectorXd z = vec({2.0 * rng.next_gaussian()});
      if (kind == InstanceData::NonsmoothKind::box) {
        z[0] = lo + (hi - lo) * rng.next_double();
      }
      const double jz = prob.nonsmooth[0].value(z);
      if (!std::isfinite(jz)) continue;
      const double vi = item.linear_term.dot(z - x) + jz - jx +
                        (1.0 / item.epsilon) * (x - item.anchor).dot(z - x);
      CHECK(vi >= -1e-9);
    }
  }
}

TEST_CASE("scalar blocks agree with grid search across nonsmooth kinds") {
  SplitMix64 rng(213);
  for (int inst = 0; inst < 200; ++inst) {
    const int kind_draw = rng.next_index(3);
    const double lambda = 0.1 + 2.0 * rng.next_double();
    const double lo = -1.5 + 0.5 * rng.next_double();
    const double hi = 0.5 + rng.next_double();
    const double g = 2.0 * rng.next_gaussian();
    const double eps = 0.1 + rng.next_double();
    const double anchor = 1.5 * rng.next_gaussian();

    InstanceData::NonsmoothKind kind;
    std::function<double(double)> j_value;
    double glo, ghi;
    if (kind_draw == 0) {
      kind = InstanceData::NonsmoothKind::zero;
      j_value = [](double) { return 0.0; };
      const double b = std::abs(anchor) + eps * (std::abs(g) + 1.0) + 1.0;
      glo = -b;
      ghi = b;
    } else if (kind_draw == 1) {
      kind = InstanceData::NonsmoothKind::l1;
      j_value = [lambda](double x) { return lambda * std::abs(x); };
      const double b = std::abs(anchor) + eps * (std::abs(g) + lambda) + 1.0;
      glo = -b;
      ghi = b;
    } else {
      kind = InstanceData::NonsmoothKind::box;
      j_value = [](double) { return 0.0; };  // the bounds shape the grid
      glo = lo;
      ghi = hi;
    }

    const auto prob = scalar_problem(kind, lambda, lo, hi);
    const auto core = CoreFunction::quadratic(prob.blocks);
    const BlockWorkItem item{.block = 0, .linear_term = vec({g}), .epsilon = eps,
                             .anchor = vec({anchor})};
    const double got = solve_block(prob, core, item, VectorXd::Zero(1))[0];
    const double oracle = grid_minimize(j_value, g, eps, 1.0, anchor, glo, ghi, 1e-4);
    CHECK(std::abs(got - oracle) <= 1e-3);
  }
}

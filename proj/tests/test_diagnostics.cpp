// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "pdcone/diagnostics.hpp"
#include "pdcone/problems.hpp"
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

GeneratedInstance equality_toy(int N) {
  MatrixXd A(1, 2);
  A << 1, 1;
  return make_equality_qp(MatrixXd::Identity(2, 2), VectorXd::Zero(2), A, vec({1}), N);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("lambda vanishes at the reference saddle point") {
  const auto toy = equality_toy(2);
  const auto core = CoreFunction::quadratic(toy.problem.blocks);
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 1.0, .mu = 10.0};
  const double lam = eval_lambda(toy.problem, core, cfg, *toy.reference,
                                 toy.reference->u_star, toy.reference->p_star, 0.17);
  CHECK(std::abs(lam) <= 1e-12);
}

TEST_CASE("single-block lambda drops its third term") {
  const auto toy = equality_toy(1);
  const auto core = CoreFunction::quadratic(toy.problem.blocks);
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 1.0, .rho = 1.0, .mu = 10.0};
  SplitMix64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const VectorXd u = random_vector(rng, 2, 2.0);
    const VectorXd p = random_vector(rng, 1, 2.0);
    const double eps = 0.01 + rng.next_double();
    const double lam = eval_lambda(toy.problem, core, cfg, *toy.reference, u, p, eps);
    const double two_terms = bregman_D(core, toy.reference->u_star, u) +
                             eps / (2.0 * 1.0 * 1.0) * (toy.reference->p_star - p).squaredNorm();
    CHECK(lam == doctest::Approx(two_terms).epsilon(1e-12));
  }
}

TEST_CASE("lambda at the origin matches the hand formula") {
  const auto toy = equality_toy(1);
  const auto core = CoreFunction::quadratic(toy.problem.blocks);
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 1.0, .rho = 1.0, .mu = 10.0};
  const double lam = eval_lambda(toy.problem, core, cfg, *toy.reference,
                                 VectorXd::Zero(2), VectorXd::Zero(1), 0.1);
  const double expected = 0.5 * toy.reference->u_star.squaredNorm() +
                          0.05 * toy.reference->p_star.squaredNorm();
  CHECK(lam == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("lambda dominates the squared primal distance") {
  const auto gen = gen_equality_qp(8, 3, 2, 6);
  const auto core = CoreFunction::quadratic(gen.problem.blocks);
  const double mu = gen.reference->p_star.norm() + 1.0;
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 1.0, .mu = mu};  // rho defaults
  SplitMix64 rng(7);
  const ConeSpec dual = dual_cone(gen.problem.cone);
  for (int t = 0; t < 300; ++t) {
    const VectorXd u = gen.reference->u_star + random_vector(rng, 8, 1.0);
    VectorXd p = project(dual, random_vector(rng, 3, 2.0));
    p = project_ball(p, mu);
    const double eps = 0.01 + 0.2 * rng.next_double();
    const double lam = eval_lambda(gen.problem, core, cfg, *gen.reference, u, p, eps);
    CHECK(lam >= 0.5 * core.beta() * (gen.reference->u_star - u).squaredNorm() - 1e-9);
  }
}

TEST_CASE("h3 vanishes when everything sits at the saddle point") {
  const auto toy = equality_toy(2);
  const auto core = CoreFunction::quadratic(toy.problem.blocks);
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 1.0, .mu = 10.0};
  const auto& ref = *toy.reference;
  const double h3 = eval_h3(toy.problem, core, cfg, ref, ref.u_star, ref.p_star,
                            ref.u_star, ref.p_star, 0.2);
  CHECK(std::abs(h3) <= 1e-12);
}

TEST_CASE("single-block h3 keeps only two terms") {
  const auto toy = equality_toy(1);
  const auto core = CoreFunction::quadratic(toy.problem.blocks);
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 2.0, .rho = 2.0, .mu = 10.0};
  SplitMix64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const VectorXd u = random_vector(rng, 2);
    const VectorXd p = random_vector(rng, 1);
    const VectorXd u0 = random_vector(rng, 2);
    const VectorXd p0 = random_vector(rng, 1);
    const double eps0 = 0.01 + rng.next_double();
    const double h3 = eval_h3(toy.problem, core, cfg, *toy.reference, u, p, u0, p0, eps0);
    const double expected =
        bregman_D(core, u, u0) + eps0 / cfg.gamma * (p - p0).squaredNorm();
    CHECK(h3 == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("h3 matches a term-by-term evaluation") {
  const auto toy = equality_toy(2);
  const auto core = CoreFunction::quadratic(toy.problem.blocks);
  SolverConfig cfg{.variant = Variant::SPDCL, .gamma = 1.5, .mu = 10.0};
  const auto& ref = *toy.reference;
  const VectorXd u = vec({0.3, -0.2});
  const VectorXd p = vec({0.4});
  const VectorXd u0 = VectorXd::Zero(2);
  const VectorXd p0 = VectorXd::Zero(1);
  const double eps0 = 0.25;
  const double N = 2.0;

  const double term1 = bregman_D(core, u, u0);
  const double term2 = (N - 1.0) / N * bregman_D(core, ref.u_star, u0);
  const double term3 = eps0 / cfg.gamma * (p - p0).squaredNorm();
  const double bracket = (ref.p_star - p0).squaredNorm() / (2.0 * cfg.gamma) +
                         eval_L_gamma(toy.problem, u0, p0, cfg.gamma) -
                         eval_L(toy.problem, ref.u_star, ref.p_star);
  const double term4 = (2.0 * N - 1.0) * (N - 1.0) * eps0 / (N * N) * bracket;

  const double h3 = eval_h3(toy.problem, core, cfg, ref, u, p, u0, p0, eps0);
  CHECK(h3 == doctest::Approx(term1 + term2 + term3 + term4).epsilon(1e-12));
}

TEST_CASE("rate fitting recovers exact power laws") {
  std::vector<TraceRecord> trace;
  for (long k = 1; k <= 100; ++k) {
    TraceRecord r;
    r.k = k;
    r.feasibility = 5.0 / static_cast<double>(k);
    r.avg_feasibility = 3.0 / std::sqrt(static_cast<double>(k));
    r.objective = 2.0;
    trace.push_back(r);
  }
  const auto one_over_k = fit_rate(trace, TraceField::feasibility, 1, 100);
  CHECK(std::abs(one_over_k.slope + 1.0) <= 1e-6);
  CHECK(one_over_k.r2 >= 0.999999);

  const auto inv_sqrt = fit_rate(trace, TraceField::avg_feasibility, 1, 100);
  CHECK(std::abs(inv_sqrt.slope + 0.5) <= 1e-6);

  const auto flat = fit_rate(trace, TraceField::objective, 1, 100);
  CHECK(std::abs(flat.slope) <= 1e-9);
}

TEST_CASE("rate fitting skips nonpositive values and wants ten records") {
  std::vector<TraceRecord> trace;
  for (long k = 1; k <= 30; ++k) {
    TraceRecord r;
    r.k = k;
    r.feasibility = k % 2 == 0 ? 1.0 / k : 0.0;  // odd records unusable
    trace.push_back(r);
  }
  CHECK_NOTHROW(fit_rate(trace, TraceField::feasibility, 1, 30));
  CHECK_THROWS_AS(fit_rate(trace, TraceField::feasibility, 1, 10), std::invalid_argument);
}

TEST_CASE("csv export shapes") {
  const std::string path = temp_path("pdcone_trace_shape.csv");
  export_trace({}, path, TraceFormat::csv);
  {
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "k,epsilon,objective,feasibility,avg_objective,avg_feasibility,L,L_gamma,lambda,eps_min");
    CHECK(!std::getline(in, line));
  }

  TraceRecord r;
  r.k = 100;
  r.epsilon = 0.1;
  r.objective = 1.0 / 3.0;
  r.feasibility = 2e-5;
  r.avg_objective = 0.2501;
  r.avg_feasibility = 3e-6;
  r.L_value = 0.26;
  r.L_gamma_value = 0.27;
  r.eps_min_so_far = 0.1;
  export_trace({r}, path, TraceFormat::csv);
  {
    std::ifstream in(path);
    std::string header, row, extra;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    CHECK(!std::getline(in, extra));
    CHECK(std::count(row.begin(), row.end(), ',') == 9);  // 10 fields
  }
  std::filesystem::remove(path);
}

TEST_CASE("csv round trip is bit exact") {
  SplitMix64 rng(12345);
  std::vector<TraceRecord> trace;
  for (long k = 1; k <= 37; ++k) {
    TraceRecord r;
    r.k = k * 13;
    r.epsilon = rng.next_double();
    r.objective = rng.next_gaussian() * 1e3;
    r.feasibility = std::exp(-static_cast<double>(k)) * rng.next_double();
    r.avg_objective = rng.next_gaussian();
    r.avg_feasibility = rng.next_double() * 1e-12;
    r.L_value = rng.next_gaussian();
    r.L_gamma_value = rng.next_gaussian();
    if (k % 3 == 0) r.lambda = rng.next_double() * 7.0;
    r.eps_min_so_far = rng.next_double();
    trace.push_back(r);
  }
  const std::string path = temp_path("pdcone_trace_roundtrip.csv");
  export_trace(trace, path, TraceFormat::csv);
  const auto back = read_trace_csv(path);
  REQUIRE(back.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(back[i].k == trace[i].k);
    CHECK(back[i].epsilon == trace[i].epsilon);
    CHECK(back[i].objective == trace[i].objective);
    CHECK(back[i].feasibility == trace[i].feasibility);
    CHECK(back[i].avg_objective == trace[i].avg_objective);
    CHECK(back[i].avg_feasibility == trace[i].avg_feasibility);
    CHECK(back[i].L_value == trace[i].L_value);
    CHECK(back[i].L_gamma_value == trace[i].L_gamma_value);
    CHECK(back[i].lambda.has_value() == trace[i].lambda.has_value());
    if (trace[i].lambda) CHECK(*back[i].lambda == *trace[i].lambda);
    CHECK(back[i].eps_min_so_far == trace[i].eps_min_so_far);
  }
  std::filesystem::remove(path);
}

TEST_CASE("json export mirrors the field names") {
  TraceRecord r;
  r.k = 7;
  r.epsilon = 0.25;
  r.objective = 1.5;
  r.lambda = 0.125;
  r.eps_min_so_far = 0.25;
  const std::string path = temp_path("pdcone_trace.json");
  export_trace({r}, path, TraceFormat::json);
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["k"] == 7);
  CHECK(j[0]["epsilon"] == 0.25);
  CHECK(j[0]["objective"] == 1.5);
  CHECK(j[0]["lambda"] == 0.125);
  CHECK(j[0]["eps_min"] == 0.25);
  std::filesystem::remove(path);
}

TEST_CASE("export failures carry the path") {
  TraceRecord r;
  r.k = 1;
  try {
    export_trace({r}, "/nonexistent_dir_pdcone/trace.csv", TraceFormat::csv);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent_dir_pdcone/trace.csv") != std::string::npos);
  }
}

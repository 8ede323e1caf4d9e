// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>

#include "pdcone/instance.hpp"

namespace pdcone {

struct GeneratedInstance {
  InstanceData data;
  ProblemSpec problem;
  std::optional<ReferenceSolution> reference;
};

/// Equality-constrained QP: G(u) = 0.5 u^T Q u + c^T u with Q symmetric
/// positive definite and condition number <= 10, J = 0, Phi(u) = A u - b
/// with full-row-rank A (orthonormalized rows), C = {0}^m. The reference
/// comes from a dense solve of the (n+m) x (n+m) KKT system, checked to
/// 1e-10. Regenerates from the next seed on rank deficiency, giving up
/// after 10 attempts.
GeneratedInstance gen_equality_qp(int n, int m, int N, std::uint64_t seed);

/// Inequality-constrained QP: same objective family, A u <= b through
/// C = nonnegative orthant, b constructed from a strictly interior Slater
/// point, optional J_i = lambda |.|. The reference enumerates active sets
/// (lambda = 0, m <= 12); for lambda > 0 it additionally enumerates
/// coordinate sign patterns while 3^n 2^m stays at desk scale. Instances
/// beyond those limits carry no reference.
GeneratedInstance gen_inequality_qp(int n, int m, int N, std::uint64_t seed,
                                    double lambda = 0.0);

/// Ball-constrained least squares through a second-order cone:
/// G(u) = 0.5 ||M u - d||^2 with ||u|| <= radius expressed as
/// (-radius, u) in -SOC(n+1). Reference by projected gradient with exact
/// ball projection, run to 1e-10.
GeneratedInstance gen_soc_ls(int n, std::uint64_t seed);

/// Deterministic builders from explicit data (used by the generators, the
/// test toys, and the CLI's instance files).
GeneratedInstance make_equality_qp(const MatrixXd& Q, const VectorXd& c, const MatrixXd& A,
                                   const VectorXd& b, int N);
GeneratedInstance make_inequality_qp(const MatrixXd& Q, const VectorXd& c, const MatrixXd& A,
                                     const VectorXd& b, int N, double lambda = 0.0);
GeneratedInstance make_soc_ls(const MatrixXd& M, const VectorXd& d, double radius);

}  // namespace pdcone

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <vector>

#include "pdcone/problem.hpp"

namespace pdcone {

/// Serializable description of a shipped problem instance: dense data only,
/// so runs are bit-reproducible across machines. Covers the generator
/// families (quadratic or least-squares objective, separable nonsmooth
/// term, affine constraint map into a cone).
struct InstanceData {
  enum class ObjectiveKind { quadratic, least_squares };
  enum class NonsmoothKind { zero, l1, box };

  std::vector<int> block_sizes;
  ConeSpec cone = ConeSpec::zero(1);

  ObjectiveKind objective_kind = ObjectiveKind::quadratic;
  MatrixXd Q;  // quadratic: 0.5 u^T Q u + c^T u
  VectorXd c;
  MatrixXd M;  // least squares: 0.5 ||M u - d||^2
  VectorXd d;

  NonsmoothKind nonsmooth_kind = NonsmoothKind::zero;
  double lambda = 0.0;  // l1 weight
  VectorXd lo, hi;      // box bounds, full length n

  MatrixXd A;  // Phi(u) = A u - b
  VectorXd b;

  ProblemConstants constants;
  std::optional<ReferenceSolution> reference;
};

/// Builds the oracle form of a serialized instance.
ProblemSpec build_problem(const InstanceData& data);

}  // namespace pdcone

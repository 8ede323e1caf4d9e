// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/core_function.hpp"

namespace pdcone {

CoreFunction::CoreFunction(BlockStructure blocks, VectorXd weights)
    : blocks_(std::move(blocks)), weights_(std::move(weights)) {
  require(weights_.size() == blocks_.N, "CoreFunction: one weight per block required");
  require(weights_.minCoeff() > 0.0, "CoreFunction: weights must be positive");
  beta_ = weights_.minCoeff();
  B_ = weights_.maxCoeff();
}

CoreFunction CoreFunction::quadratic(const BlockStructure& blocks) {
  return CoreFunction(blocks, VectorXd::Ones(blocks.N));
}

CoreFunction CoreFunction::weighted_quadratic(const BlockStructure& blocks, VectorXd weights) {
  return CoreFunction(blocks, std::move(weights));
}

double CoreFunction::value(const VectorXd& u) const {
  require(u.size() == blocks_.n, "CoreFunction::value: dimension mismatch");
  double v = 0.0;
  for (int i = 0; i < blocks_.N; ++i) {
    v += 0.5 * weights_[i] * blocks_.segment(u, i).squaredNorm();
  }
  return v;
}

VectorXd CoreFunction::gradient(const VectorXd& u) const {
  require(u.size() == blocks_.n, "CoreFunction::gradient: dimension mismatch");
  VectorXd g(u.size());
  for (int i = 0; i < blocks_.N; ++i) {
    blocks_.segment(g, i) = weights_[i] * blocks_.segment(u, i);
  }
  return g;
}

double bregman_D(const CoreFunction& core, const VectorXd& u, const VectorXd& v) {
  require(u.size() == v.size() && u.size() == core.blocks().n,
          "bregman_D: dimension mismatch");
  // For the quadratic families D(u, v) = sum_i w_i ||u_i - v_i||^2 / 2.
  double d = 0.0;
  for (int i = 0; i < core.blocks().N; ++i) {
    d += 0.5 * core.block_weight(i) *
         (core.blocks().segment(u, i) - core.blocks().segment(v, i)).squaredNorm();
  }
  return d;
}

}  // namespace pdcone

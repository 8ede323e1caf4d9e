// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include "pdcone/block_structure.hpp"
#include "pdcone/types.hpp"

namespace pdcone {

/// Additive Bregman generator K(u) = sum_i K_i(u_i) with strong-convexity
/// modulus beta and gradient-Lipschitz modulus B. The shipped families are
/// the separable quadratic K_i = ||u_i||^2 / 2 (beta = B = 1) and per-block
/// weighted quadratics K_i = w_i ||u_i||^2 / 2, which keep the block
/// subproblem in closed form.
class CoreFunction {
 public:
  static CoreFunction quadratic(const BlockStructure& blocks);
  static CoreFunction weighted_quadratic(const BlockStructure& blocks, VectorXd weights);

  double value(const VectorXd& u) const;
  VectorXd gradient(const VectorXd& u) const;

  double beta() const { return beta_; }
  double B() const { return B_; }
  double block_weight(int i) const { return weights_[i]; }
  const BlockStructure& blocks() const { return blocks_; }

 private:
  CoreFunction(BlockStructure blocks, VectorXd weights);
  BlockStructure blocks_;
  VectorXd weights_;  // one weight per block
  double beta_;
  double B_;
};

/// Bregman divergence D(u, v) = K(u) - K(v) - <grad K(v), u - v>.
/// Nonnegative, zero at u = v, and sandwiched between beta/2 and B/2 times
/// the squared distance.
double bregman_D(const CoreFunction& core, const VectorXd& u, const VectorXd& v);

}  // namespace pdcone

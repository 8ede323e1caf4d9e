// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/subproblem.hpp"

namespace pdcone {

BlockWorkItem assemble_work_item(const ProblemSpec& prob, const VectorXd& u,
                                 const VectorXd& q, int i, double epsilon) {
  require(u.size() == prob.n(), "assemble_work_item: primal dimension mismatch");
  require(q.size() == prob.m(), "assemble_work_item: price dimension mismatch");
  require(i >= 0 && i < prob.blocks.N, "assemble_work_item: block index out of range");
  require(epsilon > 0.0, "assemble_work_item: epsilon must be positive");

  BlockWorkItem item;
  item.block = i;
  item.epsilon = epsilon;
  item.anchor = prob.blocks.segment(u, i);
  item.linear_term = block_gradient(prob, u, i);
  if (!prob.omega.is_zero) {
    item.linear_term += prob.omega.block_adjoint(u, i, q);
  }
  if (prob.phi_is_linear()) {
    const auto& lin = prob.phi_linear();
    item.linear_term +=
        lin.A.middleCols(prob.blocks.offset(i), prob.blocks.size(i)).transpose() * q;
  }
  return item;
}

VectorXd solve_block(const ProblemSpec& prob, const CoreFunction& core,
                     const BlockWorkItem& item, const VectorXd& q) {
  require(item.epsilon > 0.0, "solve_block: epsilon must be positive");
  const int i = item.block;
  require(i >= 0 && i < prob.blocks.N, "solve_block: block index out of range");
  require(item.linear_term.size() == prob.blocks.size(i),
          "solve_block: linear term has wrong block length");

  const double step = item.epsilon / core.block_weight(i);
  if (!prob.phi_is_linear()) {
    const auto& cust = std::get<CustomBlockMap>(prob.phi);
    if (!cust.hook) {
      throw UnsupportedProblemError(
          "solve_block: nonlinear Phi requires a registered block hook");
    }
    return cust.hook(i, item.linear_term, q, step, item.anchor);
  }
  return prob.nonsmooth[i].prox(item.anchor - step * item.linear_term, step);
}

}  // namespace pdcone

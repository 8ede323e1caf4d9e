// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include "pdcone/core_function.hpp"
#include "pdcone/problem.hpp"

namespace pdcone {

/// Data of the per-block primal problem for block i:
///   min_{x in U_i}  <linear_term, x> + J_i(x) + (1/epsilon) D_i(x, anchor).
/// For linear Phi the price term <q, A_i x> is folded into linear_term.
struct BlockWorkItem {
  int block = 0;
  VectorXd linear_term;  // assembled tilt g_i
  double epsilon = 0.0;
  VectorXd anchor;       // u_i at the current iterate
};

/// Assembles g_i = grad_i G(u) + (grad_i Omega(u))^T q + A_i^T q (the last
/// term only for linear Phi; with a custom Phi the price term is owned by
/// the registered hook).
BlockWorkItem assemble_work_item(const ProblemSpec& prob, const VectorXd& u,
                                 const VectorXd& q, int i, double epsilon);

/// Solves the block problem exactly. With a quadratic core of block weight
/// w_i this is prox_i(anchor - (epsilon / w_i) g_i, epsilon / w_i). A
/// custom Phi dispatches to its registered hook and throws
/// UnsupportedProblemError when none is registered.
VectorXd solve_block(const ProblemSpec& prob, const CoreFunction& core,
                     const BlockWorkItem& item, const VectorXd& q);

}  // namespace pdcone

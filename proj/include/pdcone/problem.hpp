// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "pdcone/block_structure.hpp"
#include "pdcone/cones.hpp"
#include "pdcone/types.hpp"

namespace pdcone {

/// Smooth convex objective oracle G. block_gradient may be left empty, in
/// which case it is derived from the full gradient.
struct SmoothObjective {
  std::function<double(const VectorXd&)> value;
  std::function<VectorXd(const VectorXd&)> gradient;
  std::function<VectorXd(const VectorXd&, int)> block_gradient;  // optional
};

/// Per-block nonsmooth term J_i fused with the indicator of U_i.
///
/// value returns +inf outside dom J_i (the infeasible-for-J sentinel);
/// prox(v, step) solves min_{x in U_i} J_i(x) + ||x - v||^2 / (2 step).
struct NonsmoothBlock {
  std::function<double(const VectorXd&)> value;
  std::function<VectorXd(const VectorXd&, double)> prox;
};

NonsmoothBlock nonsmooth_zero();
NonsmoothBlock nonsmooth_l1(double lambda);
NonsmoothBlock nonsmooth_box(VectorXd lo, VectorXd hi);

/// Smooth cone-convex constraint map Omega: R^n -> R^m. block_adjoint
/// computes (grad_i Omega(u))^T q. May be the zero map.
struct SmoothConstraintMap {
  std::function<VectorXd(const VectorXd&)> value;
  std::function<VectorXd(const VectorXd&, int, const VectorXd&)> block_adjoint;
  bool is_zero = false;

  static SmoothConstraintMap zero_map(int m, const BlockStructure& blocks);
};

/// Custom per-block subproblem solver for nonlinear Phi. Receives the
/// smooth linear term (from G and Omega), the current price vector q, the
/// effective proximal step, and the anchor; must return the exact
/// minimizer of <g, x> + J_i(x) + <q, Phi_i(x)> + ||x - anchor||^2 / (2 step)
/// over U_i. Correctness is the caller's responsibility.
using BlockSolveHook =
    std::function<VectorXd(int i, const VectorXd& g, const VectorXd& q, double step,
                           const VectorXd& anchor)>;

/// Affine block-additive map Phi(u) = A u - b, the shipped closed-form path.
struct LinearMap {
  MatrixXd A;  // m x n
  VectorXd b;  // length m
};

/// General block-additive map Phi(u) = sum_i Phi_i(u_i); requires a
/// registered hook before the block subproblem can be solved.
struct CustomBlockMap {
  std::function<VectorXd(int, const VectorXd&)> block_value;  // Phi_i(u_i) in R^m
  BlockSolveHook hook;
};

using PhiOracle = std::variant<LinearMap, CustomBlockMap>;

/// Analytic constants of the problem class: gradient Lipschitz modulus of
/// G, Lipschitz modulus of Theta, scalar curvature bound of Omega (zero
/// for affine constraints), and the linear subgradient growth of J.
struct ProblemConstants {
  double B_G = 0.0;
  double tau = 0.0;
  double T_bar = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

enum class Provenance { analytic, reference_solver };

/// Known saddle point of a problem instance, used by diagnostics and tests.
struct ReferenceSolution {
  VectorXd u_star;
  VectorXd p_star;
  double F_star = 0.0;
  Provenance provenance = Provenance::reference_solver;
};

/// A cone-constrained composite instance:
///   min G(u) + sum_i J_i(u_i)  s.t.  Omega(u) + Phi(u) in -C,  u in U.
/// Immutable after construction; all oracles must be reentrant.
struct ProblemSpec {
  BlockStructure blocks;
  SmoothObjective objective;            // G
  std::vector<NonsmoothBlock> nonsmooth;  // J_i + indicator of U_i, size N
  SmoothConstraintMap omega;
  PhiOracle phi;
  ConeSpec cone;
  ProblemConstants constants;

  int n() const { return blocks.n; }
  int m() const { return cone.dim(); }
  int block_count() const { return blocks.N; }

  bool phi_is_linear() const { return std::holds_alternative<LinearMap>(phi); }
  const LinearMap& phi_linear() const { return std::get<LinearMap>(phi); }

  /// Throws std::invalid_argument on inconsistent shapes.
  void validate() const;
};

/// F(u) = G(u) + sum_i J_i(u_i); +inf when u lies outside dom J.
double eval_objective(const ProblemSpec& prob, const VectorXd& u);

/// Theta(u) = Omega(u) + Phi(u).
VectorXd eval_theta(const ProblemSpec& prob, const VectorXd& u);

/// ||Pi_{C*}(Theta(u))||; zero exactly when Theta(u) lies in -C.
double feasibility_residual(const ProblemSpec& prob, const VectorXd& u);

/// Gradient of G restricted to block i.
VectorXd block_gradient(const ProblemSpec& prob, const VectorXd& u, int i);

/// Empirical lower estimates of B_G, tau and T_bar from oracle samples in
/// the box [lo, hi]. For linear Phi with zero Omega, tau is computed
/// exactly as the spectral norm of A (power iteration, 1e-8 relative).
/// B_G sampling mixes random pairs with gradient-difference power-iteration
/// directions, so quadratic objectives resolve to the spectral norm of the
/// Hessian. User-supplied constants always take precedence over estimates;
/// c1 and c2 are never estimated.
ProblemConstants estimate_constants(const ProblemSpec& prob, const VectorXd& lo,
                                    const VectorXd& hi, int sample_count,
                                    std::uint64_t rng_seed);

}  // namespace pdcone

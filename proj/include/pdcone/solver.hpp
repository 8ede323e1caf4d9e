// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pdcone/core_function.hpp"
#include "pdcone/problem.hpp"
#include "pdcone/rng.hpp"
#include "pdcone/trace.hpp"

namespace pdcone {

enum class Variant { SPDCL, SPDCL_CONST, VAPP };

/// Algorithm parameters.
///
/// rho defaults to gamma / (2N - 1) and may only be lowered; together with
/// the ball projection this keeps the dual update a convex combination, so
/// p stays in C* whenever p0 does. mu is the dual-ball radius required by
/// the SPDCL variant (a bound on the dual optimum plus one; see README for
/// the Slater-point recipe). The constant-step variant instead requires
/// epsilon_const in (0, beta / (B_G + gamma tau^2)) and a curvature-free
/// constraint map, and runs without the dual ball.
struct SolverConfig {
  Variant variant = Variant::SPDCL;
  double gamma = 1.0;
  std::optional<double> rho;            // default gamma / (2N - 1)
  double epsilon_init = 1e9;            // the scheme's eps^{-1}
  std::optional<double> mu;             // SPDCL only
  std::optional<double> epsilon_const;  // SPDCL_CONST only
  long max_iter = 1000;
  double tol_feas = 0.0;
  double tol_obj_change = 0.0;
  std::uint64_t rng_seed = 0;
  long trace_stride = 100;
  std::optional<VectorXd> u0;  // default: zero vector (must lie in U)
  std::optional<VectorXd> p0;  // default: zero vector (always in C*)
  bool allow_p0_outside_dual = false;

  double resolved_rho(int N) const { return rho ? *rho : gamma / (2.0 * N - 1.0); }
};

/// Validates config against a problem/core pair; throws ConfigError.
void validate_config(const SolverConfig& config, const ProblemSpec& prob,
                     const CoreFunction& core);

/// Evolving iterate. epsilon holds the last step used (eps^{k-1}); q caches
/// Pi(p^k + gamma Theta(u^k)) and theta caches Theta(u^k). The accumulators
/// carry sum eps^j, sum eps^j u^{j+1} and sum eps^j q^j for the averaged
/// pair, and eps_min the smallest step realized so far.
struct IterateState {
  long k = 0;
  VectorXd u, p;
  double epsilon = 0.0;
  VectorXd q;
  VectorXd q_half;
  VectorXd theta;
  double sum_eps = 0.0;
  VectorXd avg_u_accum, avg_q_accum;
  double eps_min = 0.0;
  double eps0 = 0.0;  // realized eps at k = 0

  VectorXd u_avg() const { return sum_eps > 0.0 ? (avg_u_accum / sum_eps).eval() : u; }
  VectorXd p_avg() const { return sum_eps > 0.0 ? (avg_q_accum / sum_eps).eval() : q; }
};

IterateState init_state(const ProblemSpec& prob, const CoreFunction& core,
                        const SolverConfig& config);

/// eps^k = min(eps_prev, beta / (2 (B_G + ||q|| T_bar + gamma tau^2))).
/// When the denominator vanishes (no curvature at all) eps_prev is kept.
double stepsize_update(double eps_prev, const VectorXd& q, const ProblemConstants& consts,
                       double gamma, double beta);

/// p <- P_mu(p + (rho / gamma) (q_half - p)).
VectorXd dual_update(const VectorXd& p, const VectorXd& q_half, double rho, double gamma,
                     double mu);

/// One SPDCL (or constant-step) iteration: step-size rule, uniform block
/// draw, single-block primal update, relaxed ball-projected dual update,
/// average accumulation. Blocks other than the drawn one are untouched.
void spdcl_step(const ProblemSpec& prob, const CoreFunction& core,
                const SolverConfig& config, IterateState& state, SplitMix64& rng);

/// One deterministic iteration: all blocks updated from the same anchor,
/// then p <- Pi(p + gamma Theta(u_new)). Shares the SPDCL step-size rule so
/// the two methods coincide at N = 1.
void vapp_step(const ProblemSpec& prob, const CoreFunction& core,
               const SolverConfig& config, IterateState& state);

struct RunResult {
  IterateState state;
  VectorXd u_avg, p_avg;
  std::vector<TraceRecord> trace;
  std::vector<Checkpoint> checkpoints;
  long iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
};

/// Drives the configured variant until max_iter, or until the averaged
/// iterate satisfies feasibility_residual <= tol_feas and the objective
/// change over a 100-iteration window drops below tol_obj_change. Emits a
/// TraceRecord every trace_stride iterations and snapshots at the requested
/// checkpoint iterations (0 allowed).
RunResult run(const ProblemSpec& prob, const CoreFunction& core, const SolverConfig& config,
              const ReferenceSolution* reference = nullptr,
              const std::vector<long>& checkpoint_iters = {});

}  // namespace pdcone

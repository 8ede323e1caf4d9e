// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "pdcone/diagnostics.hpp"
#include "pdcone/lagrangian.hpp"
#include "pdcone/subproblem.hpp"

namespace pdcone {

void validate_config(const SolverConfig& config, const ProblemSpec& prob,
                     const CoreFunction& core) {
  if (config.gamma <= 0.0) throw ConfigError("solver: gamma must be positive");
  if (config.epsilon_init <= 0.0) throw ConfigError("solver: epsilon_init must be positive");
  if (config.max_iter < 0) throw ConfigError("solver: max_iter must be nonnegative");
  if (config.trace_stride < 1) throw ConfigError("solver: trace_stride must be >= 1");

  const int N = prob.blocks.N;
  const double rho = config.resolved_rho(N);
  const double rho_scheme = config.gamma / (2.0 * N - 1.0);
  if (rho <= 0.0) throw ConfigError("solver: rho must be positive");
  if (rho > config.gamma) {
    throw ConfigError("solver: rho must not exceed gamma (dual update must stay a convex combination)");
  }
  if (rho > rho_scheme * (1.0 + 1e-12)) {
    throw ConfigError("solver: rho may only be lowered below gamma/(2N-1), never raised");
  }

  switch (config.variant) {
    case Variant::SPDCL:
      if (!config.mu) {
        throw ConfigError(
            "solver: SPDCL needs the dual-ball radius mu for its P_mu projection; "
            "supply mu (a bound on the dual optimum plus one)");
      }
      if (*config.mu <= 0.0) throw ConfigError("solver: mu must be positive");
      break;
    case Variant::SPDCL_CONST: {
      if (!config.epsilon_const) {
        throw ConfigError("solver: SPDCL_CONST needs epsilon_const");
      }
      const double bound =
          core.beta() / (prob.constants.B_G + config.gamma * prob.constants.tau * prob.constants.tau);
      if (!(*config.epsilon_const > 0.0) || !(*config.epsilon_const < bound)) {
        throw ConfigError("solver: constant step must satisfy 0 < epsilon < beta/(B_G + gamma tau^2) strictly");
      }
      if (prob.constants.T_bar != 0.0) {
        throw ConfigError(
            "solver: the constant-step variant requires a curvature-free constraint map (T_bar = 0)");
      }
      break;
    }
    case Variant::VAPP:
      break;
  }

  if (config.u0 && config.u0->size() != prob.n()) {
    throw ConfigError("solver: u0 has wrong length");
  }
  if (config.p0 && config.p0->size() != prob.m()) {
    throw ConfigError("solver: p0 has wrong length");
  }
}

IterateState init_state(const ProblemSpec& prob, const CoreFunction& core,
                        const SolverConfig& config) {
  validate_config(config, prob, core);
  IterateState st;
  st.u = config.u0 ? *config.u0 : VectorXd::Zero(prob.n());
  st.p = config.p0 ? *config.p0 : VectorXd::Zero(prob.m());

  if (!std::isfinite(eval_objective(prob, st.u))) {
    throw ConfigError("solver: u0 lies outside the domain of J/U");
  }
  const ConeSpec dual = dual_cone(prob.cone);
  if (!config.allow_p0_outside_dual) {
    const double dist = (st.p - project(dual, st.p)).norm();
    if (dist > 1e-9 * (1.0 + st.p.norm())) {
      throw ConfigError("solver: p0 must lie in C* (set allow_p0_outside_dual to override)");
    }
  }

  st.epsilon = config.epsilon_init;
  st.theta = eval_theta(prob, st.u);
  st.q = project(dual, st.p + config.gamma * st.theta);
  st.q_half = st.q;
  st.avg_u_accum = VectorXd::Zero(prob.n());
  st.avg_q_accum = VectorXd::Zero(prob.m());
  st.eps_min = std::numeric_limits<double>::infinity();
  st.eps0 = std::numeric_limits<double>::quiet_NaN();
  return st;
}

double stepsize_update(double eps_prev, const VectorXd& q, const ProblemConstants& consts,
                       double gamma, double beta) {
  require(eps_prev > 0.0, "stepsize_update: eps_prev must be positive");
  const double denom = consts.B_G + q.norm() * consts.T_bar + gamma * consts.tau * consts.tau;
  if (denom == 0.0) return eps_prev;
  return std::min(eps_prev, beta / (2.0 * denom));
}

VectorXd dual_update(const VectorXd& p, const VectorXd& q_half, double rho, double gamma,
                     double mu) {
  require(rho > 0.0 && gamma > 0.0, "dual_update: rho and gamma must be positive");
  return project_ball(p + (rho / gamma) * (q_half - p), mu);
}

namespace {

// Step size the next iteration will use given the cached q^k.
double next_epsilon(const ProblemSpec& prob, const CoreFunction& core,
                    const SolverConfig& config, const IterateState& state) {
  if (config.variant == Variant::SPDCL_CONST) return *config.epsilon_const;
  return stepsize_update(state.epsilon, state.q, prob.constants, config.gamma, core.beta());
}

void accumulate_and_refresh(const ProblemSpec& prob, const SolverConfig& config,
                            IterateState& state, VectorXd&& u_new, VectorXd&& theta_new,
                            VectorXd&& p_new, VectorXd&& q_half, double eps_k) {
  state.sum_eps += eps_k;
  state.avg_u_accum += eps_k * u_new;
  state.avg_q_accum += eps_k * state.q;  // weights pair with q^k at the anchor
  state.u = std::move(u_new);
  state.theta = std::move(theta_new);
  state.p = std::move(p_new);
  state.q_half = std::move(q_half);
  state.q = project(dual_cone(prob.cone), state.p + config.gamma * state.theta);
  state.epsilon = eps_k;
  if (state.k == 0) state.eps0 = eps_k;
  state.eps_min = std::min(state.eps_min, eps_k);
  ++state.k;
}

}  // namespace

void spdcl_step(const ProblemSpec& prob, const CoreFunction& core,
                const SolverConfig& config, IterateState& state, SplitMix64& rng) {
  const double eps_k = next_epsilon(prob, core, config, state);
  const int i = rng.next_index(prob.blocks.N);

  const BlockWorkItem item = assemble_work_item(prob, state.u, state.q, i, eps_k);
  VectorXd u_new = state.u;
  prob.blocks.segment(u_new, i) = solve_block(prob, core, item, state.q);

  VectorXd theta_new = eval_theta(prob, u_new);
  VectorXd q_half = project(dual_cone(prob.cone), state.p + config.gamma * theta_new);

  const double rho = config.resolved_rho(prob.blocks.N);
  VectorXd p_new = state.p + (rho / config.gamma) * (q_half - state.p);
  if (config.variant == Variant::SPDCL) p_new = project_ball(p_new, *config.mu);

  accumulate_and_refresh(prob, config, state, std::move(u_new), std::move(theta_new),
                         std::move(p_new), std::move(q_half), eps_k);
}

void vapp_step(const ProblemSpec& prob, const CoreFunction& core,
               const SolverConfig& config, IterateState& state) {
  const double eps_k = next_epsilon(prob, core, config, state);

  // All blocks move from the same anchor; with additive J and core this
  // parallel sweep is the exact joint minimizer.
  VectorXd u_new(prob.n());
  for (int i = 0; i < prob.blocks.N; ++i) {
    const BlockWorkItem item = assemble_work_item(prob, state.u, state.q, i, eps_k);
    prob.blocks.segment(u_new, i) = solve_block(prob, core, item, state.q);
  }

  VectorXd theta_new = eval_theta(prob, u_new);
  VectorXd q_half = project(dual_cone(prob.cone), state.p + config.gamma * theta_new);
  VectorXd p_new = q_half;

  accumulate_and_refresh(prob, config, state, std::move(u_new), std::move(theta_new),
                         std::move(p_new), std::move(q_half), eps_k);
}

namespace {

TraceRecord make_record(const ProblemSpec& prob, const CoreFunction& core,
                        const SolverConfig& config, const IterateState& state,
                        const ReferenceSolution* reference) {
  TraceRecord rec;
  rec.k = state.k;
  rec.epsilon = state.epsilon;
  rec.objective = eval_objective(prob, state.u);
  const ConeSpec dual = dual_cone(prob.cone);
  rec.feasibility = project(dual, state.theta).norm();
  const VectorXd ubar = state.u_avg();
  rec.avg_objective = eval_objective(prob, ubar);
  rec.avg_feasibility = project(dual, eval_theta(prob, ubar)).norm();
  rec.L_value = rec.objective + state.p.dot(state.theta);
  rec.L_gamma_value =
      rec.objective + eval_phi(prob.cone, state.theta, state.p, config.gamma);
  rec.eps_min_so_far = state.eps_min;
  if (reference != nullptr) {
    rec.lambda = eval_lambda(prob, core, config, *reference, state.u, state.p,
                             next_epsilon(prob, core, config, state));
  }
  return rec;
}

Checkpoint make_checkpoint(const ProblemSpec& prob, const CoreFunction& core,
                           const SolverConfig& config, const IterateState& state,
                           const ReferenceSolution* reference) {
  Checkpoint cp;
  cp.k = state.k;
  cp.u = state.u;
  cp.p = state.p;
  cp.u_avg = state.u_avg();
  cp.p_avg = state.p_avg();
  cp.eps_next = next_epsilon(prob, core, config, state);
  cp.eps_min = state.eps_min;
  cp.sum_eps = state.sum_eps;
  if (reference != nullptr) {
    cp.lambda =
        eval_lambda(prob, core, config, *reference, state.u, state.p, cp.eps_next);
  }
  return cp;
}

}  // namespace

RunResult run(const ProblemSpec& prob, const CoreFunction& core, const SolverConfig& config,
              const ReferenceSolution* reference, const std::vector<long>& checkpoint_iters) {
  const auto t_start = std::chrono::steady_clock::now();

  RunResult result;
  IterateState state = init_state(prob, core, config);
  SplitMix64 rng(config.rng_seed);

  std::vector<long> cps = checkpoint_iters;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  std::size_t cp_idx = 0;
  auto maybe_checkpoint = [&]() {
    while (cp_idx < cps.size() && cps[cp_idx] == state.k) {
      result.checkpoints.push_back(make_checkpoint(prob, core, config, state, reference));
      ++cp_idx;
    }
  };
  maybe_checkpoint();

  const ConeSpec dual = dual_cone(prob.cone);
  double prev_window_obj = std::numeric_limits<double>::quiet_NaN();
  long last_traced = -1;

  while (state.k < config.max_iter) {
    if (config.variant == Variant::VAPP) {
      vapp_step(prob, core, config, state);
    } else {
      spdcl_step(prob, core, config, state, rng);
    }

    if (state.k % config.trace_stride == 0) {
      result.trace.push_back(make_record(prob, core, config, state, reference));
      last_traced = state.k;
    }
    maybe_checkpoint();

    if (state.k % 100 == 0) {
      const VectorXd ubar = state.u_avg();
      const double obj = eval_objective(prob, ubar);
      const double feas = project(dual, eval_theta(prob, ubar)).norm();
      if (!std::isnan(prev_window_obj) && feas <= config.tol_feas &&
          std::abs(obj - prev_window_obj) <= config.tol_obj_change) {
        result.converged = true;
        break;
      }
      prev_window_obj = obj;
    }
  }

  if (state.k > 0 && last_traced != state.k) {
    result.trace.push_back(make_record(prob, core, config, state, reference));
  }

  result.iterations = state.k;
  result.u_avg = state.u_avg();
  result.p_avg = state.p_avg();
  result.state = std::move(state);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace pdcone

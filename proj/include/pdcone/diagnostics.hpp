// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pdcone/core_function.hpp"
#include "pdcone/lagrangian.hpp"
#include "pdcone/problem.hpp"
#include "pdcone/solver.hpp"
#include "pdcone/trace.hpp"

namespace pdcone {

/// Lyapunov value at (u', p') relative to the reference saddle point:
///   D(u*, u') + eps / (2 N rho) ||p* - p'||^2
///   + (N - 1) eps / N * (L_gamma(u', p') - L(u*, p*)).
/// Nonnegative whenever p' lies in C*, and zero at the saddle point itself.
double eval_lambda(const ProblemSpec& prob, const CoreFunction& core,
                   const SolverConfig& config, const ReferenceSolution& reference,
                   const VectorXd& u_prime, const VectorXd& p_prime, double epsilon_k);

/// The h3(u, p) constant of the averaged-iterate gap bound:
///   D(u, u0) + (N-1)/N D(u*, u0) + eps0 / gamma ||p - p0||^2
///   + (2N-1)(N-1) eps0 / N^2 * (||p* - p0||^2 / (2 gamma) + L_gamma(u0, p0) - L(u*, p*)).
/// The expected bifunction gap of the averaged pair after t+1 iterations is
/// bounded by N h3(u, p) / (eps_min (t + 1)).
double eval_h3(const ProblemSpec& prob, const CoreFunction& core,
               const SolverConfig& config, const ReferenceSolution& reference,
               const VectorXd& u, const VectorXd& p, const VectorXd& u0,
               const VectorXd& p0, double eps0);

enum class TraceField {
  epsilon,
  objective,
  feasibility,
  avg_objective,
  avg_feasibility,
  L_value,
  L_gamma_value,
  lambda,
  eps_min
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares fit of log(field) against log(k) over records with
/// k_min <= k <= k_max. Records with nonpositive field values are skipped;
/// fewer than 10 usable records is an error.
RateFit fit_rate(const std::vector<TraceRecord>& trace, TraceField field, long k_min,
                 long k_max);

/// Same fit on raw (k, value) points, for cross-seed aggregates.
RateFit fit_loglog(const std::vector<std::pair<double, double>>& points);

enum class TraceFormat { csv, json };

/// Writes the trace with 17 significant digits (lossless double round
/// trip). CSV columns, in order: k, epsilon, objective, feasibility,
/// avg_objective, avg_feasibility, L, L_gamma, lambda (empty when absent),
/// eps_min. Files are written atomically (write-then-rename).
void export_trace(const std::vector<TraceRecord>& trace, const std::string& path,
                  TraceFormat format);

/// Parses a CSV produced by export_trace.
std::vector<TraceRecord> read_trace_csv(const std::string& path);

}  // namespace pdcone

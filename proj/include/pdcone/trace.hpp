// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <vector>

#include "pdcone/types.hpp"

namespace pdcone {

/// Per-iteration diagnostics. k counts completed iterations; a record at k
/// describes the iterate u^k, the last step size used, and the running
/// weighted averages over iterations 0..k-1.
struct TraceRecord {
  long k = 0;
  double epsilon = 0.0;
  double objective = 0.0;        // F(u^k)
  double feasibility = 0.0;      // ||Pi(Theta(u^k))||
  double avg_objective = 0.0;    // F(u_bar)
  double avg_feasibility = 0.0;  // ||Pi(Theta(u_bar))||
  double L_value = 0.0;
  double L_gamma_value = 0.0;
  std::optional<double> lambda;  // requires a reference saddle point
  double eps_min_so_far = 0.0;
};

/// Snapshot of the full iterate taken at a requested iteration count,
/// including the averaged pair and the step size the next iteration will
/// use. Used by rate and Lyapunov diagnostics.
struct Checkpoint {
  long k = 0;
  VectorXd u, p;
  VectorXd u_avg, p_avg;
  double eps_next = 0.0;
  double eps_min = 0.0;
  double sum_eps = 0.0;
  std::optional<double> lambda;
};

}  // namespace pdcone

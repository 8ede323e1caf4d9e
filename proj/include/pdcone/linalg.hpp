// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include "pdcone/types.hpp"

namespace pdcone {

/// Largest singular value of A by power iteration on A^T A, with a
/// deterministic start vector. rel_tol bounds the relative change of the
/// iterate between sweeps.
double spectral_norm(const MatrixXd& A, double rel_tol = 1e-8, int max_iter = 10000);

}  // namespace pdcone

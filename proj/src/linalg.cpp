// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/linalg.hpp"

#include <cmath>

namespace pdcone {

double spectral_norm(const MatrixXd& A, double rel_tol, int max_iter) {
  require(A.rows() > 0 && A.cols() > 0, "spectral_norm: empty matrix");
  VectorXd v = VectorXd::Ones(A.cols());
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] += 1e-3 * static_cast<double>(k % 7);
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    VectorXd w = A.transpose() * (A * v);
    const double next = w.norm();
    if (next < 1e-300) return 0.0;
    w /= next;
    if (std::abs(next - sigma2) <= rel_tol * std::max(1.0, next)) {
      sigma2 = next;
      break;
    }
    sigma2 = next;
    v = w;
  }
  return std::sqrt(sigma2);
}

}  // namespace pdcone

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdcone {

double eval_L(const ProblemSpec& prob, const VectorXd& u, const VectorXd& p) {
  require(p.size() == prob.m(), "eval_L: dual vector must have length m");
  return eval_objective(prob, u) + p.dot(eval_theta(prob, u));
}

double eval_phi(const ConeSpec& coneC, const VectorXd& theta, const VectorXd& p,
                double gamma) {
  require(gamma > 0.0, "eval_phi: gamma must be positive");
  require(theta.size() == coneC.dim() && p.size() == coneC.dim(),
          "eval_phi: dimension mismatch");
  const VectorXd pi = project(dual_cone(coneC), p + gamma * theta);
  return (pi.squaredNorm() - p.squaredNorm()) / (2.0 * gamma);
}

VectorXd grad_phi_p(const ConeSpec& coneC, const VectorXd& theta, const VectorXd& p,
                    double gamma) {
  require(gamma > 0.0, "grad_phi_p: gamma must be positive");
  require(theta.size() == coneC.dim() && p.size() == coneC.dim(),
          "grad_phi_p: dimension mismatch");
  return (project(dual_cone(coneC), p + gamma * theta) - p) / gamma;
}

VectorXd grad_phi_theta(const ConeSpec& coneC, const VectorXd& theta, const VectorXd& p,
                        double gamma) {
  require(gamma > 0.0, "grad_phi_theta: gamma must be positive");
  require(theta.size() == coneC.dim() && p.size() == coneC.dim(),
          "grad_phi_theta: dimension mismatch");
  return project(dual_cone(coneC), p + gamma * theta);
}

double eval_L_gamma(const ProblemSpec& prob, const VectorXd& u, const VectorXd& p,
                    double gamma) {
  return eval_objective(prob, u) + eval_phi(prob.cone, eval_theta(prob, u), p, gamma);
}

SaddleResidual saddle_residual(const ProblemSpec& prob, const VectorXd& u,
                               const VectorXd& p, double gamma,
                               const std::vector<VectorXd>& probe_points) {
  require(!probe_points.empty(), "saddle_residual: probe set must be nonempty");
  require(gamma > 0.0, "saddle_residual: gamma must be positive");

  SaddleResidual res;
  const VectorXd theta_u = eval_theta(prob, u);
  const VectorXd grad_u = prob.objective.gradient(u);

  double j_u = 0.0;
  for (int i = 0; i < prob.blocks.N; ++i) {
    j_u += prob.nonsmooth[i].value(prob.blocks.segment(u, i));
  }

  if (!std::isfinite(j_u)) {
    res.stationarity = std::numeric_limits<double>::infinity();
  } else {
    for (const VectorXd& z : probe_points) {
      double j_z = 0.0;
      for (int i = 0; i < prob.blocks.N; ++i) {
        j_z += prob.nonsmooth[i].value(prob.blocks.segment(z, i));
      }
      if (!std::isfinite(j_z)) continue;  // probe outside U contributes nothing
      const double vi = grad_u.dot(z - u) + j_z - j_u +
                        p.dot(eval_theta(prob, z) - theta_u);
      res.stationarity = std::max(res.stationarity, -vi);
    }
    res.stationarity = std::max(res.stationarity, 0.0);
  }

  const ConeSpec dual = dual_cone(prob.cone);
  res.primal_feasibility = project(dual, theta_u).norm();
  res.complementarity = std::abs(p.dot(theta_u));
  res.dual_cone_violation = (p - project(dual, p)).norm();
  return res;
}

}  // namespace pdcone

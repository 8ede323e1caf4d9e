// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "pdcone/problem.hpp"

namespace pdcone {

/// L(u, p) = F(u) + <p, Theta(u)>.
double eval_L(const ProblemSpec& prob, const VectorXd& u, const VectorXd& p);

/// Smoothed penalty phi(theta, p) = (||Pi(p + gamma theta)||^2 - ||p||^2) / (2 gamma),
/// where Pi projects onto the conjugate cone of coneC. Equals the minimum of
/// <p, theta - xi> + (gamma/2) ||theta - xi||^2 over xi in -C.
double eval_phi(const ConeSpec& coneC, const VectorXd& theta, const VectorXd& p,
                double gamma);

/// grad_p phi(theta, p) = (Pi(p + gamma theta) - p) / gamma.
VectorXd grad_phi_p(const ConeSpec& coneC, const VectorXd& theta, const VectorXd& p,
                    double gamma);

/// grad_theta phi(theta, p) = Pi(p + gamma theta).
VectorXd grad_phi_theta(const ConeSpec& coneC, const VectorXd& theta, const VectorXd& p,
                        double gamma);

/// Augmented Lagrangian L_gamma(u, p) = F(u) + phi(Theta(u), p).
double eval_L_gamma(const ProblemSpec& prob, const VectorXd& u, const VectorXd& p,
                    double gamma);

/// Saddle-point (KKT) residual of a candidate pair (u, p).
///
/// stationarity probes the variational inequality
///   <grad G(u), z - u> + J(z) - J(u) + <p, Theta(z) - Theta(u)> >= 0
/// over a finite set of points z in U and reports the largest violation; a
/// true saddle point yields zero, and any positive value is a genuine
/// violation certificate.
struct SaddleResidual {
  double stationarity = 0.0;
  double primal_feasibility = 0.0;
  double complementarity = 0.0;       // |<p, Theta(u)>|
  double dual_cone_violation = 0.0;   // distance of p from C*
};

SaddleResidual saddle_residual(const ProblemSpec& prob, const VectorXd& u,
                               const VectorXd& p, double gamma,
                               const std::vector<VectorXd>& probe_points);

}  // namespace pdcone

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdcone/linalg.hpp"
#include "pdcone/rng.hpp"

namespace pdcone {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NonsmoothBlock nonsmooth_zero() {
  NonsmoothBlock j;
  j.value = [](const VectorXd&) { return 0.0; };
  j.prox = [](const VectorXd& v, double) { return v; };
  return j;
}

NonsmoothBlock nonsmooth_l1(double lambda) {
  require(lambda >= 0.0, "nonsmooth_l1: lambda must be nonnegative");
  NonsmoothBlock j;
  j.value = [lambda](const VectorXd& x) { return lambda * x.lpNorm<1>(); };
  j.prox = [lambda](const VectorXd& v, double step) {
    const double t = lambda * step;
    VectorXd out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      out[k] = v[k] > t ? v[k] - t : (v[k] < -t ? v[k] + t : 0.0);
    }
    return out;
  };
  return j;
}

NonsmoothBlock nonsmooth_box(VectorXd lo, VectorXd hi) {
  require(lo.size() == hi.size(), "nonsmooth_box: bound length mismatch");
  require((lo.array() <= hi.array()).all(), "nonsmooth_box: lo must not exceed hi");
  NonsmoothBlock j;
  j.value = [lo, hi](const VectorXd& x) {
    if (x.size() != lo.size()) throw std::invalid_argument("nonsmooth_box: dimension mismatch");
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      if (x[k] < lo[k] || x[k] > hi[k]) return kInf;
    }
    return 0.0;
  };
  j.prox = [lo, hi](const VectorXd& v, double) {
    return v.cwiseMax(lo).cwiseMin(hi).eval();
  };
  return j;
}

SmoothConstraintMap SmoothConstraintMap::zero_map(int m, const BlockStructure& blocks) {
  SmoothConstraintMap omega;
  omega.is_zero = true;
  omega.value = [m](const VectorXd&) { return VectorXd::Zero(m).eval(); };
  omega.block_adjoint = [blocks](const VectorXd&, int i, const VectorXd&) {
    return VectorXd::Zero(blocks.size(i)).eval();
  };
  return omega;
}

void ProblemSpec::validate() const {
  require(static_cast<int>(nonsmooth.size()) == blocks.N,
          "ProblemSpec: one nonsmooth block per primal block required");
  require(static_cast<bool>(objective.value) && static_cast<bool>(objective.gradient),
          "ProblemSpec: objective value and gradient oracles required");
  if (phi_is_linear()) {
    const auto& lin = phi_linear();
    require(lin.A.rows() == m() && lin.A.cols() == n(),
            "ProblemSpec: Phi matrix must be m x n");
    require(lin.b.size() == m(), "ProblemSpec: Phi shift must have length m");
  } else {
    require(static_cast<bool>(std::get<CustomBlockMap>(phi).block_value),
            "ProblemSpec: custom Phi needs block_value");
  }
  require(constants.B_G >= 0 && constants.tau >= 0 && constants.T_bar >= 0 &&
              constants.c1 >= 0 && constants.c2 >= 0,
          "ProblemSpec: constants must be nonnegative");
}

double eval_objective(const ProblemSpec& prob, const VectorXd& u) {
  require(u.size() == prob.n(), "eval_objective: dimension mismatch");
  double f = 0.0;
  for (int i = 0; i < prob.blocks.N; ++i) {
    const double ji = prob.nonsmooth[i].value(prob.blocks.segment(u, i));
    if (!std::isfinite(ji)) return kInf;
    f += ji;
  }
  return f + prob.objective.value(u);
}

VectorXd eval_theta(const ProblemSpec& prob, const VectorXd& u) {
  require(u.size() == prob.n(), "eval_theta: dimension mismatch");
  VectorXd theta;
  if (prob.phi_is_linear()) {
    const auto& lin = prob.phi_linear();
    theta = lin.A * u - lin.b;
  } else {
    const auto& cust = std::get<CustomBlockMap>(prob.phi);
    theta = VectorXd::Zero(prob.m());
    for (int i = 0; i < prob.blocks.N; ++i) {
      theta += cust.block_value(i, prob.blocks.segment(u, i));
    }
  }
  if (!prob.omega.is_zero) theta += prob.omega.value(u);
  return theta;
}

double feasibility_residual(const ProblemSpec& prob, const VectorXd& u) {
  return project(dual_cone(prob.cone), eval_theta(prob, u)).norm();
}

VectorXd block_gradient(const ProblemSpec& prob, const VectorXd& u, int i) {
  require(i >= 0 && i < prob.blocks.N, "block_gradient: block index out of range");
  if (prob.objective.block_gradient) return prob.objective.block_gradient(u, i);
  return prob.blocks.segment(prob.objective.gradient(u), i);
}

namespace {

// Largest ratio ||g(u) - g(v)|| / ||u - v|| over the given pairs.
double max_pair_ratio(const std::function<VectorXd(const VectorXd&)>& g,
                      const std::vector<std::pair<VectorXd, VectorXd>>& pairs) {
  double best = 0.0;
  for (const auto& [u, v] : pairs) {
    const double d = (u - v).norm();
    if (d < 1e-12) continue;
    best = std::max(best, (g(u) - g(v)).norm() / d);
  }
  return best;
}

// Power iteration on the Hessian of G through gradient differences around
// a fixed center; exact for quadratic G up to the requested tolerance.
double gradient_power_iteration(const ProblemSpec& prob, const VectorXd& center,
                                VectorXd dir, double rel_tol, int max_iter) {
  const double h = 1e-4;
  double lambda = 0.0;
  if (dir.norm() < 1e-14) return 0.0;
  dir.normalize();
  for (int it = 0; it < max_iter; ++it) {
    VectorXd hd = (prob.objective.gradient(center + h * dir) -
                   prob.objective.gradient(center - h * dir)) /
                  (2.0 * h);
    const double next = hd.norm();
    if (next < 1e-14) return lambda;
    hd /= next;
    if (std::abs(next - lambda) <= rel_tol * std::max(1.0, std::abs(next))) return next;
    lambda = next;
    dir = hd;
  }
  return lambda;
}

}  // namespace

ProblemConstants estimate_constants(const ProblemSpec& prob, const VectorXd& lo,
                                    const VectorXd& hi, int sample_count,
                                    std::uint64_t rng_seed) {
  require(sample_count >= 2, "estimate_constants: sample_count must be at least 2");
  require(lo.size() == prob.n() && hi.size() == prob.n(),
          "estimate_constants: box bounds must have length n");
  SplitMix64 rng(rng_seed);
  auto sample_point = [&]() {
    VectorXd u(prob.n());
    for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = rng.next_uniform(lo[k], hi[k]);
    return u;
  };

  std::vector<std::pair<VectorXd, VectorXd>> pairs;
  pairs.reserve(sample_count);
  for (int s = 0; s < sample_count; ++s) pairs.emplace_back(sample_point(), sample_point());

  ProblemConstants est;

  // B_G: pairwise lower bound, then refine with power iteration seeded from
  // the best pairwise direction.
  est.B_G = max_pair_ratio(prob.objective.gradient, pairs);
  {
    VectorXd best_dir = pairs.front().first - pairs.front().second;
    double best = 0.0;
    for (const auto& [u, v] : pairs) {
      const double d = (u - v).norm();
      if (d < 1e-12) continue;
      const double r = (prob.objective.gradient(u) - prob.objective.gradient(v)).norm() / d;
      if (r > best) {
        best = r;
        best_dir = u - v;
      }
    }
    const VectorXd center = 0.5 * (lo + hi);
    est.B_G = std::max(est.B_G, gradient_power_iteration(prob, center, best_dir, 1e-9, 500));
  }

  // tau: exact spectral norm for the purely affine case, sampled otherwise.
  if (prob.phi_is_linear() && prob.omega.is_zero) {
    est.tau = spectral_norm(prob.phi_linear().A, 1e-8, 10000);
  } else {
    auto theta = [&prob](const VectorXd& u) { return eval_theta(prob, u); };
    est.tau = max_pair_ratio(theta, pairs);
  }

  // T_bar: curvature of Omega along sampled pairs, paired against C* so the
  // scalar bounds <p, (J(u)-J(v))(u-v)> for every p in C*. Jacobian actions
  // come from central differences of the map.
  if (prob.omega.is_zero) {
    est.T_bar = 0.0;
  } else {
    const ConeSpec dual = dual_cone(prob.cone);
    const double h = 1e-5;
    for (const auto& [u, v] : pairs) {
      const VectorXd d = u - v;
      const double dn2 = d.squaredNorm();
      if (dn2 < 1e-12) continue;
      VectorXd ju = (prob.omega.value(u + h * d) - prob.omega.value(u - h * d)) / (2.0 * h);
      VectorXd jv = (prob.omega.value(v + h * d) - prob.omega.value(v - h * d)) / (2.0 * h);
      est.T_bar = std::max(est.T_bar, project(dual, (ju - jv).eval()).norm() / dn2);
    }
  }

  return est;
}

}  // namespace pdcone

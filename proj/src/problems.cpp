// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/problems.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "pdcone/linalg.hpp"
#include "pdcone/rng.hpp"

namespace pdcone {

ProblemSpec build_problem(const InstanceData& data) {
  ProblemSpec prob{.blocks = BlockStructure::from_sizes(data.block_sizes),
                   .objective = {},
                   .nonsmooth = {},
                   .omega = {},
                   .phi = LinearMap{data.A, data.b},
                   .cone = data.cone,
                   .constants = data.constants};

  if (data.objective_kind == InstanceData::ObjectiveKind::quadratic) {
    const MatrixXd Q = data.Q;
    const VectorXd c = data.c;
    const BlockStructure blocks = prob.blocks;
    prob.objective.value = [Q, c](const VectorXd& u) {
      return 0.5 * u.dot(Q * u) + c.dot(u);
    };
    prob.objective.gradient = [Q, c](const VectorXd& u) { return (Q * u + c).eval(); };
    prob.objective.block_gradient = [Q, c, blocks](const VectorXd& u, int i) {
      return (Q.middleRows(blocks.offset(i), blocks.size(i)) * u +
              c.segment(blocks.offset(i), blocks.size(i)))
          .eval();
    };
  } else {
    const MatrixXd M = data.M;
    const VectorXd d = data.d;
    const BlockStructure blocks = prob.blocks;
    prob.objective.value = [M, d](const VectorXd& u) {
      return 0.5 * (M * u - d).squaredNorm();
    };
    prob.objective.gradient = [M, d](const VectorXd& u) {
      return (M.transpose() * (M * u - d)).eval();
    };
    prob.objective.block_gradient = [M, d, blocks](const VectorXd& u, int i) {
      return (M.middleCols(blocks.offset(i), blocks.size(i)).transpose() * (M * u - d))
          .eval();
    };
  }

  prob.nonsmooth.reserve(prob.blocks.N);
  for (int i = 0; i < prob.blocks.N; ++i) {
    switch (data.nonsmooth_kind) {
      case InstanceData::NonsmoothKind::zero:
        prob.nonsmooth.push_back(nonsmooth_zero());
        break;
      case InstanceData::NonsmoothKind::l1:
        prob.nonsmooth.push_back(nonsmooth_l1(data.lambda));
        break;
      case InstanceData::NonsmoothKind::box:
        prob.nonsmooth.push_back(nonsmooth_box(
            data.lo.segment(prob.blocks.offset(i), prob.blocks.size(i)),
            data.hi.segment(prob.blocks.offset(i), prob.blocks.size(i))));
        break;
    }
  }

  prob.omega = SmoothConstraintMap::zero_map(data.cone.dim(), prob.blocks);
  prob.validate();
  return prob;
}

namespace {

MatrixXd gaussian_matrix(SplitMix64& rng, int rows, int cols) {
  MatrixXd A(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) A(i, j) = rng.next_gaussian();
  }
  return A;
}

VectorXd gaussian_vector(SplitMix64& rng, int len, double scale) {
  VectorXd v(len);
  for (int i = 0; i < len; ++i) v[i] = scale * rng.next_gaussian();
  return v;
}

MatrixXd random_orthogonal(SplitMix64& rng, int n) {
  Eigen::HouseholderQR<MatrixXd> qr(gaussian_matrix(rng, n, n));
  MatrixXd V = qr.householderQ();
  return V;
}

// SPD matrix with eigenvalues drawn from [lam_lo, lam_hi].
MatrixXd random_spd(SplitMix64& rng, int n, double lam_lo, double lam_hi) {
  const MatrixXd V = random_orthogonal(rng, n);
  VectorXd lam(n);
  for (int i = 0; i < n; ++i) lam[i] = rng.next_uniform(lam_lo, lam_hi);
  MatrixXd Q = V * lam.asDiagonal() * V.transpose();
  return 0.5 * (Q + Q.transpose());
}

// Random m x n matrix with orthonormal rows (full row rank, spectral norm 1).
MatrixXd random_row_orthonormal(SplitMix64& rng, int m, int n) {
  Eigen::HouseholderQR<MatrixXd> qr(gaussian_matrix(rng, n, m));
  const MatrixXd full = qr.householderQ();
  return full.leftCols(m).transpose();
}

struct KktSolution {
  VectorXd u, p;
  double residual = std::numeric_limits<double>::infinity();
};

KktSolution solve_equality_kkt(const MatrixXd& Q, const VectorXd& c, const MatrixXd& A,
                               const VectorXd& b) {
  const int n = static_cast<int>(Q.rows());
  const int m = static_cast<int>(A.rows());
  MatrixXd K = MatrixXd::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = Q;
  K.topRightCorner(n, m) = A.transpose();
  K.bottomLeftCorner(m, n) = A;
  VectorXd rhs(n + m);
  rhs.head(n) = -c;
  rhs.tail(m) = b;
  const VectorXd x = K.fullPivLu().solve(rhs);
  KktSolution sol;
  sol.u = x.head(n);
  sol.p = x.tail(m);
  sol.residual = (K * x - rhs).norm() / (1.0 + rhs.norm());
  return sol;
}

double qp_value(const MatrixXd& Q, const VectorXd& c, const VectorXd& u) {
  return 0.5 * u.dot(Q * u) + c.dot(u);
}

}  // namespace

GeneratedInstance make_equality_qp(const MatrixXd& Q, const VectorXd& c, const MatrixXd& A,
                                   const VectorXd& b, int N) {
  const int n = static_cast<int>(Q.rows());
  const int m = static_cast<int>(A.rows());
  InstanceData data;
  data.block_sizes = BlockStructure::uniform(n, N).block_sizes;
  data.cone = ConeSpec::zero(m);
  data.objective_kind = InstanceData::ObjectiveKind::quadratic;
  data.Q = Q;
  data.c = c;
  data.A = A;
  data.b = b;
  data.constants.B_G = spectral_norm(Q);
  data.constants.tau = spectral_norm(A);

  const KktSolution sol = solve_equality_kkt(Q, c, A, b);
  if (sol.residual > 1e-10) {
    throw std::runtime_error("make_equality_qp: KKT system is numerically rank deficient");
  }
  ReferenceSolution ref;
  ref.u_star = sol.u;
  ref.p_star = sol.p;
  ref.F_star = qp_value(Q, c, sol.u);
  ref.provenance = Provenance::reference_solver;
  data.reference = ref;

  GeneratedInstance gen{.data = data, .problem = build_problem(data), .reference = ref};
  return gen;
}

GeneratedInstance gen_equality_qp(int n, int m, int N, std::uint64_t seed) {
  require(m < n, "gen_equality_qp: m must be smaller than n");
  require(n <= 200 && m <= 50, "gen_equality_qp: desk-scale caps are n <= 200, m <= 50");
  require(n % N == 0, "gen_equality_qp: n must divide into N equal blocks");
  for (int attempt = 0; attempt < 10; ++attempt) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(attempt));
    const MatrixXd Q = random_spd(rng, n, 1.0, 4.0);
    const MatrixXd A = random_row_orthonormal(rng, m, n);
    const VectorXd c = gaussian_vector(rng, n, 0.5);
    const VectorXd b = gaussian_vector(rng, m, 0.5);
    const KktSolution probe = solve_equality_kkt(Q, c, A, b);
    if (probe.residual > 1e-10) continue;  // rank deficiency: next seed
    return make_equality_qp(Q, c, A, b, N);
  }
  throw std::runtime_error("gen_equality_qp: no full-rank instance after 10 attempts");
}

namespace {

// Exhaustive active-set reference for min 0.5 u'Qu + c'u + lambda ||u||_1
// s.t. A u <= b. lambda = 0 enumerates the 2^m active sets; lambda > 0
// additionally enumerates coordinate sign patterns (3^n), so it stays a
// small-instance oracle. Returns nullopt when nothing certifies.
std::optional<ReferenceSolution> inequality_reference(const MatrixXd& Q, const VectorXd& c,
                                                      const MatrixXd& A, const VectorXd& b,
                                                      double lambda) {
  const int n = static_cast<int>(Q.rows());
  const int m = static_cast<int>(A.rows());
  const double tol = 1e-9;
  std::optional<ReferenceSolution> best;
  double best_value = std::numeric_limits<double>::infinity();

  auto consider = [&](const VectorXd& u, const VectorXd& p) {
    const double value = qp_value(Q, c, u) + lambda * u.lpNorm<1>();
    if (value < best_value) {
      best_value = value;
      ReferenceSolution ref;
      ref.u_star = u;
      ref.p_star = p;
      ref.F_star = value;
      ref.provenance = Provenance::reference_solver;
      best = ref;
    }
  };

  if (lambda == 0.0) {
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
      std::vector<int> act;
      for (int i = 0; i < m; ++i) {
        if (mask & (1ul << i)) act.push_back(i);
      }
      const int s = static_cast<int>(act.size());
      MatrixXd K = MatrixXd::Zero(n + s, n + s);
      K.topLeftCorner(n, n) = Q;
      VectorXd rhs(n + s);
      rhs.head(n) = -c;
      for (int j = 0; j < s; ++j) {
        K.block(0, n + j, n, 1) = A.row(act[j]).transpose();
        K.block(n + j, 0, 1, n) = A.row(act[j]);
        rhs[n + j] = b[act[j]];
      }
      const VectorXd x = K.fullPivLu().solve(rhs);
      if ((K * x - rhs).norm() > tol * (1.0 + rhs.norm())) continue;
      const VectorXd u = x.head(n);
      VectorXd p = VectorXd::Zero(m);
      bool ok = true;
      for (int j = 0; j < s; ++j) {
        p[act[j]] = x[n + j];
        if (x[n + j] < -tol) ok = false;
      }
      if (!ok || ((A * u - b).array() > tol).any()) continue;
      consider(u, p.cwiseMax(0.0));
    }
    return best;
  }

  // Sign-pattern enumeration; budget capped so this stays a desk oracle.
  if (std::pow(3.0, n) * std::pow(2.0, m) > 2.5e5) return std::nullopt;
  std::vector<int> sign(n, -1);  // ternary counter over {-1, 0, +1}
  const long total = static_cast<long>(std::pow(3.0, n));
  for (long code = 0; code < total; ++code) {
    long rem = code;
    std::vector<int> s(n);
    std::vector<int> freev;
    for (int j = 0; j < n; ++j) {
      s[j] = static_cast<int>(rem % 3) - 1;
      rem /= 3;
      if (s[j] != 0) freev.push_back(j);
    }
    const int f = static_cast<int>(freev.size());
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
      std::vector<int> act;
      for (int i = 0; i < m; ++i) {
        if (mask & (1ul << i)) act.push_back(i);
      }
      const int a = static_cast<int>(act.size());
      if (f + a == 0) {
        // u = 0 candidate: check the subdifferential condition directly.
        const VectorXd u = VectorXd::Zero(n);
        if (((A * u - b).array() > tol).any()) continue;
        if ((c.cwiseAbs().array() <= lambda + tol).all()) consider(u, VectorXd::Zero(m));
        continue;
      }
      MatrixXd K = MatrixXd::Zero(f + a, f + a);
      VectorXd rhs(f + a);
      for (int r = 0; r < f; ++r) {
        for (int cidx = 0; cidx < f; ++cidx) K(r, cidx) = Q(freev[r], freev[cidx]);
        for (int j = 0; j < a; ++j) K(r, f + j) = A(act[j], freev[r]);
        rhs[r] = -c[freev[r]] - lambda * s[freev[r]];
      }
      for (int j = 0; j < a; ++j) {
        for (int cidx = 0; cidx < f; ++cidx) K(f + j, cidx) = A(act[j], freev[cidx]);
        rhs[f + j] = b[act[j]];
      }
      const VectorXd x = K.fullPivLu().solve(rhs);
      if ((K * x - rhs).norm() > tol * (1.0 + rhs.norm())) continue;
      VectorXd u = VectorXd::Zero(n);
      for (int r = 0; r < f; ++r) u[freev[r]] = x[r];
      VectorXd p = VectorXd::Zero(m);
      bool ok = true;
      for (int j = 0; j < a; ++j) {
        p[act[j]] = x[f + j];
        if (x[f + j] < -tol) ok = false;
      }
      if (!ok) continue;
      for (int r = 0; r < f && ok; ++r) ok = u[freev[r]] * s[freev[r]] >= -tol;
      if (!ok || ((A * u - b).array() > tol).any()) continue;
      const VectorXd grad = Q * u + c + A.transpose() * p;
      for (int j = 0; j < n && ok; ++j) {
        if (s[j] == 0 && std::abs(grad[j]) > lambda + tol) ok = false;
      }
      if (ok) consider(u, p.cwiseMax(0.0));
    }
  }
  return best;
}

}  // namespace

GeneratedInstance make_inequality_qp(const MatrixXd& Q, const VectorXd& c, const MatrixXd& A,
                                     const VectorXd& b, int N, double lambda) {
  const int n = static_cast<int>(Q.rows());
  const int m = static_cast<int>(A.rows());
  InstanceData data;
  data.block_sizes = BlockStructure::uniform(n, N).block_sizes;
  data.cone = ConeSpec::nonneg_orthant(m);
  data.objective_kind = InstanceData::ObjectiveKind::quadratic;
  data.Q = Q;
  data.c = c;
  data.A = A;
  data.b = b;
  if (lambda > 0.0) {
    data.nonsmooth_kind = InstanceData::NonsmoothKind::l1;
    data.lambda = lambda;
  }
  data.constants.B_G = spectral_norm(Q);
  data.constants.tau = spectral_norm(A);
  data.constants.c2 = lambda * std::sqrt(static_cast<double>(n));

  if (m <= 12) {
    data.reference = inequality_reference(Q, c, A, b, lambda);
  }
  GeneratedInstance gen{.data = data, .problem = build_problem(data),
                        .reference = data.reference};
  return gen;
}

GeneratedInstance gen_inequality_qp(int n, int m, int N, std::uint64_t seed, double lambda) {
  require(m < n, "gen_inequality_qp: m must be smaller than n");
  require(n <= 200 && m <= 50, "gen_inequality_qp: desk-scale caps are n <= 200, m <= 50");
  require(n % N == 0, "gen_inequality_qp: n must divide into N equal blocks");
  require(lambda >= 0.0, "gen_inequality_qp: lambda must be nonnegative");
  for (int attempt = 0; attempt < 10; ++attempt) {
    SplitMix64 rng(seed + 0x1000ull * static_cast<std::uint64_t>(attempt) + 17ull);
    const MatrixXd Q = random_spd(rng, n, 1.0, 4.0);
    MatrixXd A = gaussian_matrix(rng, m, n);
    const double nrm = spectral_norm(A);
    if (nrm < 1e-8) continue;
    A /= nrm;
    // Push the unconstrained optimum outward so constraints typically
    // bind, while the origin stays a strict Slater point.
    const VectorXd u_target = gaussian_vector(rng, n, 2.0);
    const VectorXd c = -(Q * u_target);
    VectorXd b(m);
    for (int i = 0; i < m; ++i) b[i] = rng.next_uniform(0.05, 0.5);
    GeneratedInstance gen = make_inequality_qp(Q, c, A, b, N, lambda);
    if (m <= 12 && !gen.reference) continue;  // enumeration failed: next seed
    return gen;
  }
  throw std::runtime_error("gen_inequality_qp: no certified instance after 10 attempts");
}

GeneratedInstance make_soc_ls(const MatrixXd& M, const VectorXd& d, double radius) {
  require(radius > 0.0, "make_soc_ls: radius must be positive");
  require(M.rows() == M.cols() && M.rows() == d.size(), "make_soc_ls: shape mismatch");
  const int n = static_cast<int>(M.rows());

  InstanceData data;
  data.block_sizes = {n};
  data.cone = ConeSpec::second_order(n + 1);
  data.objective_kind = InstanceData::ObjectiveKind::least_squares;
  data.M = M;
  data.d = d;
  data.A = MatrixXd::Zero(n + 1, n);
  data.A.bottomRows(n) = MatrixXd::Identity(n, n);
  data.b = VectorXd::Zero(n + 1);
  data.b[0] = radius;
  data.constants.B_G = spectral_norm(M) * spectral_norm(M);
  data.constants.tau = spectral_norm(data.A);

  // Projected gradient with exact ball projection, run to high accuracy.
  const MatrixXd MtM = M.transpose() * M;
  const VectorXd Mtd = M.transpose() * d;
  VectorXd u = VectorXd::Zero(n);
  const double step = 1.0 / data.constants.B_G;
  for (long it = 0; it < 2000000; ++it) {
    VectorXd next = u - step * (MtM * u - Mtd);
    const double nn = next.norm();
    if (nn > radius) next *= radius / nn;
    const double delta = (next - u).norm();
    u = next;
    if (delta <= 1e-15 * (1.0 + u.norm())) break;
  }

  ReferenceSolution ref;
  ref.u_star = u;
  ref.F_star = 0.5 * (M * u - d).squaredNorm();
  if (u.norm() < radius * (1.0 - 1e-8)) {
    ref.p_star = VectorXd::Zero(n + 1);
  } else {
    const VectorXd p_vec = Mtd - MtM * u;  // -grad G(u*)
    ref.p_star = VectorXd(n + 1);
    ref.p_star[0] = p_vec.dot(u) / radius;
    ref.p_star.tail(n) = p_vec;
  }
  ref.provenance = Provenance::reference_solver;
  data.reference = ref;

  GeneratedInstance gen{.data = data, .problem = build_problem(data), .reference = ref};
  return gen;
}

GeneratedInstance gen_soc_ls(int n, std::uint64_t seed) {
  require(n >= 2, "gen_soc_ls: n must be >= 2");
  require(n <= 200, "gen_soc_ls: desk-scale cap is n <= 200");
  SplitMix64 rng(seed + 29ull);

  // Controlled-spectrum M keeps the projected-gradient reference fast.
  const MatrixXd U = random_orthogonal(rng, n);
  const MatrixXd V = random_orthogonal(rng, n);
  VectorXd sig(n);
  for (int i = 0; i < n; ++i) sig[i] = rng.next_uniform(0.5, 2.0);
  const MatrixXd M = U * sig.asDiagonal() * V.transpose();
  const VectorXd d = gaussian_vector(rng, n, 1.0);
  return make_soc_ls(M, d, 1.0);
}

}  // namespace pdcone

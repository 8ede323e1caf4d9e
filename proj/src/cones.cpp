// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/cones.hpp"

#include <cmath>

namespace pdcone {

ConeSpec ConeSpec::zero(int dim) {
  require(dim >= 1, "ConeSpec::zero: dim must be >= 1");
  return ConeSpec(Kind::Zero, dim);
}

ConeSpec ConeSpec::full(int dim) {
  require(dim >= 1, "ConeSpec::full: dim must be >= 1");
  return ConeSpec(Kind::Full, dim);
}

ConeSpec ConeSpec::nonneg_orthant(int dim) {
  require(dim >= 1, "ConeSpec::nonneg_orthant: dim must be >= 1");
  return ConeSpec(Kind::NonNegOrthant, dim);
}

ConeSpec ConeSpec::second_order(int dim) {
  require(dim >= 2, "ConeSpec::second_order: dim must be >= 2");
  return ConeSpec(Kind::SecondOrder, dim);
}

ConeSpec ConeSpec::product(std::vector<ConeSpec> children) {
  require(!children.empty(), "ConeSpec::product: needs at least one child");
  int dim = 0;
  for (const auto& c : children) dim += c.dim();
  ConeSpec spec(Kind::Product, dim);
  spec.children_ = std::move(children);
  return spec;
}

bool ConeSpec::operator==(const ConeSpec& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_) return false;
  if (kind_ != Kind::Product) return true;
  if (children_.size() != other.children_.size()) return false;
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (!(children_[i] == other.children_[i])) return false;
  }
  return true;
}

ConeSpec dual_cone(const ConeSpec& spec) {
  switch (spec.kind()) {
    case ConeSpec::Kind::Zero:
      return ConeSpec::full(spec.dim());
    case ConeSpec::Kind::Full:
      return ConeSpec::zero(spec.dim());
    case ConeSpec::Kind::NonNegOrthant:
      return ConeSpec::nonneg_orthant(spec.dim());
    case ConeSpec::Kind::SecondOrder:
      return ConeSpec::second_order(spec.dim());
    case ConeSpec::Kind::Product: {
      std::vector<ConeSpec> duals;
      duals.reserve(spec.children().size());
      for (const auto& c : spec.children()) duals.push_back(dual_cone(c));
      return ConeSpec::product(std::move(duals));
    }
  }
  throw std::logic_error("dual_cone: unreachable");
}

namespace {

// Three-case closed form for the Lorentz cone, layout (t, x). The branch
// comparisons use the exact norm; all branches agree at the seams.
void project_soc(const double* y, double* out, int dim) {
  const double t = y[0];
  double nx = 0.0;
  for (int i = 1; i < dim; ++i) nx += y[i] * y[i];
  nx = std::sqrt(nx);
  if (nx <= t) {  // inside the cone
    for (int i = 0; i < dim; ++i) out[i] = y[i];
  } else if (nx <= -t) {  // inside the polar cone
    for (int i = 0; i < dim; ++i) out[i] = 0.0;
  } else {  // boundary split
    const double c = 0.5 * (1.0 + t / nx);
    out[0] = c * nx;
    for (int i = 1; i < dim; ++i) out[i] = c * y[i];
  }
}

void project_into(const ConeSpec& spec, const double* y, double* out) {
  switch (spec.kind()) {
    case ConeSpec::Kind::Zero:
      for (int i = 0; i < spec.dim(); ++i) out[i] = 0.0;
      return;
    case ConeSpec::Kind::Full:
      for (int i = 0; i < spec.dim(); ++i) out[i] = y[i];
      return;
    case ConeSpec::Kind::NonNegOrthant:
      for (int i = 0; i < spec.dim(); ++i) out[i] = y[i] > 0.0 ? y[i] : 0.0;
      return;
    case ConeSpec::Kind::SecondOrder:
      project_soc(y, out, spec.dim());
      return;
    case ConeSpec::Kind::Product: {
      int off = 0;
      for (const auto& c : spec.children()) {
        project_into(c, y + off, out + off);
        off += c.dim();
      }
      return;
    }
  }
}

}  // namespace

VectorXd project(const ConeSpec& spec, const VectorXd& y) {
  require(y.size() == spec.dim(), "project: vector length does not match cone dimension");
  VectorXd out(y.size());
  project_into(spec, y.data(), out.data());
  return out;
}

VectorXd project_neg(const ConeSpec& spec, const VectorXd& y) {
  require(y.size() == spec.dim(), "project_neg: vector length does not match cone dimension");
  VectorXd flipped = -y;
  VectorXd out(y.size());
  project_into(spec, flipped.data(), out.data());
  return -out;
}

std::pair<VectorXd, VectorXd> moreau_split(const ConeSpec& coneC, const VectorXd& y) {
  require(y.size() == coneC.dim(), "moreau_split: vector length does not match cone dimension");
  return {project(dual_cone(coneC), y), project_neg(coneC, y)};
}

VectorXd project_ball(const VectorXd& p, double mu) {
  require(mu > 0.0, "project_ball: mu must be positive");
  const double norm = p.norm();
  if (norm <= mu) return p;
  return p * (mu / norm);
}

}  // namespace pdcone

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <utility>
#include <vector>

#include "pdcone/types.hpp"

namespace pdcone {

/// Recursive description of a closed convex cone in R^m.
///
/// Supported families: the zero cone {0}, the full space, the nonnegative
/// orthant, the second-order (Lorentz) cone {(t, x) : ||x|| <= t}, and
/// finite products of these. The full space is carried as its own variant
/// so the conjugate of the zero cone has a direct representation and
/// equality constraints need no special casing.
class ConeSpec {
 public:
  enum class Kind { Zero, Full, NonNegOrthant, SecondOrder, Product };

  static ConeSpec zero(int dim);
  static ConeSpec full(int dim);
  static ConeSpec nonneg_orthant(int dim);
  static ConeSpec second_order(int dim);  // dim >= 2, layout (t, x)
  static ConeSpec product(std::vector<ConeSpec> children);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<ConeSpec>& children() const { return children_; }

  bool operator==(const ConeSpec& other) const;
  bool operator!=(const ConeSpec& other) const { return !(*this == other); }

 private:
  ConeSpec(Kind kind, int dim) : kind_(kind), dim_(dim) {}
  Kind kind_;
  int dim_;
  std::vector<ConeSpec> children_;
};

/// Conjugate cone C* = {y : <y, x> >= 0 for all x in C}. Zero and Full swap,
/// the orthant and the second-order cone are self-conjugate, products map
/// componentwise. Involutive: dual_cone(dual_cone(c)) == c.
ConeSpec dual_cone(const ConeSpec& spec);

/// Euclidean projection of y onto the cone described by spec. Allocates a
/// fresh vector; idempotent.
VectorXd project(const ConeSpec& spec, const VectorXd& y);

/// Euclidean projection of y onto -C, computed as -project(spec, -y).
VectorXd project_neg(const ConeSpec& spec, const VectorXd& y);

/// Moreau decomposition relative to the cone C: returns (y_dual, y_negC)
/// with y_dual the projection onto C*, y_negC the projection onto -C,
/// y_dual + y_negC = y and <y_dual, y_negC> = 0. Both parts are computed
/// independently by their own projections.
std::pair<VectorXd, VectorXd> moreau_split(const ConeSpec& coneC, const VectorXd& y);

/// Projection onto the Euclidean ball of radius mu: p if ||p|| <= mu,
/// otherwise p * mu / ||p||.
VectorXd project_ball(const VectorXd& p, double mu);

}  // namespace pdcone

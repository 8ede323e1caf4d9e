// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace pdcone {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Configuration or validation failure (bad solver parameters, malformed
/// config files). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem class outside the shipped closed-form path (e.g. nonlinear
/// block constraint map without a registered block hook).
class UnsupportedProblemError : public std::runtime_error {
 public:
  explicit UnsupportedProblemError(const std::string& what)
      : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace pdcone

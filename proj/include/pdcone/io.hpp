// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pdcone/diagnostics.hpp"
#include "pdcone/problems.hpp"
#include "pdcone/solver.hpp"

namespace pdcone {

/// Write-then-rename; the destination is never observed half-written.
void write_file_atomic(const std::string& path, const std::string& content);

nlohmann::json cone_to_json(const ConeSpec& spec);
ConeSpec cone_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const InstanceData& data);
InstanceData instance_from_json(const nlohmann::json& j);

void save_instance(const InstanceData& data, const std::string& path);
InstanceData load_instance(const std::string& path);

/// One experiment: a problem (generated or loaded), solver parameters,
/// output settings, and the seed list used by the bench command.
struct ExperimentConfig {
  struct Problem {
    std::string generator;  // "equality_qp" | "inequality_qp" | "soc_ls"
    int n = 0, m = 0, blocks = 1;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    std::string path;  // alternative to generator
  } problem;

  SolverConfig solver;

  struct Core {
    bool weighted = false;
    std::vector<double> weights;  // one per block when weighted
  } core;

  struct Output {
    std::string dir = "out";
    TraceFormat trace_format = TraceFormat::csv;
  } output;

  std::vector<std::uint64_t> seeds;               // bench
  std::optional<std::pair<long, long>> fit_window;  // [k_min, k_max] for slopes
};

/// Parses and validates the structural part of a config file; throws
/// ConfigError with field context. Solver-vs-problem consistency is
/// checked later by validate_config once the instance is built.
ExperimentConfig parse_config(const std::string& path);

/// Normalized echo of a resolved config (defaults substituted), as printed
/// by the validate command. rho_resolved is the effective dual step.
nlohmann::json config_echo(const ExperimentConfig& config, double rho_resolved);

/// Instantiates the configured problem (generator or file).
GeneratedInstance realize_problem(const ExperimentConfig::Problem& section);

/// Builds the configured core function for a block structure.
CoreFunction build_core(const ExperimentConfig::Core& core, const BlockStructure& blocks);

/// FNV-1a digest of the canonical config serialization, hex-encoded.
std::string config_digest(const ExperimentConfig& config);

}  // namespace pdcone

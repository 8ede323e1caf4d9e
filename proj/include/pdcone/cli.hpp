// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace pdcone::cli {

// Exit codes shared by all commands: 0 success, 1 runtime failure,
// 2 configuration or validation failure.

/// Parses the config, checks solver invariants against the resolved
/// problem, and prints a normalized echo of the configuration.
int cmd_validate(const std::string& config_path);

/// Runs a single seed; writes trace.<fmt> and result.json to the output
/// directory.
int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir);

/// Runs every seed in the config (optionally on several worker threads);
/// writes per-seed traces and an aggregate summary.json with across-seed
/// means, standard errors, and fitted log-log slopes.
int cmd_bench(const std::string& config_path, const std::optional<std::string>& out_dir,
              int jobs);

/// Generates an instance and serializes it (with its reference solution
/// when one is certified) to a file.
int cmd_gen(const std::string& generator, int n, int m, int blocks, std::uint64_t seed,
            double lambda, const std::string& out_file);

}  // namespace pdcone::cli

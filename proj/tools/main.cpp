// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "pdcone/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pdcone: stochastic and deterministic primal-dual coordinate solvers "
               "for cone-constrained composite optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;

  auto* validate = app.add_subcommand("validate", "check a config file and echo it resolved");
  validate->add_option("config", config_path, "config file")->required();

  auto* run = app.add_subcommand("run", "run a single-seed experiment");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");

  auto* bench = app.add_subcommand("bench", "run all seeds and aggregate");
  bench->add_option("config", config_path, "config file")->required();
  bench->add_option("--out", out_dir, "output directory (overrides config)");
  bench->add_option("--jobs", jobs, "concurrent seed runs");

  std::string generator, out_file;
  int n = 0, m = 0, blocks = 1;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("generator", generator, "equality_qp | inequality_qp | soc_ls")->required();
  gen->add_option("--n", n, "primal dimension")->required();
  gen->add_option("--m", m, "constraint dimension (qp generators)");
  gen->add_option("--blocks", blocks, "block count");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--lambda", lambda, "l1 weight (inequality_qp)");
  gen->add_option("--out", out_file, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return pdcone::cli::cmd_validate(config_path);
  if (run->parsed()) return pdcone::cli::cmd_run(config_path, out_dir);
  if (bench->parsed()) return pdcone::cli::cmd_bench(config_path, out_dir, jobs);
  if (gen->parsed()) return pdcone::cli::cmd_gen(generator, n, m, blocks, seed, lambda, out_file);
  return 2;
}

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/cli.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "pdcone/io.hpp"
#include "pdcone/problems.hpp"

namespace pdcone::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json vector_json(const VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::string trace_extension(TraceFormat fmt) {
  return fmt == TraceFormat::csv ? "csv" : "json";
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr ms;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) ms.mean += x;
  ms.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - ms.mean) * (x - ms.mean);
    ms.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return ms;
}

int failure_exit(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
      dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

}  // namespace

int cmd_validate(const std::string& config_path) {
  try {
    const ExperimentConfig cfg = parse_config(config_path);
    const GeneratedInstance inst = realize_problem(cfg.problem);
    const CoreFunction core = build_core(cfg.core, inst.problem.blocks);
    validate_config(cfg.solver, inst.problem, core);
    const double rho = cfg.solver.resolved_rho(inst.problem.blocks.N);
    std::cout << config_echo(cfg, rho).dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // everything surfaced by validate is a configuration problem
  }
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir) {
  try {
    const ExperimentConfig cfg = parse_config(config_path);
    const GeneratedInstance inst = realize_problem(cfg.problem);
    const CoreFunction core = build_core(cfg.core, inst.problem.blocks);
    validate_config(cfg.solver, inst.problem, core);
    const std::string dir = out_dir.value_or(cfg.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());

    const ReferenceSolution* ref = inst.reference ? &*inst.reference : nullptr;
    const RunResult result = run(inst.problem, core, cfg.solver, ref);

    const std::string trace_path =
        dir + "/trace." + trace_extension(cfg.output.trace_format);
    export_trace(result.trace, trace_path, cfg.output.trace_format);

    json res;
    res["iterations"] = result.iterations;
    res["converged"] = result.converged;
    res["wall_seconds"] = result.wall_seconds;
    res["u_avg"] = vector_json(result.u_avg);
    res["p_avg"] = vector_json(result.p_avg);
    res["objective_avg"] = eval_objective(inst.problem, result.u_avg);
    res["feasibility_avg"] = feasibility_residual(inst.problem, result.u_avg);
    res["objective_last"] = eval_objective(inst.problem, result.state.u);
    res["feasibility_last"] = feasibility_residual(inst.problem, result.state.u);
    res["eps_min"] = result.state.eps_min;
    res["eps0"] = result.state.eps0;
    if (inst.reference) {
      res["objective_gap_avg"] =
          std::abs(res["objective_avg"].get<double>() - inst.reference->F_star);
    }
    write_file_atomic(dir + "/result.json", res.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    return failure_exit(e);
  }
}

int cmd_bench(const std::string& config_path, const std::optional<std::string>& out_dir,
              int jobs) {
  try {
    const ExperimentConfig cfg = parse_config(config_path);
    if (cfg.seeds.empty()) throw ConfigError("bench requires a nonempty 'seeds' list");
    const GeneratedInstance inst = realize_problem(cfg.problem);
    const CoreFunction core = build_core(cfg.core, inst.problem.blocks);
    validate_config(cfg.solver, inst.problem, core);
    const std::string dir = out_dir.value_or(cfg.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());

    const ReferenceSolution* ref = inst.reference ? &*inst.reference : nullptr;
    const int nseeds = static_cast<int>(cfg.seeds.size());
    std::vector<RunResult> results(nseeds);
    std::vector<std::string> errors(nseeds);
    std::atomic<int> cursor{0};
    const int workers = std::max(1, std::min(jobs, nseeds));

    auto work = [&]() {
      for (int i = cursor.fetch_add(1); i < nseeds; i = cursor.fetch_add(1)) {
        try {
          SolverConfig sc = cfg.solver;
          sc.rng_seed = cfg.seeds[i];
          results[i] = run(inst.problem, core, sc, ref);
          const std::string path = dir + "/trace_seed" + std::to_string(cfg.seeds[i]) + "." +
                                   trace_extension(cfg.output.trace_format);
          export_trace(results[i].trace, path, cfg.output.trace_format);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    // Aggregate on the iteration grid common to every successful seed.
    std::map<long, int> k_counts;
    int ok_count = 0;
    for (int i = 0; i < nseeds; ++i) {
      if (!errors[i].empty()) continue;
      ++ok_count;
      for (const auto& rec : results[i].trace) ++k_counts[rec.k];
    }

    json summary;
    summary["config_digest"] = config_digest(cfg);
    summary["seeds"] = cfg.seeds;
    json failures = json::array();
    for (int i = 0; i < nseeds; ++i) {
      if (!errors[i].empty()) {
        failures.push_back({{"seed", cfg.seeds[i]}, {"error", errors[i]}});
      }
    }
    summary["failures"] = failures;

    std::vector<std::pair<double, double>> feas_series, gap_series;
    json checkpoints = json::array();
    for (const auto& [k, count] : k_counts) {
      if (count != ok_count || ok_count == 0) continue;
      std::vector<double> feas, obj, gap;
      for (int i = 0; i < nseeds; ++i) {
        if (!errors[i].empty()) continue;
        for (const auto& rec : results[i].trace) {
          if (rec.k == k) {
            feas.push_back(rec.avg_feasibility);
            obj.push_back(rec.avg_objective);
            if (inst.reference) gap.push_back(std::abs(rec.avg_objective - inst.reference->F_star));
            break;
          }
        }
      }
      const MeanStderr f = mean_stderr(feas);
      const MeanStderr o = mean_stderr(obj);
      json cp{{"k", k},
              {"avg_feasibility", {{"mean", f.mean}, {"stderr", f.stderr_}}},
              {"avg_objective", {{"mean", o.mean}, {"stderr", o.stderr_}}}};
      if (inst.reference) {
        const MeanStderr g = mean_stderr(gap);
        cp["objective_gap"] = {{"mean", g.mean}, {"stderr", g.stderr_}};
        if (g.mean > 0.0) gap_series.emplace_back(static_cast<double>(k), g.mean);
      }
      checkpoints.push_back(std::move(cp));
      if (f.mean > 0.0) feas_series.emplace_back(static_cast<double>(k), f.mean);
    }
    summary["checkpoints"] = checkpoints;

    long k_min = cfg.fit_window ? cfg.fit_window->first
                                : std::max(cfg.solver.trace_stride, cfg.solver.max_iter / 100);
    long k_max = cfg.fit_window ? cfg.fit_window->second : cfg.solver.max_iter;
    auto windowed = [&](const std::vector<std::pair<double, double>>& s) {
      std::vector<std::pair<double, double>> w;
      for (const auto& pt : s) {
        if (pt.first >= static_cast<double>(k_min) && pt.first <= static_cast<double>(k_max)) {
          w.push_back(pt);
        }
      }
      return w;
    };
    json slopes;
    const auto feas_w = windowed(feas_series);
    if (feas_w.size() >= 10) {
      const RateFit fit = fit_loglog(feas_w);
      slopes["avg_feasibility"] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                                   {"r2", fit.r2}};
    }
    if (inst.reference) {
      const auto gap_w = windowed(gap_series);
      if (gap_w.size() >= 10) {
        const RateFit fit = fit_loglog(gap_w);
        slopes["objective_gap"] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                                   {"r2", fit.r2}};
      }
    }
    summary["slopes"] = slopes;

    write_file_atomic(dir + "/summary.json", summary.dump(2) + "\n");
    return failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    return failure_exit(e);
  }
}

int cmd_gen(const std::string& generator, int n, int m, int blocks, std::uint64_t seed,
            double lambda, const std::string& out_file) {
  try {
    ExperimentConfig::Problem section;
    section.generator = generator;
    section.n = n;
    section.m = m;
    section.blocks = blocks;
    section.seed = seed;
    section.lambda = lambda;
    const GeneratedInstance inst = realize_problem(section);
    save_instance(inst.data, out_file);
    std::cout << "wrote " << out_file
              << (inst.reference ? " (with reference solution)" : " (no reference)") << "\n";
    return 0;
  } catch (const std::exception& e) {
    return failure_exit(e);
  }
}

}  // namespace pdcone::cli

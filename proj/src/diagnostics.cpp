// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/diagnostics.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace pdcone {

double eval_lambda(const ProblemSpec& prob, const CoreFunction& core,
                   const SolverConfig& config, const ReferenceSolution& reference,
                   const VectorXd& u_prime, const VectorXd& p_prime, double epsilon_k) {
  const int N = prob.blocks.N;
  const double rho = config.resolved_rho(N);
  const double dual_term =
      epsilon_k / (2.0 * N * rho) * (reference.p_star - p_prime).squaredNorm();
  const double gap_term =
      (N - 1) * epsilon_k / N *
      (eval_L_gamma(prob, u_prime, p_prime, config.gamma) -
       eval_L(prob, reference.u_star, reference.p_star));
  return bregman_D(core, reference.u_star, u_prime) + dual_term + gap_term;
}

double eval_h3(const ProblemSpec& prob, const CoreFunction& core,
               const SolverConfig& config, const ReferenceSolution& reference,
               const VectorXd& u, const VectorXd& p, const VectorXd& u0,
               const VectorXd& p0, double eps0) {
  const double N = prob.blocks.N;
  const double gamma = config.gamma;
  const double tail = (reference.p_star - p0).squaredNorm() / (2.0 * gamma) +
                      eval_L_gamma(prob, u0, p0, gamma) -
                      eval_L(prob, reference.u_star, reference.p_star);
  return bregman_D(core, u, u0) + (N - 1.0) / N * bregman_D(core, reference.u_star, u0) +
         eps0 / gamma * (p - p0).squaredNorm() +
         (2.0 * N - 1.0) * (N - 1.0) * eps0 / (N * N) * tail;
}

namespace {

std::optional<double> field_value(const TraceRecord& rec, TraceField field) {
  switch (field) {
    case TraceField::epsilon: return rec.epsilon;
    case TraceField::objective: return rec.objective;
    case TraceField::feasibility: return rec.feasibility;
    case TraceField::avg_objective: return rec.avg_objective;
    case TraceField::avg_feasibility: return rec.avg_feasibility;
    case TraceField::L_value: return rec.L_value;
    case TraceField::L_gamma_value: return rec.L_gamma_value;
    case TraceField::lambda:
      return rec.lambda ? std::optional<double>(*rec.lambda) : std::nullopt;
    case TraceField::eps_min: return rec.eps_min_so_far;
  }
  return std::nullopt;
}

}  // namespace

RateFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  require(points.size() >= 10, "fit_rate: needs at least 10 usable records");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [k, v] : points) {
    sx += std::log(k);
    sy += std::log(v);
  }
  const double xbar = sx / n, ybar = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [k, v] : points) {
    const double dx = std::log(k) - xbar;
    const double dy = std::log(v) - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  require(sxx > 0.0, "fit_rate: abscissas are degenerate");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  if (syy == 0.0) {
    fit.r2 = 1.0;  // perfectly constant field, exactly fit by slope 0
  } else {
    double ss_res = 0;
    for (const auto& [k, v] : points) {
      const double e = std::log(v) - (fit.intercept + fit.slope * std::log(k));
      ss_res += e * e;
    }
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

RateFit fit_rate(const std::vector<TraceRecord>& trace, TraceField field, long k_min,
                 long k_max) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& rec : trace) {
    if (rec.k < k_min || rec.k > k_max) continue;
    const auto v = field_value(rec, field);
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) continue;
    pts.emplace_back(static_cast<double>(rec.k), *v);
  }
  return fit_loglog(pts);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  static std::atomic<unsigned> counter{0};
  const std::string tmp = path + ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("export_trace: cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("export_trace: write failed for '" + tmp + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("export_trace: cannot rename '" + tmp + "' to '" + path +
                             "': " + ec.message());
  }
}

}  // namespace

void export_trace(const std::vector<TraceRecord>& trace, const std::string& path,
                  TraceFormat format) {
  if (format == TraceFormat::csv) {
    std::string out;
    out.reserve(128 * (trace.size() + 1));
    out += "k,epsilon,objective,feasibility,avg_objective,avg_feasibility,L,L_gamma,lambda,eps_min\n";
    for (const auto& r : trace) {
      out += std::to_string(r.k);
      out += ',';
      out += format_double(r.epsilon);
      out += ',';
      out += format_double(r.objective);
      out += ',';
      out += format_double(r.feasibility);
      out += ',';
      out += format_double(r.avg_objective);
      out += ',';
      out += format_double(r.avg_feasibility);
      out += ',';
      out += format_double(r.L_value);
      out += ',';
      out += format_double(r.L_gamma_value);
      out += ',';
      if (r.lambda) out += format_double(*r.lambda);
      out += ',';
      out += format_double(r.eps_min_so_far);
      out += '\n';
    }
    write_atomic(path, out);
    return;
  }

  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : trace) {
    nlohmann::json obj{{"k", r.k},
                       {"epsilon", r.epsilon},
                       {"objective", r.objective},
                       {"feasibility", r.feasibility},
                       {"avg_objective", r.avg_objective},
                       {"avg_feasibility", r.avg_feasibility},
                       {"L", r.L_value},
                       {"L_gamma", r.L_gamma_value},
                       {"eps_min", r.eps_min_so_far}};
    if (r.lambda) {
      obj["lambda"] = *r.lambda;
    } else {
      obj["lambda"] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  write_atomic(path, arr.dump(2) + "\n");
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_trace_csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("read_trace_csv: '" + path + "' is empty");
  }
  std::vector<TraceRecord> trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      cells.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (cells.size() != 10) {
      throw std::runtime_error("read_trace_csv: malformed row in '" + path + "'");
    }
    auto parse = [&](const std::string& s) {
      double v = 0.0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc()) {
        throw std::runtime_error("read_trace_csv: bad number '" + s + "' in '" + path + "'");
      }
      return v;
    };
    TraceRecord r;
    r.k = static_cast<long>(parse(cells[0]));
    r.epsilon = parse(cells[1]);
    r.objective = parse(cells[2]);
    r.feasibility = parse(cells[3]);
    r.avg_objective = parse(cells[4]);
    r.avg_feasibility = parse(cells[5]);
    r.L_value = parse(cells[6]);
    r.L_gamma_value = parse(cells[7]);
    if (!cells[8].empty()) r.lambda = parse(cells[8]);
    r.eps_min_so_far = parse(cells[9]);
    trace.push_back(std::move(r));
  }
  return trace;
}

}  // namespace pdcone

// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#include "pdcone/io.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "pdcone/problems.hpp"

namespace pdcone {

using nlohmann::json;

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  static std::atomic<unsigned> counter{0};
  const std::string tmp = path + ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

json cone_to_json(const ConeSpec& spec) {
  switch (spec.kind()) {
    case ConeSpec::Kind::Zero: return json{{"zero", spec.dim()}};
    case ConeSpec::Kind::Full: return json{{"full", spec.dim()}};
    case ConeSpec::Kind::NonNegOrthant: return json{{"nonneg", spec.dim()}};
    case ConeSpec::Kind::SecondOrder: return json{{"soc", spec.dim()}};
    case ConeSpec::Kind::Product: {
      json arr = json::array();
      for (const auto& c : spec.children()) arr.push_back(cone_to_json(c));
      return json{{"product", arr}};
    }
  }
  throw std::logic_error("cone_to_json: unreachable");
}

ConeSpec cone_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError("cone: expected exactly one of zero/full/nonneg/soc/product");
  }
  if (j.contains("zero")) return ConeSpec::zero(j.at("zero").get<int>());
  if (j.contains("full")) return ConeSpec::full(j.at("full").get<int>());
  if (j.contains("nonneg")) return ConeSpec::nonneg_orthant(j.at("nonneg").get<int>());
  if (j.contains("soc")) return ConeSpec::second_order(j.at("soc").get<int>());
  if (j.contains("product")) {
    std::vector<ConeSpec> children;
    for (const auto& c : j.at("product")) children.push_back(cone_from_json(c));
    return ConeSpec::product(std::move(children));
  }
  throw ConfigError("cone: unknown variant key");
}

namespace {

json matrix_to_json(const MatrixXd& A) {
  json data = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index jx = 0; jx < A.cols(); ++jx) data.push_back(A(i, jx));
  }
  return json{{"rows", A.rows()}, {"cols", A.cols()}, {"data", data}};
}

MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ConfigError("matrix: data length does not match rows*cols");
  }
  MatrixXd A(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index jx = 0; jx < cols; ++jx) A(i, jx) = data[k++].get<double>();
  }
  return A;
}

json vector_to_json(const VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

VectorXd vector_from_json(const json& j) {
  VectorXd v(j.size());
  Eigen::Index k = 0;
  for (const auto& x : j) v[k++] = x.get<double>();
  return v;
}

}  // namespace

json instance_to_json(const InstanceData& data) {
  json j;
  j["blocks"] = data.block_sizes;
  j["cone"] = cone_to_json(data.cone);

  if (data.objective_kind == InstanceData::ObjectiveKind::quadratic) {
    j["objective"] = {{"kind", "quadratic"}, {"Q", matrix_to_json(data.Q)},
                      {"c", vector_to_json(data.c)}};
  } else {
    j["objective"] = {{"kind", "least_squares"}, {"M", matrix_to_json(data.M)},
                      {"d", vector_to_json(data.d)}};
  }

  switch (data.nonsmooth_kind) {
    case InstanceData::NonsmoothKind::zero:
      j["nonsmooth"] = {{"kind", "zero"}};
      break;
    case InstanceData::NonsmoothKind::l1:
      j["nonsmooth"] = {{"kind", "l1"}, {"lambda", data.lambda}};
      break;
    case InstanceData::NonsmoothKind::box:
      j["nonsmooth"] = {{"kind", "box"}, {"lo", vector_to_json(data.lo)},
                        {"hi", vector_to_json(data.hi)}};
      break;
  }

  j["phi"] = {{"A", matrix_to_json(data.A)}, {"b", vector_to_json(data.b)}};
  j["constants"] = {{"B_G", data.constants.B_G}, {"tau", data.constants.tau},
                    {"T_bar", data.constants.T_bar}, {"c1", data.constants.c1},
                    {"c2", data.constants.c2}};
  if (data.reference) {
    j["reference"] = {
        {"u_star", vector_to_json(data.reference->u_star)},
        {"p_star", vector_to_json(data.reference->p_star)},
        {"F_star", data.reference->F_star},
        {"provenance",
         data.reference->provenance == Provenance::analytic ? "analytic" : "reference_solver"}};
  }
  return j;
}

InstanceData instance_from_json(const json& j) {
  InstanceData data;
  data.block_sizes = j.at("blocks").get<std::vector<int>>();
  data.cone = cone_from_json(j.at("cone"));

  const auto& obj = j.at("objective");
  const std::string okind = obj.at("kind").get<std::string>();
  if (okind == "quadratic") {
    data.objective_kind = InstanceData::ObjectiveKind::quadratic;
    data.Q = matrix_from_json(obj.at("Q"));
    data.c = vector_from_json(obj.at("c"));
  } else if (okind == "least_squares") {
    data.objective_kind = InstanceData::ObjectiveKind::least_squares;
    data.M = matrix_from_json(obj.at("M"));
    data.d = vector_from_json(obj.at("d"));
  } else {
    throw ConfigError("instance: unknown objective kind '" + okind + "'");
  }

  const auto& ns = j.at("nonsmooth");
  const std::string nkind = ns.at("kind").get<std::string>();
  if (nkind == "zero") {
    data.nonsmooth_kind = InstanceData::NonsmoothKind::zero;
  } else if (nkind == "l1") {
    data.nonsmooth_kind = InstanceData::NonsmoothKind::l1;
    data.lambda = ns.at("lambda").get<double>();
  } else if (nkind == "box") {
    data.nonsmooth_kind = InstanceData::NonsmoothKind::box;
    data.lo = vector_from_json(ns.at("lo"));
    data.hi = vector_from_json(ns.at("hi"));
  } else {
    throw ConfigError("instance: unknown nonsmooth kind '" + nkind + "'");
  }

  data.A = matrix_from_json(j.at("phi").at("A"));
  data.b = vector_from_json(j.at("phi").at("b"));

  const auto& cst = j.at("constants");
  data.constants.B_G = cst.at("B_G").get<double>();
  data.constants.tau = cst.at("tau").get<double>();
  data.constants.T_bar = cst.at("T_bar").get<double>();
  data.constants.c1 = cst.at("c1").get<double>();
  data.constants.c2 = cst.at("c2").get<double>();

  if (j.contains("reference")) {
    ReferenceSolution ref;
    ref.u_star = vector_from_json(j.at("reference").at("u_star"));
    ref.p_star = vector_from_json(j.at("reference").at("p_star"));
    ref.F_star = j.at("reference").at("F_star").get<double>();
    ref.provenance = j.at("reference").at("provenance").get<std::string>() == "analytic"
                         ? Provenance::analytic
                         : Provenance::reference_solver;
    data.reference = ref;
  }
  return data;
}

void save_instance(const InstanceData& data, const std::string& path) {
  write_file_atomic(path, instance_to_json(data).dump(2) + "\n");
}

InstanceData load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("instance file '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

namespace {

Variant variant_from_string(const std::string& s) {
  if (s == "spdcl") return Variant::SPDCL;
  if (s == "spdcl_const") return Variant::SPDCL_CONST;
  if (s == "vapp") return Variant::VAPP;
  throw ConfigError("solver.variant must be one of spdcl | spdcl_const | vapp, got '" + s + "'");
}

std::string variant_to_string(Variant v) {
  switch (v) {
    case Variant::SPDCL: return "spdcl";
    case Variant::SPDCL_CONST: return "spdcl_const";
    case Variant::VAPP: return "vapp";
  }
  return "spdcl";
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }

  ExperimentConfig cfg;
  try {
    const auto& p = j.at("problem");
    const bool has_gen = p.contains("generator");
    const bool has_path = p.contains("path");
    if (has_gen == has_path) {
      throw ConfigError("problem: exactly one of 'generator' or 'path' must be present");
    }
    if (has_gen) {
      cfg.problem.generator = p.at("generator").get<std::string>();
      cfg.problem.n = p.value("n", 0);
      cfg.problem.m = p.value("m", 0);
      cfg.problem.blocks = p.value("blocks", 1);
      cfg.problem.seed = p.value("seed", 0ull);
      cfg.problem.lambda = p.value("lambda", 0.0);
    } else {
      cfg.problem.path = p.at("path").get<std::string>();
    }

    const auto& s = j.at("solver");
    cfg.solver.variant = variant_from_string(s.value("variant", "spdcl"));
    cfg.solver.gamma = s.value("gamma", 1.0);
    if (s.contains("rho")) cfg.solver.rho = s.at("rho").get<double>();
    cfg.solver.epsilon_init = s.value("epsilon_init", 1e9);
    if (s.contains("mu")) cfg.solver.mu = s.at("mu").get<double>();
    if (s.contains("epsilon_const")) cfg.solver.epsilon_const = s.at("epsilon_const").get<double>();
    cfg.solver.max_iter = s.value("max_iter", 1000l);
    cfg.solver.tol_feas = s.value("tol_feas", 0.0);
    cfg.solver.tol_obj_change = s.value("tol_obj_change", 0.0);
    cfg.solver.rng_seed = s.value("rng_seed", 0ull);
    cfg.solver.trace_stride = s.value("trace_stride", 100l);

    if (j.contains("core")) {
      const auto& k = j.at("core");
      if (k.is_string() && k.get<std::string>() == "quadratic") {
        cfg.core.weighted = false;
      } else if (k.is_object() && k.contains("weighted_quadratic")) {
        cfg.core.weighted = true;
        cfg.core.weights = k.at("weighted_quadratic").get<std::vector<double>>();
      } else {
        throw ConfigError("core must be \"quadratic\" or {\"weighted_quadratic\": [...]}");
      }
    }

    if (j.contains("output")) {
      const auto& o = j.at("output");
      cfg.output.dir = o.value("dir", "out");
      const std::string fmt = o.value("trace_format", "csv");
      if (fmt == "csv") {
        cfg.output.trace_format = TraceFormat::csv;
      } else if (fmt == "json") {
        cfg.output.trace_format = TraceFormat::json;
      } else {
        throw ConfigError("output.trace_format must be csv or json");
      }
      if (o.contains("trace_stride")) cfg.solver.trace_stride = o.at("trace_stride").get<long>();
    }

    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();

    if (j.contains("fit")) {
      cfg.fit_window = std::make_pair(j.at("fit").at("k_min").get<long>(),
                                      j.at("fit").at("k_max").get<long>());
    }
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return cfg;
}

json config_echo(const ExperimentConfig& cfg, double rho_resolved) {
  json j;
  if (!cfg.problem.generator.empty()) {
    j["problem"] = {{"generator", cfg.problem.generator}, {"n", cfg.problem.n},
                    {"m", cfg.problem.m}, {"blocks", cfg.problem.blocks},
                    {"seed", cfg.problem.seed}, {"lambda", cfg.problem.lambda}};
  } else {
    j["problem"] = {{"path", cfg.problem.path}};
  }
  j["solver"] = {{"variant", variant_to_string(cfg.solver.variant)},
                 {"gamma", cfg.solver.gamma},
                 {"rho", rho_resolved},
                 {"epsilon_init", cfg.solver.epsilon_init},
                 {"max_iter", cfg.solver.max_iter},
                 {"tol_feas", cfg.solver.tol_feas},
                 {"tol_obj_change", cfg.solver.tol_obj_change},
                 {"rng_seed", cfg.solver.rng_seed},
                 {"trace_stride", cfg.solver.trace_stride}};
  if (cfg.solver.mu) j["solver"]["mu"] = *cfg.solver.mu;
  if (cfg.solver.epsilon_const) j["solver"]["epsilon_const"] = *cfg.solver.epsilon_const;
  if (cfg.core.weighted) {
    j["core"] = {{"weighted_quadratic", cfg.core.weights}};
  } else {
    j["core"] = "quadratic";
  }
  j["output"] = {{"dir", cfg.output.dir},
                 {"trace_format", cfg.output.trace_format == TraceFormat::csv ? "csv" : "json"}};
  if (!cfg.seeds.empty()) j["seeds"] = cfg.seeds;
  return j;
}

GeneratedInstance realize_problem(const ExperimentConfig::Problem& section) {
  if (!section.path.empty()) {
    const InstanceData data = load_instance(section.path);
    return GeneratedInstance{.data = data, .problem = build_problem(data),
                             .reference = data.reference};
  }
  if (section.generator == "equality_qp") {
    return gen_equality_qp(section.n, section.m, section.blocks, section.seed);
  }
  if (section.generator == "inequality_qp") {
    return gen_inequality_qp(section.n, section.m, section.blocks, section.seed,
                             section.lambda);
  }
  if (section.generator == "soc_ls") {
    return gen_soc_ls(section.n, section.seed);
  }
  throw ConfigError("unknown generator '" + section.generator + "'");
}

CoreFunction build_core(const ExperimentConfig::Core& core, const BlockStructure& blocks) {
  if (!core.weighted) return CoreFunction::quadratic(blocks);
  if (static_cast<int>(core.weights.size()) != blocks.N) {
    throw ConfigError("core.weighted_quadratic needs exactly one weight per block");
  }
  VectorXd w(blocks.N);
  for (int i = 0; i < blocks.N; ++i) w[i] = core.weights[i];
  return CoreFunction::weighted_quadratic(blocks, w);
}

std::string config_digest(const ExperimentConfig& cfg) {
  const std::string canon = config_echo(cfg, cfg.solver.rho ? *cfg.solver.rho : -1.0).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pdcone

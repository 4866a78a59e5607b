#include "gft/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gft/dsl.hpp"

namespace gft::cli {

namespace {

// ---- config reading --------------------------------------------------------

[[noreturn]] void bad(const std::string& path, const std::string& msg) { throw ConfigError(path, msg); }

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; });
    if (!known) bad(path + "/" + it.key(), "unknown field");
  }
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

int count(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

// A number, [re, im], or a constant DSL expression such as "1+2i".
Complex complex_value(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad(path, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) {
    FunctionExpr e = parse(j.get<std::string>());
    if (e.depends_on_z()) bad(path, "expected a constant, got an expression in z");
    return eval(e, 0.0);
  }
  bad(path, "expected a number, [re, im] or a constant expression");
}

void read_grid(const Json& j, const std::string& path, DiskGrid& g) {
  only_keys(j, path, {"n_radial", "n_angular", "r_max", "refinement_levels"});
  if (j.contains("n_radial")) g.n_radial = count(j["n_radial"], path + "/n_radial");
  if (j.contains("n_angular")) g.n_angular = count(j["n_angular"], path + "/n_angular");
  if (j.contains("r_max")) g.r_max = number(j["r_max"], path + "/r_max");
  if (j.contains("refinement_levels")) g.refinement_levels = count(j["refinement_levels"], path + "/refinement_levels");
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids{"h-condition", "T2", "T21", "becker", "T3", "T5-qc", "T6", "logderiv-Uk"};
  return ids;
}

RunConfig parse_run_config(const Json& j) {
  only_keys(j, "", {"f", "g", "h", "params", "check", "preset", "logderiv_source", "grid", "quadrature", "oracle", "seed"});
  RunConfig c;
  if (j.contains("f")) c.f = text(j["f"], "/f");
  if (j.contains("g")) c.g = text(j["g"], "/g");
  if (j.contains("h")) c.h = text(j["h"], "/h");
  if (j.contains("params")) {
    const Json& p = j["params"];
    only_keys(p, "/params", {"alpha", "c", "s", "m", "k"});
    if (p.contains("alpha")) c.params.alpha = complex_value(p["alpha"], "/params/alpha");
    if (p.contains("c")) c.params.c = complex_value(p["c"], "/params/c");
    if (p.contains("s")) c.params.s = complex_value(p["s"], "/params/s");
    if (p.contains("m")) c.params.m = number(p["m"], "/params/m");
    if (p.contains("k")) c.params.k = number(p["k"], "/params/k");
  }
  if (j.contains("check")) c.check = text(j["check"], "/check");
  if (j.contains("preset") && !j["preset"].is_null()) c.preset = text(j["preset"], "/preset");
  if (j.contains("logderiv_source")) {
    c.logderiv_source = text(j["logderiv_source"], "/logderiv_source");
    if (c.logderiv_source != "f" && c.logderiv_source != "operator")
      bad("/logderiv_source", "expected \"f\" or \"operator\"");
  }
  if (j.contains("grid")) read_grid(j["grid"], "/grid", c.grid);
  if (j.contains("quadrature")) {
    const Json& q = j["quadrature"];
    only_keys(q, "/quadrature", {"nodes_per_panel", "abs_tolerance", "max_depth"});
    if (q.contains("nodes_per_panel")) c.quadrature.nodes_per_panel = count(q["nodes_per_panel"], "/quadrature/nodes_per_panel");
    if (q.contains("abs_tolerance")) c.quadrature.abs_tolerance = number(q["abs_tolerance"], "/quadrature/abs_tolerance");
    if (q.contains("max_depth")) c.quadrature.max_subdivision_depth = count(q["max_depth"], "/quadrature/max_depth");
  }
  if (j.contains("oracle")) {
    const Json& o = j["oracle"];
    only_keys(o, "/oracle", {"grid", "probes", "probe_radius", "tol"});
    if (o.contains("grid")) read_grid(o["grid"], "/oracle/grid", c.oracle.grid);
    if (o.contains("probes")) c.oracle.probes = count(o["probes"], "/oracle/probes");
    if (o.contains("probe_radius")) c.oracle.probe_radius = number(o["probe_radius"], "/oracle/probe_radius");
    if (o.contains("tol")) c.oracle.tol = number(o["tol"], "/oracle/tol");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("/seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_run_config(j);
}

void apply_grid_flag(DiskGrid& grid, const std::string& spec) {
  int n = 0, m = 0;
  char x = 0, extra = 0;
  if (std::sscanf(spec.c_str(), "%d%c%d%c", &n, &x, &m, &extra) != 3 || (x != 'x' && x != 'X'))
    throw ConfigError("--grid", "expected NxM, got '" + spec + "'");
  grid.n_radial = n;
  grid.n_angular = m;
}

// ---- JSON conversion -------------------------------------------------------

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const DiskGrid& g) {
  return {{"n_radial", g.n_radial}, {"n_angular", g.n_angular}, {"r_max", g.r_max},
          {"refinement_levels", g.refinement_levels}};
}

Json to_json(const QuadratureConfig& q) {
  return {{"nodes_per_panel", q.nodes_per_panel}, {"abs_tolerance", q.abs_tolerance},
          {"max_depth", q.max_subdivision_depth}};
}

namespace {

Json params_json(const CriterionParams& p) {
  return {{"alpha", to_json(p.alpha)}, {"c", to_json(p.c)}, {"s", to_json(p.s)}, {"m", p.m}, {"k", p.k}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const RunConfig& c) {
  Json o{{"grid", to_json(c.oracle.grid)}, {"probes", c.oracle.probes}, {"probe_radius", c.oracle.probe_radius},
         {"tol", c.oracle.tol}};
  return {{"f", c.f},
          {"g", c.g},
          {"h", c.h},
          {"params", params_json(c.params)},
          {"check", c.check},
          {"preset", c.preset ? Json(*c.preset) : Json(nullptr)},
          {"logderiv_source", c.logderiv_source},
          {"grid", to_json(c.grid)},
          {"quadrature", to_json(c.quadrature)},
          {"oracle", o},
          {"seed", c.seed}};
}

Json to_json(const QcBound& b) {
  return {{"s", to_json(b.s)}, {"k", b.k},        {"l1", optional_number(b.l1)},
          {"l2", optional_number(b.l2)}, {"l3", optional_number(b.l3)}, {"K", b.K}};
}

Json to_json(const CriterionReport& r) {
  Json conditions = Json::array();
  for (const auto& c : r.conditions) {
    Json trend = nullptr;
    if (c.boundary_trend) trend = Json::array({(*c.boundary_trend)[0], (*c.boundary_trend)[1], (*c.boundary_trend)[2]});
    conditions.push_back({{"name", c.name},
                          {"kind", c.kind == Inequality::Strict ? "strict" : "non-strict"},
                          {"satisfied", c.satisfied},
                          {"margin", c.margin},
                          {"max_lhs", c.max_lhs},
                          {"rhs", c.rhs},
                          {"witness", to_json(c.witness)},
                          {"boundary_trend", trend}});
  }
  auto failed = r.failed_condition();
  return {{"criterion_id", r.criterion_id},
          {"satisfied", r.satisfied},
          {"verdict", r.verdict()},
          {"margin", r.margin},
          {"max_lhs", r.max_lhs},
          {"witness", to_json(r.witness)},
          {"failed_condition", failed ? Json(*failed) : Json(nullptr)},
          {"conditions", conditions},
          {"grid_used", to_json(r.grid_used)},
          {"qc_bound", r.qc_bound ? to_json(*r.qc_bound) : Json(nullptr)}};
}

Json to_json(const InjectivityReport& r) {
  Json pair = nullptr;
  if (r.collision_pair) pair = Json::array({to_json(r.collision_pair->first), to_json(r.collision_pair->second)});
  return {{"injective_on_grid", r.injective_on_grid},
          {"collision_pair", pair},
          {"min_separation_ratio", r.min_separation_ratio},
          {"points", r.points},
          {"pairs_compared", r.pairs_compared},
          {"tol", r.tol},
          {"bucketed", r.bucketed}};
}

namespace {

Json sample_json(const BeltramiSample& s) {
  return {{"z", to_json(s.z)},         {"F", to_json(s.F)},   {"F_z", to_json(s.F_z)},
          {"F_zbar", to_json(s.F_zbar)}, {"mu", to_json(s.mu)}, {"abs_mu", s.abs_mu}};
}

}  // namespace

Json to_json(const DilatationReport& r) {
  Json profile = Json::array();
  for (double v : r.radial_profile) profile.push_back(v);
  return {{"max_abs_mu", r.max_abs_mu},
          {"witness", sample_json(r.witness)},
          {"radial_profile", profile},
          {"annulus",
           {{"n_radii", r.grid.n_radii}, {"n_angles", r.grid.n_angles}, {"r_inner", r.grid.r_inner},
            {"r_outer", r.grid.r_outer}}},
          {"step", r.step}};
}

Json to_json(const SeamReport& r) {
  return {{"holds", r.holds}, {"max_mismatch", r.max_mismatch}, {"witness_angle", r.witness_angle}};
}

Json error_json(const std::exception& e) {
  Json out;
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    const auto& d = pe->diagnostic();
    out = {{"kind", "Parse"},
           {"message", e.what()},
           {"diagnostic", {{"position", d.position}, {"message", d.message}, {"expected", d.expected}}}};
  } else if (const auto* ge = dynamic_cast<const Error*>(&e)) {
    out = {{"kind", std::string(to_string(ge->kind()))}, {"message", e.what()}};
    if (ge->where()) out["where"] = to_json(*ge->where());
  } else if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    out = {{"kind", "Config"}, {"message", e.what()}, {"path", ce->path()}};
  } else {
    out = {{"kind", "Internal"}, {"message", e.what()}};
  }
  return out;
}

Json error_report(const std::string& kind, const std::string& message, const Json& detail) {
  Json e{{"kind", kind}, {"message", message}};
  if (!detail.is_null()) e["detail"] = detail;
  return {{"tool", {{"name", kToolName}, {"version", kToolVersion}}}, {"error", e}, {"exit_code", int(kInputError)}};
}

// ---- running ---------------------------------------------------------------

ResolvedRun resolve(const RunConfig& c) {
  ResolvedRun r{parse(c.f), parse(c.g), parse(c.h), c.params, c.check, c.preset};
  std::string preset;
  if (c.preset) {
    preset = *c.preset;
  } else if (is_preset(c.check)) {
    preset = c.check;
    r.preset = preset;
  }
  if (!preset.empty()) {
    if (!is_preset(preset)) throw Error(ErrorKind::UnknownPreset, "unknown preset '" + preset + "'");
    const bool explicit_check = c.preset && std::find(criterion_ids().begin(), criterion_ids().end(), c.check) !=
                                                criterion_ids().end();
    PresetResult p = apply_preset(preset, {r.f, r.g, r.h, r.params, explicit_check ? c.check : ""});
    r.f = p.f;
    r.g = p.g;
    r.h = p.h;
    r.params = p.params;
    r.route = p.route;
  }
  if (std::find(criterion_ids().begin(), criterion_ids().end(), r.route) == criterion_ids().end())
    throw ConfigError("/check", "unknown criterion '" + r.route + "'");
  return r;
}

CriterionReport run_criterion(const ResolvedRun& r, const RunConfig& c) {
  const std::string& id = r.route;
  if (id == "becker") return check_becker(r.f, r.params.m, c.grid);
  if (id == "T6") return check_T6(r.f, r.g, r.params.alpha, r.params.k, c.grid);
  if (id == "logderiv-Uk") {
    if (c.logderiv_source == "operator")
      return check_log_derivative_condition(IntegralOperator::g_alpha(r.f, r.g, r.params.alpha, c.quadrature),
                                            r.params.k, c.grid);
    return check_log_derivative_condition(r.f, r.params.k, c.grid);
  }
  AnalyticTriple t(r.f, r.g, r.h);
  if (id == "h-condition") return check_h_condition(t, r.params, c.grid);
  if (id == "T2") return check_main_T2(t, r.params, c.grid);
  if (id == "T21") return check_simplified_T21(t, r.params, c.grid);
  if (id == "T3") return check_T3(t, r.params, c.grid);
  if (id == "T5-qc") return check_qc_T5(t, r.params, c.grid);
  throw ConfigError("/check", "unknown criterion '" + id + "'");
}

Chain certified_chain(const ResolvedRun& r, const RunConfig& c) {
  if (r.route == "T6") {
    if (r.params.alpha.imag() != 0.0) throw Error(ErrorKind::Precondition, "this chain needs real alpha > 0");
    return make_t6_chain(r.f, r.g, r.params.alpha.real(), c.quadrature);
  }
  if (r.route == "logderiv-Uk") {
    if (c.logderiv_source == "operator") {
      auto op = std::make_shared<IntegralOperator>(IntegralOperator::g_alpha(r.f, r.g, r.params.alpha, c.quadrature));
      return make_exponential_chain([op](Complex z) { return (*op)(z).value; }, "e^t G_alpha(f, g)");
    }
    auto f = std::make_shared<CompiledExpr>(r.f);
    return make_exponential_chain([f](Complex z) { return (*f)(z); }, "e^t f");
  }
  return make_main_chain(AnalyticTriple(r.f, r.g, r.h), r.params, c.quadrature);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json oracle_block(const Chain& chain, const ResolvedRun& r, const RunConfig& c) {
  Evaluable F = [&chain](Complex z) { return chain(z, 0.0); };
  auto inj = injectivity_test(F, c.oracle.grid, c.oracle.tol);
  auto counts = preimage_probe(F, c.oracle.probe_radius, c.oracle.probes, c.seed);
  const bool counts_ok = std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0 || n == 1; });
  auto deriv = derivative_nonvanishing(r.f, c.oracle.grid);
  return {{"function", chain.description + " at t = 0"},
          {"grid", to_json(c.oracle.grid)},
          {"injectivity", to_json(inj)},
          {"preimage",
           {{"radius", c.oracle.probe_radius}, {"seed", c.seed}, {"counts", counts}, {"all_in_0_1", counts_ok}}},
          {"f_derivative",
           {{"min_abs", deriv.min_abs}, {"witness", to_json(deriv.witness)}, {"flagged", deriv.flagged}}},
          {"no_counterexample", inj.injective_on_grid && counts_ok}};
}

}  // namespace

CheckOutcome cmd_check(const RunConfig& c, bool timings) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckOutcome out;
  Json& rep = out.report;
  rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  rep["config"] = to_json(c);
  try {
    c.grid.validate();
    c.quadrature.validate();
    ResolvedRun r = resolve(c);
    rep["resolved"] = {{"preset", r.preset ? Json(*r.preset) : Json(nullptr)},
                       {"route", r.route},
                       {"f", print(r.f)},
                       {"g", print(r.g)},
                       {"h", print(r.h)},
                       {"params", params_json(r.params)}};
    const auto t_crit = std::chrono::steady_clock::now();
    CriterionReport report = run_criterion(r, c);
    const double crit_s = seconds_since(t_crit);
    rep["criterion"] = to_json(report);
    const auto t_oracle = std::chrono::steady_clock::now();
    Chain chain = certified_chain(r, c);
    rep["oracle"] = oracle_block(chain, r, c);
    const double oracle_s = seconds_since(t_oracle);
    rep["grid_used"] = to_json(report.grid_used);
    rep["quadrature_used"] = to_json(c.quadrature);
    out.exit_code = report.satisfied ? kSatisfied : kUnsatisfied;
    if (timings) rep["timings"] = {{"criterion_s", crit_s}, {"oracle_s", oracle_s}, {"total_s", seconds_since(t0)}};
  } catch (const std::exception& e) {
    for (const char* k : {"resolved", "criterion", "oracle"}) rep.erase(k);
    rep["error"] = error_json(e);
    out.exit_code = kInputError;
  }
  rep["exit_code"] = out.exit_code;
  return out;
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    o << text;
    o.flush();
    if (!o) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

}  // namespace gft::cli

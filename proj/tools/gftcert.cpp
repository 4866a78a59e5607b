// gftcert: univalence criteria, quasiconformal extensions and oracles from
// the command line. Exit codes: 0 satisfied, 1 unsatisfied, 2 input error.

#include <iostream>

#include "CLI11.hpp"

#include "gft/cli/export.hpp"
#include "gft/dsl.hpp"

using namespace gft;
using namespace gft::cli;

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::string grid;
  double rmax = 0.0;
  bool no_timings = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "run configuration (JSON)")->required();
  cmd->add_option("--grid", f.grid, "override the disk grid as NxM (radii x angles)");
  cmd->add_option("--rmax", f.rmax, "override the grid radius r_max");
  cmd->add_flag("--no-timings", f.no_timings, "omit the timings block (byte-identical reruns)");
}

// flags > config > defaults
RunConfig load_with_flags(const CommonFlags& f) {
  RunConfig c = load_run_config(f.config);
  if (!f.grid.empty()) apply_grid_flag(c.grid, f.grid);
  if (f.rmax != 0.0) c.grid.r_max = f.rmax;
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_atomically(path, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int input_error(const std::string& out, const std::exception& e) {
  std::cerr << "gftcert: " << e.what() << "\n";
  Json rep = error_report("Config", e.what(), error_json(e));
  try {
    emit(out, dump(rep));
  } catch (const std::exception& w) {
    std::cerr << "gftcert: " << w.what() << "\n";
  }
  return kInputError;
}

void report_error_stream(const Json& rep) {
  if (rep.contains("error")) std::cerr << "gftcert: " << rep["error"]["message"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Univalence criteria, Loewner chains and quasiconformal extensions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonFlags check_flags;
  auto* check = app.add_subcommand("check", "run a criterion and the oracle cross-check");
  add_common(check, check_flags);
  check->add_option("--out", check_flags.out, "report path (default: stdout)");

  CommonFlags ext_flags;
  ExtendOptions ext;
  std::string csv_path, ppm_path, ext_report;
  auto* extend = app.add_subcommand("extend", "export the Becker extension field as CSV (and PPM)");
  add_common(extend, ext_flags);
  extend->add_option("--out", csv_path, "CSV path (x,y,reF,imF,absMu)")->required();
  extend->add_option("--report", ext_report, "JSON summary path (default: stdout)");
  extend->add_option("--resolution", ext.resolution, "interior N x 2N, exterior N x 4N")->capture_default_str();
  extend->add_option("--r-outer", ext.r_outer, "outer annulus radius")->capture_default_str();
  extend->add_option("--step", ext.step, "relative finite-difference step")->capture_default_str();
  extend->add_option("--ppm", ppm_path, "also write a P6 raster");
  extend->add_option("--ppm-size", ext.ppm_size, "raster side in pixels (default 256 with --ppm)");
  extend->add_option("--ppm-extent", ext.ppm_extent, "raster covers [-E, E]^2")->capture_default_str();
  extend->add_flag("--force", ext.force, "export even when the criterion fails");

  std::string s_list = "1", k_list = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", ktable_out;
  auto* ktable = app.add_subcommand("ktable", "tabulate the extension bound K(s, k)");
  ktable->add_option("--s", s_list, "comma-separated s values, e.g. 1,2,1+1i")->capture_default_str();
  ktable->add_option("--k", k_list, "comma-separated k values in [0, 1)")->capture_default_str();
  ktable->add_option("--out", ktable_out, "CSV path (default: stdout)");

  std::string oracle_f, oracle_out, oracle_grid = "64x128";
  double oracle_rmax = 1.0 - 1e-3, oracle_radius = 0.9, oracle_tol = 1e-6;
  int oracle_probes = 20;
  std::uint64_t oracle_seed = 0;
  auto* oracle = app.add_subcommand("oracle", "criterion-free univalence evidence for f");
  oracle->add_option("--f", oracle_f, "function in the DSL")->required();
  oracle->add_option("--grid", oracle_grid, "NxM")->capture_default_str();
  oracle->add_option("--rmax", oracle_rmax, "grid radius")->capture_default_str();
  oracle->add_option("--probes", oracle_probes, "preimage probes")->capture_default_str();
  oracle->add_option("--radius", oracle_radius, "probe circle radius")->capture_default_str();
  oracle->add_option("--tol", oracle_tol, "relative collision tolerance")->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "probe seed")->capture_default_str();
  oracle->add_option("--out", oracle_out, "report path (default: stdout)");

  bool presets_json = false;
  auto* presets = app.add_subcommand("preset-list", "list the parameter presets");
  presets->add_flag("--json", presets_json, "print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (*check) {
    RunConfig c;
    try {
      c = load_with_flags(check_flags);
    } catch (const std::exception& e) {
      return input_error(check_flags.out, e);
    }
    CheckOutcome r = cmd_check(c, !check_flags.no_timings);
    report_error_stream(r.report);
    emit(check_flags.out, dump(r.report));
    return r.exit_code;
  }

  if (*extend) {
    RunConfig c;
    try {
      c = load_with_flags(ext_flags);
    } catch (const std::exception& e) {
      return input_error(ext_report, e);
    }
    if (!ppm_path.empty() && ext.ppm_size == 0) ext.ppm_size = 256;
    ExtendOutcome r = cmd_extend(c, ext, !ext_flags.no_timings);
    report_error_stream(r.report);
    try {
      if (!r.csv.empty()) write_atomically(csv_path, r.csv);
      if (!ppm_path.empty() && !r.ppm.empty()) write_atomically(ppm_path, r.ppm);
    } catch (const std::exception& e) {
      return input_error(ext_report, e);
    }
    emit(ext_report, dump(r.report));
    return r.exit_code;
  }

  if (*ktable) {
    try {
      auto s = parse_complex_list(s_list);
      auto k = parse_real_list(k_list);
      emit(ktable_out, ktable_csv(s, k));
    } catch (const std::exception& e) {
      std::cerr << "gftcert: " << e.what() << "\n";
      return kInputError;
    }
    return 0;
  }

  if (*oracle) {
    Json rep{{"tool", {{"name", kToolName}, {"version", kToolVersion}}}};
    int code = kInputError;
    try {
      DiskGrid grid{64, 128, oracle_rmax, 0};
      apply_grid_flag(grid, oracle_grid);
      grid.validate();
      FunctionExpr f = parse(oracle_f);
      CompiledExpr cf(f);
      Evaluable F = [&cf](Complex z) { return cf(z); };
      auto inj = injectivity_test(F, grid, oracle_tol);
      auto counts = preimage_probe(F, oracle_radius, oracle_probes, oracle_seed);
      bool counts_ok = std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0 || n == 1; });
      auto d = derivative_nonvanishing(f, grid);
      rep["f"] = print(f);
      rep["grid"] = to_json(grid);
      rep["injectivity"] = to_json(inj);
      rep["preimage"] = {{"radius", oracle_radius}, {"seed", oracle_seed}, {"counts", counts}, {"all_in_0_1", counts_ok}};
      rep["derivative"] = {{"min_abs", d.min_abs}, {"witness", to_json(d.witness)}, {"flagged", d.flagged}};
      rep["no_counterexample"] = inj.injective_on_grid && counts_ok && !d.flagged;
      code = rep["no_counterexample"].get<bool>() ? kSatisfied : kUnsatisfied;
    } catch (const std::exception& e) {
      std::cerr << "gftcert: " << e.what() << "\n";
      rep["error"] = error_json(e);
    }
    rep["exit_code"] = code;
    emit(oracle_out, dump(rep));
    return code;
  }

  if (*presets) {
    if (presets_json) {
      Json list = Json::array();
      for (const auto& n : preset_names()) list.push_back({{"name", n}, {"description", preset_description(n)}});
      std::cout << dump(list);
    } else {
      for (const auto& n : preset_names()) std::cout << n << "\t" << preset_description(n) << "\n";
    }
    return 0;
  }
  return kInputError;
}

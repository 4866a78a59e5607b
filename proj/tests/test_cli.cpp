#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gft/cli/export.hpp"
#include "gft/dsl.hpp"

using namespace gft;
using namespace gft::cli;

namespace {

std::string config_path(const char* name) { return std::string(GFT_SOURCE_DIR) + "/configs/" + name; }

ConfigError config_error(const Json& j) {
  try {
    parse_run_config(j);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError for " << j.dump());
  return ConfigError("", "");
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig c = parse_run_config(Json::parse(R"({
    "f": "z + 0.1*z^2", "params": {"alpha": [0.5, 0.25], "c": "-1+2i", "s": 2, "m": 3, "k": 0.1},
    "check": "T3", "grid": {"n_radial": 8, "r_max": 0.9}, "quadrature": {"max_depth": 12},
    "oracle": {"probes": 5}, "seed": 42})"));
  CHECK(c.params.alpha == Complex(0.5, 0.25));
  CHECK(c.params.c == Complex(-1.0, 2.0));
  CHECK(c.params.s == Complex(2.0));
  CHECK(c.grid.n_radial == 8);
  CHECK(c.grid.n_angular == DiskGrid{}.n_angular);
  CHECK(c.quadrature.max_subdivision_depth == 12);
  CHECK(c.oracle.probes == 5);
  CHECK(c.seed == 42);
  // the echo reads back to the same configuration
  CHECK(to_json(parse_run_config(to_json(c))) == to_json(c));

  CHECK(config_error(Json::parse(R"({"colour": 1})")).path() == "/colour");
  CHECK(config_error(Json::parse(R"({"params": {"m": "two"}})")).path() == "/params/m");
  CHECK(config_error(Json::parse(R"({"params": {"s": [1]}})")).path() == "/params/s");
  CHECK(config_error(Json::parse(R"({"params": {"c": "z"}})")).path() == "/params/c");
  CHECK(config_error(Json::parse(R"({"grid": {"n_radial": 1.5}})")).path() == "/grid/n_radial");
  CHECK(config_error(Json::parse(R"({"seed": -1})")).path() == "/seed");
  CHECK(config_error(Json::parse(R"([1, 2])")).path() == "");
  CHECK_THROWS_AS(load_run_config(config_path("does-not-exist.json")), ConfigError);

  DiskGrid g;
  apply_grid_flag(g, "12x34");
  CHECK(g.n_radial == 12);
  CHECK(g.n_angular == 34);
  for (const char* bad : {"12", "12x", "x34", "12x34x", "12*34"}) CHECK_THROWS_AS(apply_grid_flag(g, bad), ConfigError);
}

TEST_CASE("preset routing") {
  RunConfig c;
  c.f = "z + 0.1*z^2";
  c.check = "becker";
  ResolvedRun r = resolve(c);
  CHECK(r.route == "becker");
  CHECK(r.preset == std::optional<std::string>("becker"));

  c.check = "T3";
  c.preset = "ovesea";
  CHECK(resolve(c).route == "T3");
  c.check = "ovesea";
  CHECK(resolve(c).route == "T2");

  c.preset.reset();
  c.check = "T5";
  CHECK_THROWS_AS(resolve(c), ConfigError);
  c.check = "T2";
  c.preset = "nobody";
  try {
    resolve(c);
    FAIL("expected UnknownPreset");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownPreset);
  }
}

TEST_CASE("check outcomes and determinism") {
  RunConfig c = load_run_config(config_path("trivial.json"));
  c.grid = {16, 32};
  c.oracle.grid = {16, 32, 0.999, 0};
  CheckOutcome a = cmd_check(c, false);
  CheckOutcome b = cmd_check(c, false);
  CHECK(a.exit_code == kSatisfied);
  CHECK(a.report.dump() == b.report.dump());
  CHECK_FALSE(a.report.contains("timings"));
  CHECK(cmd_check(c, true).report.contains("timings"));
  CHECK(a.report["criterion"]["margin"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.report["oracle"]["no_counterexample"].get<bool>());

  c.f = "z/(1-z)";
  CHECK(cmd_check(c, false).exit_code == kUnsatisfied);

  c.h = "1 - 4*z";  // vanishes at a grid node
  c.grid = {4, 4, 0.5, 0};
  CheckOutcome e = cmd_check(c, false);
  CHECK(e.exit_code == kInputError);
  CHECK(e.report["error"]["kind"] == "DivisionByZero");
  CHECK_FALSE(e.report.contains("criterion"));

  c = RunConfig{};
  c.f = "z^2";  // not normalized
  CHECK(cmd_check(c, false).report["error"]["kind"] == "NotNormalized");
}

TEST_CASE("non-finite numbers serialize as null") {
  ChainCheck unused;
  Json j{{"x", unused.margin}, {"y", std::nan("")}};
  CHECK(j.dump() == R"({"x":null,"y":null})");
}

TEST_CASE("field and table formats") {
  std::vector<FieldRow> rows{{{0.5, -0.25}, {1.0, 2.0}, 0.0}, {{2.0, 0.0}, {2.1, 0.0}, 0.125}};
  CHECK(field_csv(rows) == "x,y,reF,imF,absMu\n0.5,-0.25,1,2,0\n2,0,2.1000000000000001,0,0.125\n");

  std::string table = ktable_csv(parse_complex_list("1, 2"), parse_real_list("0,0.5"));
  CHECK(table ==
        "s_re,s_im,k,l1,l2,l3,K\n"
        "1,0,0,,,,0\n"
        "1,0,0.5,,,,0.5\n" +
            [] {
              QcBound b = qc_bound_K(2.0, 0.0);
              return "2,0,0," + format_double(*b.l1) + "," + format_double(*b.l2) + "," + format_double(*b.l3) + "," +
                     format_double(b.K) + "\n";
            }() +
            [] {
              QcBound b = qc_bound_K(2.0, 0.5);
              return "2,0,0.5," + format_double(*b.l1) + "," + format_double(*b.l2) + "," + format_double(*b.l3) +
                     "," + format_double(b.K) + "\n";
            }());
  CHECK_THROWS_AS(parse_real_list("1i"), ConfigError);
  CHECK_THROWS(parse_complex_list("1,,2"));

  Chain id = make_exponential_chain([](Complex z) { return z; }, "e^t z");
  auto field = extension_field(id, 4, 10.0, 1e-5);
  CHECK(field.rows.size() == 4 * 8 + 4 * 16);
  CHECK(field.dilatation.max_abs_mu <= 1e-8);
  std::string ppm = field_ppm(id, 5, 2.0, 1e-5);
  CHECK(ppm.rfind("P6\n5 5\n255\n", 0) == 0);
  CHECK(ppm.size() == std::string("P6\n5 5\n255\n").size() + 75);
}

TEST_CASE("atomic writes replace the target") {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "gft_cli_atomic_test.txt";
  write_atomically(p.string(), "first");
  write_atomically(p.string(), "second");
  std::ifstream in(p);
  std::string s((std::istreambuf_iterator<char>(in)), {});
  CHECK(s == "second");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
  fs::remove(p);
}

#pragma once

// Configuration-driven runs shared by the gftcert tool and the acceptance
// suite. Reports are nlohmann::ordered_json so key order, and therefore the
// serialized bytes, only depend on the input.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "gft/criteria.hpp"
#include "gft/loewner.hpp"
#include "gft/oracle.hpp"
#include "gft/qc_extension.hpp"

namespace gft::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "gftcert";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kSatisfied = 0, kUnsatisfied = 1, kInputError = 2 };

/// Bad configuration. `path` is the JSON pointer of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct OracleSettings {
  DiskGrid grid{64, 128, 1.0 - 1e-3, 0};
  int probes = 20;
  double probe_radius = 0.9;
  double tol = 1e-6;
};

struct RunConfig {
  std::string f = "z";
  std::string g = "z";
  std::string h = "1";
  CriterionParams params;
  std::string check = "T2";
  std::optional<std::string> preset;
  /// For logderiv-Uk: "f" tests zf'/f, "operator" samples G_alpha(f, g).
  std::string logderiv_source = "f";
  DiskGrid grid;
  QuadratureConfig quadrature;
  OracleSettings oracle;
  std::uint64_t seed = 0;
};

/// Criterion identifiers accepted in `check` besides the preset names.
const std::vector<std::string>& criterion_ids();

RunConfig parse_run_config(const Json& j);
RunConfig load_run_config(const std::string& path);
Json to_json(const RunConfig& c);

/// "NxM" -> n_radial = N, n_angular = M.
void apply_grid_flag(DiskGrid& grid, const std::string& spec);

/// The configuration after preset application: parsed functions, final
/// parameters and the criterion that will run.
struct ResolvedRun {
  FunctionExpr f, g, h;
  CriterionParams params;
  std::string route;
  std::optional<std::string> preset;
};

ResolvedRun resolve(const RunConfig& c);

/// Runs the routed criterion.
CriterionReport run_criterion(const ResolvedRun& r, const RunConfig& c);

/// The chain whose extension the criterion certifies, and its L(., 0).
Chain certified_chain(const ResolvedRun& r, const RunConfig& c);

struct CheckOutcome {
  Json report;
  int exit_code = kInputError;
};

/// Preset application, criterion, oracle cross-check, report. Input and
/// numerical errors become exit code 2 with an "error" block.
CheckOutcome cmd_check(const RunConfig& c, bool timings = true);

/// Report for a configuration that could not be read at all.
Json error_report(const std::string& kind, const std::string& message, const Json& detail = nullptr);

Json to_json(Complex z);
Json to_json(const DiskGrid& g);
Json to_json(const QuadratureConfig& q);
Json to_json(const CriterionReport& r);
Json to_json(const QcBound& b);
Json to_json(const InjectivityReport& r);
Json to_json(const DilatationReport& r);
Json to_json(const SeamReport& r);
Json error_json(const std::exception& e);

/// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace gft::cli

#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gft/disk_grid.hpp"
#include "gft/operators.hpp"
#include "gft/qc_bound.hpp"
#include "gft/triple.hpp"

namespace gft {

/// Scalar parameters shared by the criteria. a = Re s, b = Im s.
struct CriterionParams {
  Complex alpha = 1.0;
  Complex c = -1.0;
  Complex s = 1.0;
  double m = 2.0;
  double k = 0.0;

  double a() const { return s.real(); }
  double b() const { return s.imag(); }
  /// Throws InvalidArgument (or AlphaTooSmall) naming the violated constraint.
  void validate() const;
};

struct UkMembership {
  bool member = false;
  double distance = 0.0;  ///< |(w-1)/(w+1)|, +inf at w = -1
};

/// U(k) = { w : |(w-1)/(w+1)| <= k }.
UkMembership in_Uk(Complex w, double k);

/// |alpha - m/(2a)| < m/(2a).
bool check_alpha_condition(const CriterionParams& p);

enum class Inequality { Strict, NonStrict };

/// Numerical reading of "holds": strict needs margin > 1e-12, non-strict
/// tolerates margin >= -1e-12.
bool inequality_holds(Inequality kind, double margin);

struct ConditionReport {
  std::string name;
  Inequality kind = Inequality::NonStrict;
  bool satisfied = false;
  double margin = 0.0;   ///< min over samples of rhs - lhs
  double max_lhs = 0.0;
  double rhs = 0.0;
  Complex witness;       ///< sample where lhs - rhs is largest
  /// Max lhs at the three outermost grid radii; absent for scalar conditions.
  std::optional<std::array<double, 3>> boundary_trend;
};

struct CriterionReport {
  std::string criterion_id;
  bool satisfied = false;
  double margin = 0.0;
  double max_lhs = 0.0;
  Complex witness;
  std::vector<ConditionReport> conditions;  ///< side conditions first, main inequality last
  DiskGrid grid_used;
  std::optional<QcBound> qc_bound;          ///< T5-qc only, and only when satisfied

  /// Name of the first failing condition, if any.
  std::optional<std::string> failed_condition() const;
  /// "certified-on-grid" or "falsified-on-grid"; a grid pass is never a proof.
  std::string verdict() const;
};

// Pointwise left-hand sides, exposed for property tests and diagnostics.
namespace lhs {

/// |c/h + m/(2 alpha)|, compared against m/(2|alpha|).
double eq2(const CriterionParams& p, Complex h);
/// |(-c alpha)/(a h) lambda + (1 - lambda) bracket - m/(2a)| with lambda = r^exponent.
double blend(const CriterionParams& p, Complex h, Complex bracket, double r, double exponent);
/// |bracket - m/(2a)|.
double simplified(const CriterionParams& p, Complex bracket);
/// |(m-2)/2 - (1 - r^m) z f''/f'|.
double becker(double m, double r, Complex zf2_over_f1);
/// |c alpha / h + m/2|, compared against k m/2.
double qc_h(const CriterionParams& p, Complex h);

}  // namespace lhs

CriterionReport check_h_condition(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid);
CriterionReport check_main_T2(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid);
CriterionReport check_simplified_T21(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid);
/// Requires m > 1 (m = 2 is the classical case).
CriterionReport check_becker(const FunctionExpr& f, double m, const DiskGrid& grid);
/// Requires a >= 1.
CriterionReport check_T3(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid);
/// On success the report carries qc_bound_K(s, k).
CriterionReport check_qc_T5(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid);
/// Requires real alpha > 0. Tests z^(1-alpha) g^(alpha-1) f' in U(k), the
/// power continued radially from 1 at the origin.
CriterionReport check_T6(const FunctionExpr& f, const FunctionExpr& g, Complex alpha, double k, const DiskGrid& grid);

/// Continued value of (g(z)/z)^(alpha-1) f'(z).
Complex t6_expression(const CompiledExpr& g, const CompiledExpr& df, Complex alpha, Complex z);

using LogDerivativeSource = std::variant<FunctionExpr, IntegralOperator>;

/// z G'(z)/G(z) for a symbolic G or, for a sampled operator, by Richardson
/// extrapolated central differences with step 1e-5 (1 - |z|).
Complex log_derivative(const LogDerivativeSource& G, Complex z);

CriterionReport check_log_derivative_condition(const LogDerivativeSource& G, double k, const DiskGrid& grid);

// Presets: the classical special cases of the criteria.

struct PresetInput {
  FunctionExpr f, g, h;  ///< for "lewandowski" h carries the positive-real-part function
  CriterionParams params;
  std::string requested_check;  ///< may be empty
};

struct PresetResult {
  std::string route;  ///< criterion id to run
  FunctionExpr f, g, h;
  CriterionParams params;
};

const std::vector<std::string>& preset_names();
/// Short description of each preset, same order as preset_names().
std::string preset_description(std::string_view name);
bool is_preset(std::string_view name);
/// Throws UnknownPreset for unknown names.
PresetResult apply_preset(std::string_view name, const PresetInput& in);

}  // namespace gft

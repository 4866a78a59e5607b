#include "gft/criteria.hpp"

#include <cmath>

#include "gft/dsl.hpp"

namespace gft {

void CriterionParams::validate() const {
  auto finite = [](Complex w) { return is_finite(w); };
  if (!finite(alpha) || !finite(c) || !finite(s) || !std::isfinite(m) || !std::isfinite(k))
    throw Error(ErrorKind::InvalidArgument, "parameters must be finite");
  if (!(a() > 0.0)) throw Error(ErrorKind::InvalidArgument, "Re(s) must be positive");
  if (!(m > 0.0)) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidArgument, "k must lie in [0, 1)");
  if (c.imag() == 0.0 && c.real() >= 0.0) throw Error(ErrorKind::InvalidArgument, "c must lie off [0, inf)");
  if (std::abs(alpha) < 1e-9) throw Error(ErrorKind::AlphaTooSmall, "|alpha| must be at least 1e-9");
}

UkMembership in_Uk(Complex w, double k) {
  if (w == Complex(-1.0)) return {false, INFINITY};
  double d = std::abs((w - 1.0) / (w + 1.0));
  return {d <= k, d};
}

bool check_alpha_condition(const CriterionParams& p) {
  const double half = p.m / (2.0 * p.a());
  return std::abs(p.alpha - half) < half;
}

bool inequality_holds(Inequality kind, double margin) {
  return kind == Inequality::Strict ? margin > 1e-12 : margin >= -1e-12;
}

std::optional<std::string> CriterionReport::failed_condition() const {
  for (const auto& c : conditions)
    if (!c.satisfied) return c.name;
  return std::nullopt;
}

std::string CriterionReport::verdict() const { return satisfied ? "certified-on-grid" : "falsified-on-grid"; }

namespace lhs {

double eq2(const CriterionParams& p, Complex h) { return std::abs(p.c / h + p.m / (2.0 * p.alpha)); }

double blend(const CriterionParams& p, Complex h, Complex bracket, double r, double exponent) {
  const double lambda = std::pow(r, exponent);
  return std::abs(-p.c * p.alpha / (p.a() * h) * lambda + (1.0 - lambda) * bracket - p.m / (2.0 * p.a()));
}

double simplified(const CriterionParams& p, Complex bracket) { return std::abs(bracket - p.m / (2.0 * p.a())); }

double becker(double m, double r, Complex zf2_over_f1) {
  return std::abs((m - 2.0) / 2.0 - (1.0 - std::pow(r, m)) * zf2_over_f1);
}

double qc_h(const CriterionParams& p, Complex h) { return std::abs(p.c * p.alpha / h + p.m / 2.0); }

}  // namespace lhs

namespace {

ConditionReport scalar_condition(std::string name, Inequality kind, double lhs_value, double rhs) {
  ConditionReport c;
  c.name = std::move(name);
  c.kind = kind;
  c.max_lhs = lhs_value;
  c.rhs = rhs;
  c.margin = rhs - lhs_value;
  c.satisfied = inequality_holds(kind, c.margin);
  return c;
}

ConditionReport grid_condition(std::string name, Inequality kind, double rhs, const ScalarField& lhs_field,
                               const DiskGrid& grid) {
  GridMaximum mx = disk_maximize(lhs_field, grid);
  ConditionReport c = scalar_condition(std::move(name), kind, mx.value, rhs);
  c.witness = mx.witness;
  c.boundary_trend = mx.boundary_trend;
  return c;
}

CriterionReport assemble(std::string id, std::vector<ConditionReport> conditions, const DiskGrid& grid) {
  CriterionReport r;
  r.criterion_id = std::move(id);
  r.grid_used = grid;
  const ConditionReport& main = conditions.back();
  r.margin = main.margin;
  r.max_lhs = main.max_lhs;
  r.witness = main.witness;
  r.satisfied = true;
  for (const auto& c : conditions) r.satisfied = r.satisfied && c.satisfied;
  r.conditions = std::move(conditions);
  return r;
}

Complex nonzero_h(const AnalyticTriple& t, Complex z) {
  Complex h = t.h(z);
  if (h == Complex(0.0)) throw Error(ErrorKind::DivisionByZero, "h vanishes", z);
  return h;
}

ConditionReport eq1_condition(const CriterionParams& p) {
  const double half = p.m / (2.0 * p.a());
  return scalar_condition("eq1", Inequality::Strict, std::abs(p.alpha - half), half);
}

ConditionReport eq2_condition(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid) {
  return grid_condition(
      "eq2", Inequality::Strict, p.m / (2.0 * std::abs(p.alpha)),
      [&](Complex z) { return lhs::eq2(p, nonzero_h(t, z)); }, grid);
}

ConditionReport blend_condition(std::string name, const AnalyticTriple& t, const CriterionParams& p,
                                double exponent, double rhs, const DiskGrid& grid) {
  return grid_condition(
      std::move(name), Inequality::NonStrict, rhs,
      [&](Complex z) { return lhs::blend(p, nonzero_h(t, z), t.bracket(z, p.alpha), std::abs(z), exponent); },
      grid);
}

}  // namespace

CriterionReport check_h_condition(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid) {
  p.validate();
  grid.validate();
  return assemble("h-condition", {eq2_condition(t, p, grid)}, grid);
}

CriterionReport check_main_T2(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid) {
  p.validate();
  grid.validate();
  std::vector<ConditionReport> cs{eq1_condition(p), eq2_condition(t, p, grid)};
  cs.push_back(blend_condition("eq3", t, p, p.m / p.a(), p.m / (2.0 * p.a()), grid));
  return assemble("T2", std::move(cs), grid);
}

CriterionReport check_simplified_T21(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid) {
  p.validate();
  grid.validate();
  std::vector<ConditionReport> cs{eq1_condition(p), eq2_condition(t, p, grid)};
  cs.push_back(grid_condition(
      "eq211", Inequality::NonStrict, p.m / (2.0 * p.a()),
      [&](Complex z) { return lhs::simplified(p, t.bracket(z, p.alpha)); }, grid));
  return assemble("T21", std::move(cs), grid);
}

CriterionReport check_becker(const FunctionExpr& f, double m, const DiskGrid& grid) {
  if (!(m > 1.0)) throw Error(ErrorKind::Precondition, "becker criterion needs m > 1");
  grid.validate();
  AnalyticTriple t(f, FunctionExpr::variable(), FunctionExpr::constant(1.0));
  std::vector<ConditionReport> cs;
  cs.push_back(grid_condition(
      "e4", Inequality::NonStrict, m / 2.0,
      [&](Complex z) { return lhs::becker(m, std::abs(z), t.zf2_over_f1(z)); }, grid));
  return assemble("becker", std::move(cs), grid);
}

CriterionReport check_T3(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid) {
  p.validate();
  if (!(p.a() >= 1.0)) throw Error(ErrorKind::Precondition, "this criterion needs Re(s) >= 1");
  grid.validate();
  std::vector<ConditionReport> cs{eq1_condition(p), eq2_condition(t, p, grid)};
  cs.push_back(blend_condition("eq18", t, p, p.m, p.m / (2.0 * p.a()), grid));
  return assemble("T3", std::move(cs), grid);
}

CriterionReport check_qc_T5(const AnalyticTriple& t, const CriterionParams& p, const DiskGrid& grid) {
  p.validate();
  grid.validate();
  std::vector<ConditionReport> cs{eq1_condition(p)};
  cs.push_back(grid_condition(
      "eq41", Inequality::Strict, p.k * p.m / 2.0, [&](Complex z) { return lhs::qc_h(p, nonzero_h(t, z)); }, grid));
  cs.push_back(blend_condition("eq4112", t, p, p.m / p.a(), p.k * p.m / (2.0 * p.a()), grid));
  CriterionReport r = assemble("T5-qc", std::move(cs), grid);
  if (r.satisfied) r.qc_bound = qc_bound_K(p.s, p.k);
  return r;
}

Complex t6_expression(const CompiledExpr& g, const CompiledExpr& df, Complex alpha, Complex z) {
  Complex d = df(z);
  if (alpha == Complex(1.0) || z == Complex(0.0)) return z == Complex(0.0) ? Complex(1.0) : d;
  // Continue log(g(u)/u) along u = tau z from 0 at the origin.
  for (int n = 16; n <= 4096; n *= 2) {
    double arg = 0.0;
    bool ok = true;
    Complex ratio = 1.0;
    for (int j = 1; j <= n && ok; ++j) {
      Complex u = z * (static_cast<double>(j) / n);
      ratio = g(u) / u;
      if (ratio == Complex(0.0)) throw Error(ErrorKind::DivisionByZero, "g vanishes off the origin", u);
      double next = unwrap_arg(ratio, arg);
      ok = std::abs(next - arg) < kPi / 2;
      arg = next;
    }
    if (ok) return std::exp((alpha - 1.0) * Complex(std::log(std::abs(ratio)), arg)) * d;
  }
  throw Error(ErrorKind::BranchPointHit, "cannot continue (g/z)^(alpha-1) along the radius", z);
}

CriterionReport check_T6(const FunctionExpr& f, const FunctionExpr& g, Complex alpha, double k,
                         const DiskGrid& grid) {
  if (alpha.imag() != 0.0 || !(alpha.real() > 0.0))
    throw Error(ErrorKind::Precondition, "this criterion needs real alpha > 0");
  if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidArgument, "k must lie in [0, 1)");
  grid.validate();
  AnalyticTriple t(f, g, FunctionExpr::constant(1.0));
  CompiledExpr cg(g), cdf(differentiate(f));
  std::vector<ConditionReport> cs;
  cs.push_back(grid_condition(
      "Uk", Inequality::NonStrict, k, [&](Complex z) { return in_Uk(t6_expression(cg, cdf, alpha, z), k).distance; },
      grid));
  return assemble("T6", std::move(cs), grid);
}

Complex log_derivative(const LogDerivativeSource& G, Complex z) {
  if (const auto* e = std::get_if<FunctionExpr>(&G)) return log_derivative_at(*e, z);
  const auto& op = std::get<IntegralOperator>(G);
  if (z == Complex(0.0)) return 1.0;
  Complex value = op(z).value;
  if (value == Complex(0.0)) throw Error(ErrorKind::NonvanishingViolation, "operator vanishes", z);
  const double h = 1e-5 * (1.0 - std::abs(z));
  auto central = [&](double step) { return (op(z + step).value - op(z - step).value) / (2.0 * step); };
  Complex derivative = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  return z * derivative / value;
}

CriterionReport check_log_derivative_condition(const LogDerivativeSource& G, double k, const DiskGrid& grid) {
  if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidArgument, "k must lie in [0, 1)");
  grid.validate();
  std::vector<ConditionReport> cs;
  cs.push_back(grid_condition(
      "Uk", Inequality::NonStrict, k, [&](Complex z) { return in_Uk(log_derivative(G, z), k).distance; }, grid));
  return assemble("logderiv-Uk", std::move(cs), grid);
}

}  // namespace gft

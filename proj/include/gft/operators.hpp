#pragma once

#include "gft/expr.hpp"
#include "gft/quadrature.hpp"

namespace gft {

struct OperatorValue {
  Complex value;
  double estimated_error = 0.0;
  bool branch_ok = true;
};

/// [alpha * int_0^z g(u)^(alpha-1) f'(u) du]^(1/alpha) along the radial segment
/// [0, z], and its classical specializations.
///
/// The integrand power is evaluated as u^(alpha-1) (g(u)/u)^(alpha-1), the
/// second factor continued from 1 at the origin; the outer root is continued
/// so that G(z)/z -> 1 as z -> 0. Compiled once, then evaluated at many points.
class IntegralOperator {
 public:
  static IntegralOperator g_alpha(const FunctionExpr& f, const FunctionExpr& g, Complex alpha,
                                  QuadratureConfig config = {});
  /// g = z.
  static IntegralOperator pascu(const FunctionExpr& f, Complex alpha, QuadratureConfig config = {});
  /// f = z.
  static IntegralOperator moldoveanu_pascu(const FunctionExpr& g, Complex alpha, QuadratureConfig config = {});
  /// [alpha * int_0^z g(u)^alpha / u du]^(1/alpha).
  static IntegralOperator mocanu(const FunctionExpr& g, Complex alpha, QuadratureConfig config = {});

  OperatorValue operator()(Complex z) const;

  /// Raw radial integral (mean value I with alpha int_0^z ... = z^alpha I).
  RadialIntegral integrate(Complex z) const;

  Complex alpha() const { return alpha_; }
  const QuadratureConfig& config() const { return config_; }
  /// Initial panel count used for branch tracking.
  int min_panels() const { return min_panels_; }

  /// Continued-branch value of (g(u)/u)^(ratio exponent) * factor(u) given the
  /// continued log of the ratio at u.
  Complex integrand_at(Complex u, Complex log_ratio) const;

 private:
  IntegralOperator(RadialKernel kernel, Complex alpha, QuadratureConfig config);

  RadialKernel kernel_;
  Complex alpha_;
  QuadratureConfig config_;
  int min_panels_ = 1;
};

/// ln|w| + i arg(w) with arg chosen nearest `reference_arg`; clears `ok` when
/// that step is pi/2 or more.
Complex continue_log(Complex w, double reference_arg, bool& ok);

OperatorValue operator_G_alpha(const FunctionExpr& f, const FunctionExpr& g, Complex alpha, Complex z,
                               const QuadratureConfig& q = {});
OperatorValue operator_pascu(const FunctionExpr& f, Complex alpha, Complex z, const QuadratureConfig& q = {});
OperatorValue operator_moldoveanu_pascu(const FunctionExpr& g, Complex alpha, Complex z,
                                        const QuadratureConfig& q = {});
OperatorValue operator_mocanu(const FunctionExpr& g, Complex alpha, Complex z, const QuadratureConfig& q = {});

}  // namespace gft

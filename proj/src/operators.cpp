#include "gft/operators.hpp"

#include <cmath>
#include <memory>

namespace gft {

namespace {

bool is_real_integer(Complex w) { return w.imag() == 0.0 && w.real() == std::floor(w.real()); }

std::function<Complex(Complex)> ratio_of(const FunctionExpr& g) {
  auto compiled = std::make_shared<const CompiledExpr>(g);
  return [compiled](Complex u) { return (*compiled)(u) / u; };
}

std::function<Complex(Complex)> derivative_of(const FunctionExpr& f) {
  auto compiled = std::make_shared<const CompiledExpr>(differentiate(f));
  return [compiled](Complex u) { return (*compiled)(u); };
}

}  // namespace

Complex continue_log(Complex w, double reference_arg, bool& ok) {
  double arg = unwrap_arg(w, reference_arg);
  if (std::abs(arg - reference_arg) >= kPi / 2) ok = false;
  return {std::log(std::abs(w)), arg};
}

IntegralOperator::IntegralOperator(RadialKernel kernel, Complex alpha, QuadratureConfig config)
    : kernel_(std::move(kernel)), alpha_(alpha), config_(config) {
  config_.validate();
  if (std::abs(alpha) < 1e-9) throw Error(ErrorKind::AlphaTooSmall, "|alpha| < 1e-9");
  if (!(alpha.real() > 0.0))
    throw Error(ErrorKind::InvalidArgument, "Re(alpha) must be positive for the integral to converge at 0");
  bool track_ratio = kernel_.ratio && !is_real_integer(kernel_.exponent);
  bool track_root = !is_real_integer(1.0 / alpha_);
  min_panels_ = (track_ratio || track_root) ? 8 : 1;
}

IntegralOperator IntegralOperator::g_alpha(const FunctionExpr& f, const FunctionExpr& g, Complex alpha,
                                           QuadratureConfig config) {
  return IntegralOperator(RadialKernel{ratio_of(g), alpha - 1.0, derivative_of(f)}, alpha, config);
}

IntegralOperator IntegralOperator::pascu(const FunctionExpr& f, Complex alpha, QuadratureConfig config) {
  return IntegralOperator(RadialKernel{{}, 0.0, derivative_of(f)}, alpha, config);
}

IntegralOperator IntegralOperator::moldoveanu_pascu(const FunctionExpr& g, Complex alpha, QuadratureConfig config) {
  return IntegralOperator(RadialKernel{ratio_of(g), alpha - 1.0, {}}, alpha, config);
}

IntegralOperator IntegralOperator::mocanu(const FunctionExpr& g, Complex alpha, QuadratureConfig config) {
  return IntegralOperator(RadialKernel{ratio_of(g), alpha, {}}, alpha, config);
}

Complex IntegralOperator::integrand_at(Complex u, Complex log_ratio) const {
  Complex psi = kernel_.ratio ? std::exp(kernel_.exponent * log_ratio) : Complex(1.0);
  if (kernel_.factor) psi *= kernel_.factor(u);
  return psi;
}

RadialIntegral IntegralOperator::integrate(Complex z) const {
  if (std::abs(z) > 1.0 + 1e-12) throw Error(ErrorKind::Precondition, "point outside the closed unit disk", z);
  QuadratureConfig inner = config_;
  inner.abs_tolerance = config_.abs_tolerance * std::min(1.0, std::abs(alpha_));
  return integrate_radial(kernel_, alpha_, z, inner, min_panels_);
}

OperatorValue IntegralOperator::operator()(Complex z) const {
  if (z == Complex(0.0)) return {0.0, 0.0, true};
  RadialIntegral ri = integrate(z);
  bool ok = ri.branch_ok;
  double arg = 0.0;
  for (const auto& bp : ri.breakpoints) {
    if (bp.mean == Complex(0.0))
      throw Error(ErrorKind::NonvanishingViolation, "operator integral vanishes along the path", bp.rho * z);
    arg = continue_log(bp.mean, arg, ok).imag();
  }
  Complex log_mean{std::log(std::abs(ri.mean)), arg};
  Complex value = z * std::exp(log_mean / alpha_);
  if (!is_finite(value)) throw Error(ErrorKind::NonFinite, "operator value is not finite", z);
  double err = std::abs(value) * ri.estimated_error / (std::abs(alpha_) * std::abs(ri.mean));
  return {value, err, ok};
}

OperatorValue operator_G_alpha(const FunctionExpr& f, const FunctionExpr& g, Complex alpha, Complex z,
                               const QuadratureConfig& q) {
  return IntegralOperator::g_alpha(f, g, alpha, q)(z);
}

OperatorValue operator_pascu(const FunctionExpr& f, Complex alpha, Complex z, const QuadratureConfig& q) {
  return IntegralOperator::pascu(f, alpha, q)(z);
}

OperatorValue operator_moldoveanu_pascu(const FunctionExpr& g, Complex alpha, Complex z,
                                        const QuadratureConfig& q) {
  return IntegralOperator::moldoveanu_pascu(g, alpha, q)(z);
}

OperatorValue operator_mocanu(const FunctionExpr& g, Complex alpha, Complex z, const QuadratureConfig& q) {
  return IntegralOperator::mocanu(g, alpha, q)(z);
}

}  // namespace gft

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gft {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
  DivisionByZero,
  BranchPointHit,
  NonFinite,
  Parse,
  NotNormalized,
  InvalidArgument,
  Precondition,
  AlphaTooSmall,
  IntegrandSingular,
  ToleranceNotMet,
  NonvanishingViolation,
  DenominatorZero,
  PoleAtOne,
  DegenerateJacobian,
  OnCurve,
  UnresolvedWinding,
  UnknownPreset,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. Carries the failure category and, when the failure
/// is tied to a point of the plane, that point.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<Complex> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Complex>& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<Complex> where_;
};

inline bool is_finite(Complex w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

/// Wraps `value - reference` into (-pi, pi].
double wrap_angle(double value);

/// Representative of arg(w) closest to `reference`.
double unwrap_arg(Complex w, double reference);

}  // namespace gft

#include "gft/types.hpp"

#include <cmath>

namespace gft {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::BranchPointHit: return "BranchPointHit";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Parse: return "ParseDiagnostic";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::AlphaTooSmall: return "AlphaTooSmall";
    case ErrorKind::IntegrandSingular: return "IntegrandSingular";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::NonvanishingViolation: return "NonvanishingViolation";
    case ErrorKind::DenominatorZero: return "DenominatorZero";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::OnCurve: return "OnCurve";
    case ErrorKind::UnresolvedWinding: return "UnresolvedWinding";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<Complex> where)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), where_(where) {}

double wrap_angle(double value) {
  double w = std::remainder(value, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double unwrap_arg(Complex w, double reference) {
  return reference + wrap_angle(std::arg(w) - reference);
}

}  // namespace gft

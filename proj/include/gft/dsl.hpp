#pragma once

// Text front end for analytic functions of z.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right-associative, -z^2 == -(z^2)
//   atom   := 'z' | 'i' | number | number 'i' | name '(' args ')' | '(' expr ')'
//
// Names: exp(e), log(e), koebe, moebius(a), polynomial(c1, ..., cn).
// Presets expand at parse time:
//   koebe            -> z / (1 - z)^2
//   moebius(a)       -> z / (1 - a*z)
//   polynomial(c...) -> c1*z + c2*z^2 + ... + cn*z^n

#include <string>
#include <string_view>
#include <vector>

#include "gft/expr.hpp"

namespace gft {

struct ParseDiagnostic {
  std::size_t position = 0;
  std::string message;
  std::vector<std::string> expected;
};

class ParseError : public Error {
 public:
  explicit ParseError(ParseDiagnostic diagnostic);
  const ParseDiagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

FunctionExpr parse(std::string_view source);

/// Fully parenthesized canonical text. parse(print(e)) == e for every tree the
/// parser can produce.
std::string print(const FunctionExpr& expr);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

struct NormalizationCheck {
  bool normalized = false;
  Complex value_at_zero;
  Complex derivative_at_zero;
  std::vector<std::string> diagnostics;
};

/// f(0) = 0 and f'(0) = 1 to within 1e-12.
NormalizationCheck validate_normalized(const FunctionExpr& expr);

}  // namespace gft

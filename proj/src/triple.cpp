#include "gft/triple.hpp"

#include "gft/dsl.hpp"

namespace gft {

namespace {

void require_normalized(const FunctionExpr& e, const char* name) {
  auto check = validate_normalized(e);
  if (!check.normalized) {
    std::string msg = std::string(name) + " is not normalized:";
    for (const auto& d : check.diagnostics) msg += " " + d + ";";
    throw Error(ErrorKind::NotNormalized, msg);
  }
}

[[noreturn]] void vanishing(const char* what, Complex z) {
  throw Error(ErrorKind::DivisionByZero, std::string(what) + " vanishes", z);
}

}  // namespace

AnalyticTriple::AnalyticTriple(FunctionExpr f, FunctionExpr g, FunctionExpr h) {
  require_normalized(f, "f");
  require_normalized(g, "g");
  auto df = differentiate(f);
  f_ = CompiledExpr(f);
  df_ = CompiledExpr(df);
  d2f_ = CompiledExpr(differentiate(df));
  g_ = CompiledExpr(g);
  dg_ = CompiledExpr(differentiate(g));
  h_ = CompiledExpr(h);
  dh_ = CompiledExpr(differentiate(h));
  h0_ = h_(0.0);
  if (on_nonpositive_ray(h0_))
    throw Error(ErrorKind::InvalidArgument, "h(0) = " + format_double(h0_.real()) + " lies on (-inf, 0]");
}

Complex AnalyticTriple::zg_over_g(Complex z) const {
  if (z == Complex(0.0)) return 1.0;
  Complex gz = g_(z);
  if (gz == Complex(0.0)) vanishing("g", z);
  return z * dg_(z) / gz;
}

Complex AnalyticTriple::zf2_over_f1(Complex z) const {
  if (z == Complex(0.0)) return 0.0;
  Complex d1 = df_(z);
  if (d1 == Complex(0.0)) vanishing("f'", z);
  return z * d2f_(z) / d1;
}

Complex AnalyticTriple::zh_over_h(Complex z) const {
  Complex hz = h_(z);
  if (hz == Complex(0.0)) vanishing("h", z);
  if (z == Complex(0.0)) return 0.0;
  return z * dh_(z) / hz;
}

Complex AnalyticTriple::bracket(Complex z, Complex alpha) const {
  return (alpha - 1.0) * zg_over_g(z) + 1.0 + zf2_over_f1(z) + zh_over_h(z);
}

}  // namespace gft

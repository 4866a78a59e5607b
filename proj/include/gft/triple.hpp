#pragma once

#include "gft/expr.hpp"

namespace gft {

/// The (f, g, h) bundle behind every criterion. f and g are normalized
/// (f(0) = 0, f'(0) = 1) and h(0) lies off the ray (-inf, 0].
class AnalyticTriple {
 public:
  AnalyticTriple(FunctionExpr f, FunctionExpr g, FunctionExpr h);

  const FunctionExpr& f() const { return f_.source(); }
  const FunctionExpr& g() const { return g_.source(); }
  const FunctionExpr& h() const { return h_.source(); }
  Complex h0() const { return h0_; }

  Complex f(Complex z) const { return f_(z); }
  Complex f_prime(Complex z) const { return df_(z); }
  Complex f_second(Complex z) const { return d2f_(z); }
  Complex g(Complex z) const { return g_(z); }
  Complex g_prime(Complex z) const { return dg_(z); }
  Complex h(Complex z) const { return h_(z); }
  Complex h_prime(Complex z) const { return dh_(z); }

  // Log-derivative terms; at z = 0 each returns its removable limit
  // (1 for z g'/g, 0 for the other two).
  Complex zg_over_g(Complex z) const;
  Complex zf2_over_f1(Complex z) const;
  Complex zh_over_h(Complex z) const;

  /// (alpha - 1) z g'/g + 1 + z f''/f' + z h'/h
  Complex bracket(Complex z, Complex alpha) const;

 private:
  CompiledExpr f_, df_, d2f_, g_, dg_, h_, dh_;
  Complex h0_;
};

/// True when w lies on the closed ray (-inf, 0].
inline bool on_nonpositive_ray(Complex w) { return w.imag() == 0.0 && w.real() <= 0.0; }

}  // namespace gft

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gft/criteria.hpp"
#include "gft/operators.hpp"
#include "gft/qc_bound.hpp"

namespace gft {

/// A Loewner chain L(z, t), z in the disk, t >= 0.
struct Chain {
  std::function<Complex(Complex, double)> L;
  std::string description;

  Complex operator()(Complex z, double t) const { return L(z, t); }
};

/// The chain behind the main criterion:
///   L(z,t) = [alpha int_0^u g^(alpha-1) f' du - (a/c)(e^(mt) - 1) u g(u)^(alpha-1) f'(u) h(u)]^(1/alpha),
/// u = e^(-st) z, with the root continued so that L(z,t)/(a1(t) z) -> 1 as z -> 0.
Chain make_main_chain(const AnalyticTriple& triple, const CriterionParams& p, const QuadratureConfig& q = {});

/// L(z,t) = [alpha int_0^z g^(alpha-1) f' du + (e^(alpha t) - 1) z^alpha]^(1/alpha), alpha > 0 real.
Chain make_t6_chain(const FunctionExpr& f, const FunctionExpr& g, double alpha, const QuadratureConfig& q = {});

/// L(z,t) = e^t G(z).
Chain make_exponential_chain(std::function<Complex(Complex)> G, std::string description);

Complex chain_L(const AnalyticTriple& triple, const CriterionParams& p, Complex z, double t,
                const QuadratureConfig& q = {});
Complex chain_T6(const FunctionExpr& f, const FunctionExpr& g, double alpha, Complex z, double t,
                 const QuadratureConfig& q = {});

/// p(z,t) of the alpha > 0 chain: e^(-alpha t) E + (1 - e^(-alpha t)), E the
/// continued z^(1-alpha) g^(alpha-1) f'.
Complex chain_T6_p(const FunctionExpr& f, const FunctionExpr& g, double alpha, Complex z, double t);

/// a1(t) = e^(t(m/alpha - s)) [(1 + (a/c) h0) e^(-mt) - (a/c) h0]^(1/alpha),
/// the root continued in t from a1(0) = 1.
Complex chain_a1(const CriterionParams& p, Complex h0, double t);
/// log a1(t) on the same branch; its real part stays finite when |a1| overflows.
Complex chain_log_a1(const CriterionParams& p, Complex h0, double t);

/// Continued log of (1 + (a/c) h0) e^(-mt) - (a/c) h0 on [0, t], from 0 at t = 0.
Complex chain_bracket_log(const CriterionParams& p, Complex h0, double t);

Complex transfer_A(const AnalyticTriple& triple, const CriterionParams& p, Complex z, double t);
/// ((1+s)A - m)/((1-s)A + m); DenominatorZero when the denominator vanishes.
Complex transfer_w(Complex A, Complex s, double m);
/// (1+w)/(1-w); PoleAtOne at w = 1.
Complex transfer_p(Complex w);

struct ChainPoint {
  Complex z;
  double t = 0.0;
  Complex L, A, B, w, p, a1;
};

ChainPoint evaluate_chain_point(const AnalyticTriple& triple, const CriterionParams& p, Complex z, double t,
                                const QuadratureConfig& q = {});

struct ChainSample {
  Complex z;
  double t = 0.0;
};

/// Regular lattice: radii r_max (i+1)/n_r, angles 2 pi j/n_theta, times t_max l/(n_t - 1).
std::vector<ChainSample> chain_lattice(int n_r, int n_theta, int n_t, double r_max, double t_max);

struct ChainCheck {
  std::string name;
  bool satisfied = true;
  double margin = INFINITY;  ///< worst rhs - lhs over the samples
  ChainSample witness;
};

struct ChainConditionsReport {
  bool satisfied = false;
  /// "w-in-disk", "re-p-positive", "b-bound", "a1-increasing", in this order.
  std::vector<ChainCheck> checks;
  std::vector<double> t_ladder;  ///< distinct sampled times, increasing
  // The a1 check compares log |a1| between consecutive ladder times.
};

ChainConditionsReport verify_chain_conditions(const AnalyticTriple& triple, const CriterionParams& p,
                                              const std::vector<ChainSample>& samples);

}  // namespace gft

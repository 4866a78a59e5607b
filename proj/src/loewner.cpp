#include "gft/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gft/dsl.hpp"
#include "gft/parallel.hpp"

namespace gft {

namespace {

/// W(rho z) from the radial mean, the continued log of g/u and u = rho z.
using RadialFunction = std::function<Complex(Complex mean, Complex log_ratio, Complex u)>;

class RadialContinuation {
 public:
  RadialContinuation(const IntegralOperator& op, Complex z, const RadialFunction& W) : op_(op), z_(z), W_(W) {}

  /// log W(z), the argument continued along [0, z] from log_start.
  Complex run(Complex log_start) {
    RadialIntegral ri = op_.integrate(z_);
    double arg = log_start.imag();
    double rho = 0.0;
    Complex w = std::exp(log_start);
    for (const auto& bp : ri.breakpoints) {
      w = W_(bp.mean, bp.log_ratio, bp.rho * z_);
      arg = step(rho, bp.rho, arg, w, 0);
      rho = bp.rho;
    }
    return {std::log(std::abs(w)), arg};
  }

 private:
  Complex at(double rho) const {
    RadialIntegral ri = op_.integrate(rho * z_);
    return W_(ri.mean, ri.breakpoints.back().log_ratio, rho * z_);
  }

  double step(double rho0, double rho1, double arg0, Complex w1, int depth) const {
    if (w1 == Complex(0.0)) throw Error(ErrorKind::NonvanishingViolation, "chain bracket vanishes", rho1 * z_);
    if (!is_finite(w1)) throw Error(ErrorKind::NonFinite, "chain bracket is not finite", rho1 * z_);
    double arg1 = unwrap_arg(w1, arg0);
    if (std::abs(arg1 - arg0) < kPi / 2) return arg1;
    if (depth >= 20) throw Error(ErrorKind::BranchPointHit, "cannot continue the chain root along the radius", z_);
    double mid = 0.5 * (rho0 + rho1);
    double arg_mid = step(rho0, mid, arg0, at(mid), depth + 1);
    return step(mid, rho1, arg_mid, w1, depth + 1);
  }

  const IntegralOperator& op_;
  Complex z_;
  const RadialFunction& W_;
};

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::Precondition, "chain time must be finite and >= 0");
}

std::string at_time(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " (t = %.17g)", t);
  return buf;
}

}  // namespace

Complex chain_bracket_log(const CriterionParams& p, Complex h0, double t) {
  require_time(t);
  const Complex beta = p.a() / p.c * h0;
  auto X = [&](double tau) { return (1.0 + beta) * std::exp(-p.m * tau) - beta; };
  if (t == 0.0) return 0.0;
  for (int n = 8; n <= (1 << 20); n *= 2) {
    double arg = 0.0;
    bool ok = true;
    Complex x = 1.0;
    for (int j = 1; j <= n && ok; ++j) {
      x = X(t * j / n);
      if (x == Complex(0.0)) throw Error(ErrorKind::BranchPointHit, "a1 bracket vanishes" + at_time(t * j / n));
      double next = unwrap_arg(x, arg);
      ok = std::abs(next - arg) < kPi / 2;
      arg = next;
    }
    if (ok) return {std::log(std::abs(x)), arg};
  }
  throw Error(ErrorKind::BranchPointHit, "cannot continue the a1 bracket" + at_time(t));
}

Complex chain_log_a1(const CriterionParams& p, Complex h0, double t) {
  return t * (p.m / p.alpha - p.s) + chain_bracket_log(p, h0, t) / p.alpha;
}

Complex chain_a1(const CriterionParams& p, Complex h0, double t) { return std::exp(chain_log_a1(p, h0, t)); }

Chain make_main_chain(const AnalyticTriple& triple, const CriterionParams& p, const QuadratureConfig& q) {
  p.validate();
  auto op = std::make_shared<IntegralOperator>(IntegralOperator::g_alpha(triple.f(), triple.g(), p.alpha, q));
  auto tr = std::make_shared<AnalyticTriple>(triple);
  Chain chain;
  chain.description = "main chain, f = " + print(triple.f()) + ", g = " + print(triple.g()) + ", h = " + print(triple.h());
  chain.L = [op, tr, p](Complex z, double t) -> Complex {
    require_time(t);
    if (std::abs(z) > 1.0 + 1e-12) throw Error(ErrorKind::Precondition, "chain point outside the closed disk", z);
    const Complex u = std::exp(-p.s * t) * z;
    if (u == Complex(0.0)) return 0.0;
    const Complex coef = p.a() / p.c * std::expm1(p.m * t);
    Complex log_start = p.m * t + chain_bracket_log(p, tr->h0(), t);
    RadialFunction W = [&](Complex mean, Complex log_ratio, Complex v) {
      return mean - coef * op->integrand_at(v, log_ratio) * tr->h(v);
    };
    Complex log_w = RadialContinuation(*op, u, W).run(log_start);
    Complex L = u * std::exp(log_w / p.alpha);
    if (!is_finite(L)) throw Error(ErrorKind::NonFinite, "chain value is not finite" + at_time(t), z);
    return L;
  };
  return chain;
}

Chain make_t6_chain(const FunctionExpr& f, const FunctionExpr& g, double alpha, const QuadratureConfig& q) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::Precondition, "this chain needs real alpha > 0");
  auto op = std::make_shared<IntegralOperator>(IntegralOperator::g_alpha(f, g, alpha, q));
  Chain chain;
  chain.description = "alpha > 0 chain, f = " + print(f) + ", g = " + print(g);
  chain.L = [op, alpha](Complex z, double t) -> Complex {
    require_time(t);
    if (z == Complex(0.0)) return 0.0;
    const double grow = std::expm1(alpha * t);
    RadialFunction W = [&](Complex mean, Complex, Complex) { return mean + grow; };
    Complex log_w = RadialContinuation(*op, z, W).run(alpha * t);
    Complex L = z * std::exp(log_w / alpha);
    if (!is_finite(L)) throw Error(ErrorKind::NonFinite, "chain value is not finite" + at_time(t), z);
    return L;
  };
  return chain;
}

Chain make_exponential_chain(std::function<Complex(Complex)> G, std::string description) {
  return {[G = std::move(G)](Complex z, double t) { return std::exp(t) * G(z); }, std::move(description)};
}

Complex chain_L(const AnalyticTriple& triple, const CriterionParams& p, Complex z, double t,
                const QuadratureConfig& q) {
  return make_main_chain(triple, p, q)(z, t);
}

Complex chain_T6(const FunctionExpr& f, const FunctionExpr& g, double alpha, Complex z, double t,
                 const QuadratureConfig& q) {
  return make_t6_chain(f, g, alpha, q)(z, t);
}

Complex chain_T6_p(const FunctionExpr& f, const FunctionExpr& g, double alpha, Complex z, double t) {
  require_time(t);
  CompiledExpr cg(g), cdf(differentiate(f));
  const double decay = std::exp(-alpha * t);
  return decay * t6_expression(cg, cdf, alpha, z) + (1.0 - decay);
}

Complex transfer_A(const AnalyticTriple& triple, const CriterionParams& p, Complex z, double t) {
  require_time(t);
  const Complex u = std::exp(-p.s * t) * z;
  const Complex hu = triple.h(u);
  if (hu == Complex(0.0)) throw Error(ErrorKind::DivisionByZero, "h vanishes" + at_time(t), u);
  const double decay = std::exp(-p.m * t);
  return -p.c * p.alpha / (p.a() * hu) * decay + (1.0 - decay) * triple.bracket(u, p.alpha);
}

Complex transfer_w(Complex A, Complex s, double m) {
  Complex den = (1.0 - s) * A + m;
  if (den == Complex(0.0)) throw Error(ErrorKind::DenominatorZero, "(1 - s) A + m vanishes");
  return ((1.0 + s) * A - m) / den;
}

Complex transfer_p(Complex w) {
  if (w == Complex(1.0)) throw Error(ErrorKind::PoleAtOne, "p has a pole at w = 1");
  return (1.0 + w) / (1.0 - w);
}

ChainPoint evaluate_chain_point(const AnalyticTriple& triple, const CriterionParams& p, Complex z, double t,
                                const QuadratureConfig& q) {
  ChainPoint pt;
  pt.z = z;
  pt.t = t;
  pt.L = chain_L(triple, p, z, t, q);
  pt.A = transfer_A(triple, p, z, t);
  pt.B = pt.A - p.m / (2.0 * p.a());
  pt.w = transfer_w(pt.A, p.s, p.m);
  pt.p = transfer_p(pt.w);
  pt.a1 = chain_a1(p, triple.h0(), t);
  return pt;
}

std::vector<ChainSample> chain_lattice(int n_r, int n_theta, int n_t, double r_max, double t_max) {
  if (n_r < 1 || n_theta < 1 || n_t < 1) throw Error(ErrorKind::InvalidArgument, "lattice needs positive counts");
  std::vector<ChainSample> out;
  out.reserve(static_cast<std::size_t>(n_r) * n_theta * n_t);
  for (int l = 0; l < n_t; ++l) {
    double t = n_t == 1 ? 0.0 : t_max * l / (n_t - 1);
    for (int i = 0; i < n_r; ++i)
      for (int j = 0; j < n_theta; ++j) out.push_back({std::polar(r_max * (i + 1) / n_r, 2 * kPi * j / n_theta), t});
  }
  return out;
}

ChainConditionsReport verify_chain_conditions(const AnalyticTriple& triple, const CriterionParams& p,
                                              const std::vector<ChainSample>& samples) {
  p.validate();
  struct Values {
    Complex B, w, pv;
  };
  std::vector<Values> values(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto& s = samples[i];
    try {
      Complex A = transfer_A(triple, p, s.z, s.t);
      Complex w = transfer_w(A, p.s, p.m);
      values[i] = {A - p.m / (2.0 * p.a()), w, transfer_p(w)};
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + at_time(s.t), s.z);
    }
  });

  ChainConditionsReport report;
  auto named = [](const char* name) {
    ChainCheck c;
    c.name = name;
    return c;
  };
  ChainCheck w_check = named("w-in-disk"), p_check = named("re-p-positive"), b_check = named("b-bound"),
             a1_check = named("a1-increasing");
  auto update = [](ChainCheck& c, double margin, const ChainSample& s) {
    if (margin < c.margin) {
      c.margin = margin;
      c.witness = s;
    }
  };
  const double half = p.m / (2.0 * p.a());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    update(w_check, 1.0 - std::abs(values[i].w), samples[i]);
    update(p_check, values[i].pv.real(), samples[i]);
    update(b_check, half - std::abs(values[i].B), samples[i]);
  }

  for (const auto& s : samples) report.t_ladder.push_back(s.t);
  std::sort(report.t_ladder.begin(), report.t_ladder.end());
  report.t_ladder.erase(std::unique(report.t_ladder.begin(), report.t_ladder.end()), report.t_ladder.end());
  double previous = 0.0;
  for (std::size_t i = 0; i < report.t_ladder.size(); ++i) {
    double t = report.t_ladder[i];
    double mod = chain_log_a1(p, triple.h0(), t).real();
    if (i > 0) update(a1_check, mod - previous, {0.0, t});
    previous = mod;
  }

  report.satisfied = true;
  for (ChainCheck* c : {&w_check, &p_check, &b_check, &a1_check}) {
    c->satisfied = inequality_holds(Inequality::Strict, c->margin);
    report.satisfied = report.satisfied && c->satisfied;
    report.checks.push_back(*c);
  }
  return report;
}

}  // namespace gft

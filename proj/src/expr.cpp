#include "gft/expr.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "gft/dsl.hpp"

namespace gft {

int arity(NodeKind kind) {
  switch (kind) {
    case NodeKind::Variable:
    case NodeKind::Constant: return 0;
    case NodeKind::Negate:
    case NodeKind::Exp:
    case NodeKind::Log: return 1;
    default: return 2;
  }
}

FunctionExpr FunctionExpr::variable() {
  return FunctionExpr(std::make_shared<const Node>(Node{NodeKind::Variable, {}, {}}));
}

FunctionExpr FunctionExpr::constant(Complex value) {
  if (!is_finite(value)) throw Error(ErrorKind::NonFinite, "constant is not finite");
  return FunctionExpr(std::make_shared<const Node>(Node{NodeKind::Constant, value, {}}));
}

FunctionExpr FunctionExpr::unary(NodeKind kind, FunctionExpr operand) {
  if (arity(kind) != 1) throw Error(ErrorKind::InvalidArgument, "node kind is not unary");
  return FunctionExpr(std::make_shared<const Node>(Node{kind, {}, {std::move(operand)}}));
}

FunctionExpr FunctionExpr::binary(NodeKind kind, FunctionExpr lhs, FunctionExpr rhs) {
  if (arity(kind) != 2) throw Error(ErrorKind::InvalidArgument, "node kind is not binary");
  return FunctionExpr(std::make_shared<const Node>(Node{kind, {}, {std::move(lhs), std::move(rhs)}}));
}

NodeKind FunctionExpr::kind() const { return node_->kind; }
Complex FunctionExpr::value() const { return node_->value; }
std::span<const FunctionExpr> FunctionExpr::children() const { return node_->children; }

bool FunctionExpr::depends_on_z() const {
  if (kind() == NodeKind::Variable) return true;
  for (const auto& c : children())
    if (c.depends_on_z()) return true;
  return false;
}

std::size_t FunctionExpr::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == NodeKind::Constant) return a.value() == b.value();
  auto ca = a.children();
  auto cb = b.children();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

FunctionExpr operator-(FunctionExpr a) { return FunctionExpr::unary(NodeKind::Negate, std::move(a)); }
FunctionExpr operator+(FunctionExpr a, FunctionExpr b) {
  return FunctionExpr::binary(NodeKind::Add, std::move(a), std::move(b));
}
FunctionExpr operator-(FunctionExpr a, FunctionExpr b) {
  return FunctionExpr::binary(NodeKind::Subtract, std::move(a), std::move(b));
}
FunctionExpr operator*(FunctionExpr a, FunctionExpr b) {
  return FunctionExpr::binary(NodeKind::Multiply, std::move(a), std::move(b));
}
FunctionExpr operator/(FunctionExpr a, FunctionExpr b) {
  return FunctionExpr::binary(NodeKind::Divide, std::move(a), std::move(b));
}
FunctionExpr pow(FunctionExpr base, FunctionExpr exponent) {
  return FunctionExpr::binary(NodeKind::Power, std::move(base), std::move(exponent));
}
FunctionExpr exp(FunctionExpr a) { return FunctionExpr::unary(NodeKind::Exp, std::move(a)); }
FunctionExpr log(FunctionExpr a) { return FunctionExpr::unary(NodeKind::Log, std::move(a)); }

Complex principal_log(Complex w) {
  double im = std::atan2(w.imag(), w.real());
  if (im == -kPi) im = kPi;
  return {std::log(std::abs(w)), im};
}

namespace {

bool small_integer(Complex p, long& n) {
  if (p.imag() != 0.0) return false;
  double r = p.real();
  if (std::abs(r) > 64.0 || r != std::floor(r)) return false;
  n = static_cast<long>(r);
  return true;
}

Complex integer_power(Complex w, long n) {
  bool invert = n < 0;
  unsigned long e = static_cast<unsigned long>(invert ? -n : n);
  Complex result = 1.0;
  Complex base = w;
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return invert ? 1.0 / result : result;
}

[[noreturn]] void fail_at(ErrorKind kind, const FunctionExpr& sub, Complex z, const char* what) {
  throw Error(kind, std::string(what) + " in '" + print(sub) + "'", z);
}

Complex checked(Complex v, const FunctionExpr& sub, Complex z) {
  if (!is_finite(v)) fail_at(ErrorKind::NonFinite, sub, z, "non-finite value");
  return v;
}

Complex apply_unary(NodeKind kind, Complex a, const FunctionExpr& sub, Complex z) {
  switch (kind) {
    case NodeKind::Negate: return -a;
    case NodeKind::Exp: return checked(std::exp(a), sub, z);
    case NodeKind::Log:
      if (a == Complex(0.0)) fail_at(ErrorKind::BranchPointHit, sub, z, "log of zero");
      return principal_log(a);
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "not a unary node");
}

Complex apply_binary(NodeKind kind, Complex a, Complex b, const FunctionExpr& sub, Complex z) {
  switch (kind) {
    case NodeKind::Add: return checked(a + b, sub, z);
    case NodeKind::Subtract: return checked(a - b, sub, z);
    case NodeKind::Multiply: return checked(a * b, sub, z);
    case NodeKind::Divide:
      if (b == Complex(0.0)) fail_at(ErrorKind::DivisionByZero, sub, z, "division by zero");
      return checked(a / b, sub, z);
    case NodeKind::Power:
      if (a == Complex(0.0) && b.real() <= 0.0) fail_at(ErrorKind::BranchPointHit, sub, z, "power of zero");
      return checked(principal_power(a, b), sub, z);
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "not a binary node");
}

}  // namespace

Complex principal_power(Complex w, Complex exponent) {
  if (w == Complex(0.0)) {
    if (exponent.real() > 0.0) return 0.0;
    throw Error(ErrorKind::BranchPointHit, "zero raised to an exponent with non-positive real part", w);
  }
  long n = 0;
  if (small_integer(exponent, n)) return integer_power(w, n);
  return std::exp(exponent * principal_log(w));
}

Complex eval(const FunctionExpr& expr, Complex z) {
  switch (expr.kind()) {
    case NodeKind::Variable: return z;
    case NodeKind::Constant: return expr.value();
    case NodeKind::Negate:
    case NodeKind::Exp:
    case NodeKind::Log: return apply_unary(expr.kind(), eval(expr.child(0), z), expr, z);
    default: {
      Complex a = eval(expr.child(0), z);
      Complex b = eval(expr.child(1), z);
      return apply_binary(expr.kind(), a, b, expr, z);
    }
  }
}

// ---------------------------------------------------------------------------
// Differentiation. The constructors below fold constants and drop the
// additive/multiplicative identities; nothing else is simplified.

namespace {

bool is_const(const FunctionExpr& e, Complex v) { return e.is_constant() && e.value() == v; }
FunctionExpr cst(Complex v) { return FunctionExpr::constant(v); }

FunctionExpr make_neg(const FunctionExpr& a) {
  if (a.is_constant()) return cst(-a.value());
  if (a.kind() == NodeKind::Negate) return a.child(0);
  return -a;
}

FunctionExpr make_add(const FunctionExpr& a, const FunctionExpr& b) {
  if (a.is_constant() && b.is_constant()) return cst(a.value() + b.value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return a + b;
}

FunctionExpr make_sub(const FunctionExpr& a, const FunctionExpr& b) {
  if (a.is_constant() && b.is_constant()) return cst(a.value() - b.value());
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return make_neg(b);
  return a - b;
}

FunctionExpr make_mul(const FunctionExpr& a, const FunctionExpr& b) {
  if (a.is_constant() && b.is_constant()) return cst(a.value() * b.value());
  if (is_const(a, 0.0) || is_const(b, 0.0)) return cst(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return a * b;
}

FunctionExpr make_div(const FunctionExpr& a, const FunctionExpr& b) {
  if (a.is_constant() && b.is_constant() && b.value() != Complex(0.0)) return cst(a.value() / b.value());
  if (is_const(a, 0.0)) return cst(0.0);
  if (is_const(b, 1.0)) return a;
  return a / b;
}

FunctionExpr make_pow(const FunctionExpr& a, const FunctionExpr& b) {
  if (is_const(b, 0.0)) return cst(1.0);
  if (is_const(b, 1.0)) return a;
  if (a.is_constant() && b.is_constant() && a.value() != Complex(0.0))
    return cst(principal_power(a.value(), b.value()));
  return pow(a, b);
}

FunctionExpr make_exp(const FunctionExpr& a) {
  if (a.is_constant()) return cst(std::exp(a.value()));
  return exp(a);
}

FunctionExpr make_log(const FunctionExpr& a) {
  if (a.is_constant() && a.value() != Complex(0.0)) return cst(principal_log(a.value()));
  return log(a);
}

}  // namespace

FunctionExpr differentiate(const FunctionExpr& e) {
  switch (e.kind()) {
    case NodeKind::Variable: return cst(1.0);
    case NodeKind::Constant: return cst(0.0);
    case NodeKind::Negate: return make_neg(differentiate(e.child(0)));
    case NodeKind::Add: return make_add(differentiate(e.child(0)), differentiate(e.child(1)));
    case NodeKind::Subtract: return make_sub(differentiate(e.child(0)), differentiate(e.child(1)));
    case NodeKind::Multiply: {
      const auto& a = e.child(0);
      const auto& b = e.child(1);
      return make_add(make_mul(differentiate(a), b), make_mul(a, differentiate(b)));
    }
    case NodeKind::Divide: {
      const auto& a = e.child(0);
      const auto& b = e.child(1);
      auto num = make_sub(make_mul(differentiate(a), b), make_mul(a, differentiate(b)));
      return make_div(num, make_pow(b, cst(2.0)));
    }
    case NodeKind::Exp: return make_mul(make_exp(e.child(0)), differentiate(e.child(0)));
    case NodeKind::Log: return make_div(differentiate(e.child(0)), e.child(0));
    case NodeKind::Power: {
      const auto& a = e.child(0);
      const auto& b = e.child(1);
      auto da = differentiate(a);
      if (!b.depends_on_z()) {
        // d(a^b) = b a^(b-1) a'; exp((b-1) Log a) = a^b / a on the principal sheet.
        return make_mul(make_mul(b, make_pow(a, make_sub(b, cst(1.0)))), da);
      }
      auto db = differentiate(b);
      auto inner = make_add(make_mul(db, make_log(a)), make_div(make_mul(b, da), a));
      return make_mul(make_pow(a, b), inner);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown node kind");
}

Complex log_derivative_at(const FunctionExpr& expr, Complex z) {
  if (z != Complex(0.0)) {
    Complex value = eval(expr, z);
    if (value == Complex(0.0)) throw Error(ErrorKind::DivisionByZero, "log-derivative of a vanishing function", z);
    return z * eval(differentiate(expr), z) / value;
  }
  // z f'/f at a zero of order n tends to n.
  FunctionExpr d = expr;
  for (int order = 0; order <= 8; ++order) {
    if (eval(d, 0.0) != Complex(0.0)) return static_cast<double>(order);
    d = differentiate(d);
  }
  throw Error(ErrorKind::DivisionByZero, "function vanishes to order > 8 at the origin", Complex(0.0));
}

// ---------------------------------------------------------------------------

CompiledExpr::CompiledExpr(const FunctionExpr& expr) : source_(expr) {
  std::size_t depth = 0;
  auto emit = [&](auto&& self, const FunctionExpr& e) -> void {
    for (const auto& c : e.children()) self(self, c);
    program_.push_back(Instr{e.kind(), e.value(), e});
    if (arity(e.kind()) == 0) {
      ++depth;
      max_depth_ = std::max(max_depth_, depth);
    } else {
      depth -= static_cast<std::size_t>(arity(e.kind()) - 1);
    }
  };
  emit(emit, expr);
}

Complex CompiledExpr::operator()(Complex z) const {
  constexpr std::size_t kInline = 64;
  std::array<Complex, kInline> inline_stack;
  std::vector<Complex> heap_stack;
  Complex* stack = inline_stack.data();
  if (max_depth_ > kInline) {
    heap_stack.resize(max_depth_);
    stack = heap_stack.data();
  }
  std::size_t top = 0;
  for (const auto& in : program_) {
    switch (in.kind) {
      case NodeKind::Variable: stack[top++] = z; break;
      case NodeKind::Constant: stack[top++] = in.value; break;
      case NodeKind::Negate:
      case NodeKind::Exp:
      case NodeKind::Log: stack[top - 1] = apply_unary(in.kind, stack[top - 1], in.sub, z); break;
      default:
        stack[top - 2] = apply_binary(in.kind, stack[top - 2], stack[top - 1], in.sub, z);
        --top;
        break;
    }
  }
  return stack[0];
}

}  // namespace gft

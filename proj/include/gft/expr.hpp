#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gft/types.hpp"

namespace gft {

enum class NodeKind { Variable, Constant, Negate, Add, Subtract, Multiply, Divide, Power, Exp, Log };

int arity(NodeKind kind);

/// Immutable expression tree for an analytic function of z. Copies share
/// structure; nothing is mutated after construction, so concurrent evaluation
/// of one tree is safe.
class FunctionExpr {
 public:
  struct Node;

  static FunctionExpr variable();
  static FunctionExpr constant(Complex value);
  static FunctionExpr unary(NodeKind kind, FunctionExpr operand);
  static FunctionExpr binary(NodeKind kind, FunctionExpr lhs, FunctionExpr rhs);

  NodeKind kind() const;
  /// Constant payload; zero for every other node kind.
  Complex value() const;
  std::span<const FunctionExpr> children() const;
  const FunctionExpr& child(std::size_t i) const { return children()[i]; }

  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool depends_on_z() const;
  std::size_t size() const;
  const Node* node() const { return node_.get(); }

  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b);

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FunctionExpr::Node {
  NodeKind kind;
  Complex value;
  std::vector<FunctionExpr> children;
};

// Shorthand constructors (no folding; the tree is exactly what is written).
FunctionExpr operator-(FunctionExpr a);
FunctionExpr operator+(FunctionExpr a, FunctionExpr b);
FunctionExpr operator-(FunctionExpr a, FunctionExpr b);
FunctionExpr operator*(FunctionExpr a, FunctionExpr b);
FunctionExpr operator/(FunctionExpr a, FunctionExpr b);
FunctionExpr pow(FunctionExpr base, FunctionExpr exponent);
FunctionExpr exp(FunctionExpr a);
FunctionExpr log(FunctionExpr a);

/// Principal logarithm with Im in (-pi, pi]; a negative real axis input with a
/// signed zero imaginary part still maps to +pi.
Complex principal_log(Complex w);

/// exp(exponent * Log w). w = 0 yields 0 when Re(exponent) > 0 and throws
/// BranchPointHit otherwise.
Complex principal_power(Complex w, Complex exponent);

/// Tree-walking evaluation under principal branches.
Complex eval(const FunctionExpr& expr, Complex z);

/// Exact symbolic d/dz with constant folding.
FunctionExpr differentiate(const FunctionExpr& expr);

/// z f'(z) / f(z). At z = 0 returns the removable-singularity limit, which is
/// the order of the zero of f at the origin (1 for normalized f, 0 when
/// f(0) != 0).
Complex log_derivative_at(const FunctionExpr& expr, Complex z);

/// Flattened postfix form of a FunctionExpr for repeated evaluation.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const FunctionExpr& expr);

  Complex operator()(Complex z) const;
  const FunctionExpr& source() const { return source_; }
  bool is_constant() const { return !source_.depends_on_z(); }

 private:
  struct Instr {
    NodeKind kind;
    Complex value;
    FunctionExpr sub;
  };
  FunctionExpr source_ = FunctionExpr::variable();
  std::vector<Instr> program_;
  std::size_t max_depth_ = 0;
};

}  // namespace gft

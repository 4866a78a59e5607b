#pragma once

// Random FunctionExpr trees limited to shapes the parser can produce
// (non-negative real or imaginary literals), for round-trip and
// derivative property tests.

#include <random>

#include "gft/expr.hpp"

namespace gft::testing {

inline FunctionExpr random_leaf(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> hundredths(0, 200);
  int k = pick(rng);
  if (k < 5) return FunctionExpr::variable();
  double v = hundredths(rng) / 100.0;
  if (k < 8) return FunctionExpr::constant(v);
  return FunctionExpr::constant({0.0, v});
}

inline FunctionExpr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 11);
  if (depth <= 0) return random_leaf(rng);
  switch (pick(rng)) {
    case 0:
    case 1: return random_leaf(rng);
    case 2: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 3: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 4:
    case 5: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) / random_expr(rng, depth - 1);
    case 7: return -random_expr(rng, depth - 1);
    case 8: return exp(random_expr(rng, depth - 1));
    case 9: return log(random_expr(rng, depth - 1));
    case 10: {
      std::uniform_int_distribution<int> small(0, 3);
      return pow(random_expr(rng, depth - 1), FunctionExpr::constant(static_cast<double>(small(rng))));
    }
    default: return pow(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

inline Complex random_disk_point(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = r_max * std::sqrt(u(rng));
  double t = 2.0 * 3.14159265358979323846 * u(rng);
  return std::polar(r, t);
}

}  // namespace gft::testing

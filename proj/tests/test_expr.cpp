#include <cmath>
#include <random>

#include "doctest.h"
#include "gft/dsl.hpp"
#include "gft/expr.hpp"
#include "support/random_expr.hpp"

using namespace gft;

namespace {

Complex central_fd(const FunctionExpr& e, Complex z, double h) {
  return (eval(e, z + h) - eval(e, z - h)) / (2.0 * h);
}

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("eval follows principal branches") {
  CHECK(eval(parse("z"), {0.3, 0.4}) == Complex(0.3, 0.4));
  CHECK(near(eval(parse("z^2 + z"), {1.0, 1.0}), {1.0, 3.0}, 1e-15));
  CHECK(near(eval(parse("log(-1)"), 0.0), {0.0, kPi}, 1e-15));
  CHECK(near(eval(parse("exp(i*z)"), kPi), -1.0, 1e-15));
}

TEST_CASE("eval reports poles and branch points") {
  try {
    eval(parse("1/z"), 0.0);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
    REQUIRE(e.where().has_value());
    CHECK(*e.where() == Complex(0.0));
  }
  CHECK_THROWS_AS(eval(parse("log(z)"), 0.0), Error);
  try {
    eval(parse("z^(-0.5)"), 0.0);
    FAIL("expected BranchPointHit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BranchPointHit);
  }
  CHECK(eval(parse("z^0.5"), 0.0) == Complex(0.0));
}

TEST_CASE("overflow is reported, not propagated") {
  try {
    eval(parse("exp(1000*z)"), 1.0);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
}

TEST_CASE("differentiate") {
  CHECK(near(eval(differentiate(parse("z^2")), 3.0), 6.0, 1e-14));
  CHECK(near(eval(differentiate(parse("exp(z)")), 0.0), 1.0, 1e-15));
  CHECK(near(eval(differentiate(parse("z/(1-z)")), 0.5), 4.0, 1e-14));
  // exponent depending on z: d/dz z^z = z^z (log z + 1)
  Complex z{0.4, 0.2};
  Complex expected = std::exp(z * std::log(z)) * (std::log(z) + 1.0);
  CHECK(near(eval(differentiate(parse("z^z")), z), expected, 1e-14));
  // constants fold away entirely
  CHECK(differentiate(parse("3 + 4i")).is_constant());
  CHECK(differentiate(parse("z")).value() == Complex(1.0));
}

TEST_CASE("principal_power") {
  CHECK(principal_power(1.0, {2.7, -1.3}) == Complex(1.0));
  CHECK(near(principal_power(4.0, 0.5), 2.0, 1e-15));
  CHECK(near(principal_power(-1.0, 0.5), {0.0, 1.0}, 1e-15));
  // signed zero on the negative axis still lands on the upper sheet
  CHECK(near(principal_power(Complex(-1.0, -0.0), 0.5), {0.0, 1.0}, 1e-15));
  CHECK(principal_power(0.0, 0.3) == Complex(0.0));
  CHECK_THROWS_AS(principal_power(0.0, -0.3), Error);
  CHECK_THROWS_AS(principal_power(0.0, 0.0), Error);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    Complex w{u(rng), u(rng)};
    if (w == Complex(0.0)) continue;
    CHECK(principal_power(w, 1.0) == w);
    CHECK(principal_power(w, 0.0) == Complex(1.0));
    double r = std::abs(u(rng)) + 1e-3;
    double x = u(rng);
    Complex p = principal_power(r, x);
    CHECK(p.imag() == doctest::Approx(0.0));
    CHECK(p.real() > 0.0);
    // Im Log in (-pi, pi]
    double im = principal_log(w).imag();
    CHECK(im > -kPi);
    CHECK(im <= kPi);
  }
}

TEST_CASE("log_derivative_at") {
  CHECK(near(log_derivative_at(parse("z"), {0.3, -0.2}), 1.0, 1e-15));
  CHECK(log_derivative_at(parse("z"), 0.0) == Complex(1.0));
  // z g'/g = 1/(1-z) for g = z/(1-z); oracle: finite difference of log g
  auto g = parse("z/(1-z)");
  double h = 1e-6;
  Complex z = 0.5;
  Complex fd = z * (std::log(eval(g, z + h)) - std::log(eval(g, z - h))) / (2.0 * h);
  CHECK(near(fd, 2.0, 1e-8));
  CHECK(near(log_derivative_at(g, 0.5), 2.0, 1e-14));
  CHECK(log_derivative_at(parse("z^2"), 0.0) == Complex(2.0));
  CHECK(log_derivative_at(parse("1+z"), 0.0) == Complex(0.0));
  CHECK_THROWS_AS(log_derivative_at(parse("z-0.5"), 0.5), Error);

  for (const char* src : {"z", "z/(1-z)", "z + 0.1*z^2", "z*exp(0.3*z)", "koebe", "moebius(0.5i)"}) {
    auto e = parse(src);
    for (int k = 0; k < 8; ++k) {
      Complex near0 = std::polar(1e-6, k * kPi / 4);
      CHECK(std::abs(log_derivative_at(e, near0) - 1.0) <= 1e-4);
    }
  }
}

TEST_CASE("symbolic derivative agrees with central differences on random trees") {
  std::mt19937_64 rng(20241019);
  int accepted = 0;
  int attempts = 0;
  while (accepted < 1000 && attempts < 50000) {
    ++attempts;
    auto e = testing::random_expr(rng, 4);
    Complex z = testing::random_disk_point(rng, 0.9);
    Complex value, d, fd, fd_half;
    try {
      value = eval(e, z);
      d = eval(differentiate(e), z);
      fd = central_fd(e, z, 1e-6);
      fd_half = central_fd(e, z, 5e-7);
    } catch (const Error&) {
      continue;
    }
    // Skip samples straddling a branch cut or dominated by rounding: there the
    // difference quotient itself is not a derivative estimate.
    if (std::abs(value) > 1e3 || std::abs(d) > 1e4) continue;
    if (std::abs(fd - fd_half) > 1e-6 * (1.0 + std::abs(fd))) continue;
    ++accepted;
    double rel = std::abs(d - fd) / (1.0 + std::abs(d));
    if (rel > 1e-6) FAIL_CHECK(print(e) << " at " << z << ": " << d << " vs " << fd);
  }
  CHECK(accepted == 1000);
}

TEST_CASE("compiled and tree evaluation agree") {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    auto e = testing::random_expr(rng, 5);
    CompiledExpr c(e);
    Complex z = testing::random_disk_point(rng, 0.95);
    bool tree_threw = false, compiled_threw = false;
    Complex a, b;
    try {
      a = eval(e, z);
    } catch (const Error&) {
      tree_threw = true;
    }
    try {
      b = c(z);
    } catch (const Error&) {
      compiled_threw = true;
    }
    CHECK(tree_threw == compiled_threw);
    if (!tree_threw && !compiled_threw) {
      CHECK(a == b);
      ++compared;
    }
  }
  CHECK(compared > 1000);
}

#include "gft/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>

namespace gft {

ParseError::ParseError(ParseDiagnostic diagnostic)
    : Error(ErrorKind::Parse, "at offset " + std::to_string(diagnostic.position) + ": " + diagnostic.message),
      diagnostic_(std::move(diagnostic)) {}

namespace {

const std::vector<std::string> kAtomStart = {"z", "i", "number", "function name", "("};
const std::vector<std::string> kNames = {"z", "i", "exp", "log", "koebe", "moebius", "polynomial"};

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  Complex number;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, "", {}};
    unsigned char ch = static_cast<unsigned char>(src_[pos_]);
    if (ch > 127)
      throw ParseError({start, "non-ASCII character", {}});
    if (std::isdigit(ch) || (ch == '.' && pos_ + 1 < src_.size() &&
                             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))
      return number(start);
    if (std::isalpha(ch) || ch == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {Tok::Ident, start, std::string(src_.substr(start, pos_ - start)), {}};
    }
    ++pos_;
    switch (ch) {
      case '+': return {Tok::Plus, start, "+", {}};
      case '-': return {Tok::Minus, start, "-", {}};
      case '*': return {Tok::Star, start, "*", {}};
      case '/': return {Tok::Slash, start, "/", {}};
      case '^': return {Tok::Caret, start, "^", {}};
      case '(': return {Tok::LParen, start, "(", {}};
      case ')': return {Tok::RParen, start, ")", {}};
      case ',': return {Tok::Comma, start, ",", {}};
      default: break;
    }
    throw ParseError({start, std::string("unexpected character '") + static_cast<char>(ch) + "'", kAtomStart});
  }

 private:
  bool digit_at(std::size_t p) const {
    return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
  }

  Token number(std::size_t start) {
    while (digit_at(pos_)) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (digit_at(pos_)) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (digit_at(p)) {
        pos_ = p;
        while (digit_at(pos_)) ++pos_;
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    double value = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(value)) throw ParseError({start, "numeric literal out of range", {}});
    bool imaginary = false;
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        !(pos_ + 1 < src_.size() &&
          (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'))) {
      imaginary = true;
      ++pos_;
    }
    return {Tok::Number, start, text, imaginary ? Complex(0.0, value) : Complex(value, 0.0)};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  FunctionExpr parse_all() {
    FunctionExpr e = expr();
    if (tok_.kind != Tok::End) fail("unexpected '" + tok_.text + "'", {"operator", "end of input"});
    return e;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected) {
    throw ParseError({tok_.pos, std::move(message), std::move(expected)});
  }

  void expect(Tok kind, const char* text) {
    if (tok_.kind != kind)
      fail(std::string("expected '") + text + "'", {text});
    advance();
  }

  FunctionExpr expr() {
    FunctionExpr lhs = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      Tok op = tok_.kind;
      advance();
      FunctionExpr rhs = term();
      lhs = op == Tok::Plus ? lhs + rhs : lhs - rhs;
    }
    return lhs;
  }

  FunctionExpr term() {
    FunctionExpr lhs = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      Tok op = tok_.kind;
      advance();
      FunctionExpr rhs = unary();
      lhs = op == Tok::Star ? lhs * rhs : lhs / rhs;
    }
    return lhs;
  }

  FunctionExpr unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    return power();
  }

  FunctionExpr power() {
    FunctionExpr base = atom();
    if (tok_.kind == Tok::Caret) {
      advance();
      return pow(base, unary());
    }
    return base;
  }

  FunctionExpr atom() {
    switch (tok_.kind) {
      case Tok::Number: {
        Complex v = tok_.number;
        advance();
        return FunctionExpr::constant(v);
      }
      case Tok::LParen: {
        advance();
        FunctionExpr e = expr();
        expect(Tok::RParen, ")");
        return e;
      }
      case Tok::Ident: return named();
      default: break;
    }
    fail(tok_.kind == Tok::End ? "expected atom, found end of input" : "expected atom, found '" + tok_.text + "'",
         kAtomStart);
  }

  std::vector<FunctionExpr> arguments() {
    std::vector<FunctionExpr> args;
    expect(Tok::LParen, "(");
    if (tok_.kind == Tok::RParen) {
      advance();
      return args;
    }
    args.push_back(expr());
    while (tok_.kind == Tok::Comma) {
      advance();
      args.push_back(expr());
    }
    expect(Tok::RParen, ")");
    return args;
  }

  FunctionExpr named() {
    const std::string name = tok_.text;
    const std::size_t pos = tok_.pos;
    advance();
    if (name == "z") return FunctionExpr::variable();
    if (name == "i") return FunctionExpr::constant({0.0, 1.0});

    auto arity_error = [&](const std::string& what) -> FunctionExpr {
      throw ParseError({pos, name + " takes " + what, {}});
    };
    auto one = FunctionExpr::constant(1.0);
    auto z = FunctionExpr::variable();

    if (name == "koebe") {
      if (tok_.kind == Tok::LParen && !arguments().empty()) return arity_error("no arguments");
      return z / pow(one - z, FunctionExpr::constant(2.0));
    }
    if (name == "exp" || name == "log" || name == "moebius" || name == "polynomial") {
      if (tok_.kind != Tok::LParen) fail("expected '(' after " + name, {"("});
      auto args = arguments();
      if (name == "polynomial") {
        if (args.empty()) return arity_error("at least one coefficient");
        FunctionExpr sum = args[0] * z;
        for (std::size_t k = 1; k < args.size(); ++k)
          sum = sum + args[k] * pow(z, FunctionExpr::constant(static_cast<double>(k + 1)));
        return sum;
      }
      if (args.size() != 1) return arity_error("exactly one argument");
      if (name == "exp") return exp(args[0]);
      if (name == "log") return log(args[0]);
      return z / (one - args[0] * z);
    }
    throw ParseError({pos, "unknown name '" + name + "'", kNames});
  }

  Lexer lexer_;
  Token tok_{Tok::End, 0, "", {}};
};

}  // namespace

FunctionExpr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string print_constant(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  auto real_part = [](double x) { return std::signbit(x) ? "(-" + format_double(-x) + ")" : format_double(x); };
  auto imag_part = [](double y) {
    return std::signbit(y) ? "(-" + format_double(-y) + "i)" : format_double(y) + "i";
  };
  if (im == 0.0) return real_part(re);
  if (re == 0.0) return imag_part(im);
  return "(" + real_part(re) + " + " + imag_part(im) + ")";
}

const char* op_text(NodeKind kind) {
  switch (kind) {
    case NodeKind::Add: return " + ";
    case NodeKind::Subtract: return " - ";
    case NodeKind::Multiply: return " * ";
    case NodeKind::Divide: return " / ";
    case NodeKind::Power: return " ^ ";
    default: return "?";
  }
}

}  // namespace

std::string print(const FunctionExpr& e) {
  switch (e.kind()) {
    case NodeKind::Variable: return "z";
    case NodeKind::Constant: return print_constant(e.value());
    case NodeKind::Negate: return "(-" + print(e.child(0)) + ")";
    case NodeKind::Exp: return "exp(" + print(e.child(0)) + ")";
    case NodeKind::Log: return "log(" + print(e.child(0)) + ")";
    default: return "(" + print(e.child(0)) + op_text(e.kind()) + print(e.child(1)) + ")";
  }
}

NormalizationCheck validate_normalized(const FunctionExpr& expr) {
  NormalizationCheck out;
  out.value_at_zero = eval(expr, 0.0);
  out.derivative_at_zero = eval(differentiate(expr), 0.0);
  if (std::abs(out.value_at_zero) > 1e-12)
    out.diagnostics.push_back("f(0) = " + format_double(out.value_at_zero.real()) + " + " +
                              format_double(out.value_at_zero.imag()) + "i, expected 0");
  if (std::abs(out.derivative_at_zero - 1.0) > 1e-12)
    out.diagnostics.push_back("f'(0) = " + format_double(out.derivative_at_zero.real()) + " + " +
                              format_double(out.derivative_at_zero.imag()) + "i, expected 1");
  out.normalized = out.diagnostics.empty();
  return out;
}

}  // namespace gft

#include "gft/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace gft {

void QuadratureConfig::validate() const {
  if (nodes_per_panel < 4) throw Error(ErrorKind::InvalidArgument, "nodes_per_panel must be >= 4");
  if (!(abs_tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "abs_tolerance must be positive");
  if (max_subdivision_depth < 1) throw Error(ErrorKind::InvalidArgument, "max_subdivision_depth must be >= 1");
}

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Nodes of the n- and 2n-point rules merged in increasing order so the
/// integrand can be continued node to node.
struct MergedRule {
  std::vector<double> x;
  std::vector<double> w_low;
  std::vector<double> w_high;
};

const MergedRule& merged_rule(int n) {
  static std::mutex mutex;
  static std::map<int, MergedRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const GaussRule& low = gauss_legendre(n);
  const GaussRule& high = gauss_legendre(2 * n);
  std::vector<std::tuple<double, double, double>> all;
  for (int i = 0; i < n; ++i) all.emplace_back(low.nodes[i], low.weights[i], 0.0);
  for (int i = 0; i < 2 * n; ++i) all.emplace_back(high.nodes[i], 0.0, high.weights[i]);
  std::sort(all.begin(), all.end());
  MergedRule m;
  for (auto& [x, wl, wh] : all) {
    m.x.push_back(x);
    m.w_low.push_back(wl);
    m.w_high.push_back(wh);
  }
  return cache.emplace(n, std::move(m)).first->second;
}

bool real_integer(Complex w, double& n) {
  if (w.imag() != 0.0 || w.real() != std::floor(w.real())) return false;
  n = w.real();
  return true;
}

/// Exponent q of the substitution tau = v^q. Chosen so that the weight
/// v^(q alpha - 1) is a polynomial when possible and at least C^1 otherwise.
int substitution_power(Complex alpha) {
  double n;
  if (real_integer(alpha, n) && n >= 1.0) return 1;
  int q0 = std::max(1, static_cast<int>(std::ceil(2.0 / alpha.real())));
  if (alpha.imag() == 0.0) {
    for (int q = q0; q <= std::min(64, q0 + 8); ++q)
      if (real_integer(alpha * static_cast<double>(q), n)) return q;
  }
  return std::min(64, std::max(1, static_cast<int>(std::ceil(4.0 / alpha.real()))));
}

class RadialIntegrator {
 public:
  RadialIntegrator(const RadialKernel& kernel, Complex alpha, Complex z, const QuadratureConfig& config)
      : kernel_(kernel), alpha_(alpha), z_(z), config_(config), rule_(merged_rule(config.nodes_per_panel)) {
    q_ = substitution_power(alpha);
    weight_exponent_ = alpha * static_cast<double>(q_) - 1.0;
    double k;
    integer_weight_ = real_integer(weight_exponent_, k) && k >= 0.0;
    prefactor_ = alpha * static_cast<double>(q_);
  }

  RadialIntegral run(int min_panels) {
    Complex ref_log = 0.0;
    for (int p = 0; p < min_panels; ++p) {
      double a = static_cast<double>(p) / min_panels;
      double b = static_cast<double>(p + 1) / min_panels;
      ref_log = panel(a, b, 0, ref_log);
    }
    double floor = std::max(config_.abs_tolerance, rounding_floor_);
    if (tolerance_failed_ && total_error_ > floor) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "estimated error %.3e exceeds tolerance %.3e", total_error_, floor);
      throw Error(ErrorKind::ToleranceNotMet, msg, z_);
    }
    RadialIntegral out;
    out.breakpoints = std::move(breakpoints_);
    out.mean = out.breakpoints.back().mean;
    out.estimated_error = total_error_;
    out.branch_ok = branch_ok_;
    return out;
  }

 private:
  Complex continued_log(Complex u, Complex ref, bool& jumped) const {
    if (!kernel_.ratio) return 0.0;
    Complex r = kernel_.ratio(u);
    if (r == Complex(0.0)) throw Error(ErrorKind::IntegrandSingular, "integrand ratio vanishes at a node", u);
    if (!is_finite(r)) throw Error(ErrorKind::NonFinite, "integrand ratio is not finite", u);
    double arg = unwrap_arg(r, ref.imag());
    if (std::abs(arg - ref.imag()) >= kPi / 2) jumped = true;
    return {std::log(std::abs(r)), arg};
  }

  Complex weight(double v) const {
    if (integer_weight_) return std::pow(v, weight_exponent_.real());
    return std::exp(weight_exponent_ * std::log(v));
  }

  // Integrates [a, b] in v, appending breakpoints; returns the continued log
  // of the ratio at b.
  Complex panel(double a, double b, int depth, Complex ref_log) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Complex low = 0.0, high = 0.0;
    double magnitude = 0.0;
    bool jumped = false;
    Complex log_r = ref_log;
    for (std::size_t i = 0; i < rule_.x.size(); ++i) {
      double v = mid + half * rule_.x[i];
      Complex u = std::pow(v, q_) * z_;
      log_r = continued_log(u, log_r, jumped);
      Complex psi = kernel_.ratio ? std::exp(kernel_.exponent * log_r) : Complex(1.0);
      if (kernel_.factor) psi *= kernel_.factor(u);
      Complex val = prefactor_ * weight(v) * psi;
      if (!is_finite(val)) throw Error(ErrorKind::NonFinite, "integrand is not finite", u);
      low += rule_.w_low[i] * val;
      high += rule_.w_high[i] * val;
      magnitude += rule_.w_high[i] * std::abs(val);
    }
    low *= half;
    high *= half;
    magnitude *= half;
    const double error = std::abs(high - low);
    const double tol = std::max(config_.abs_tolerance * (b - a),
                                64.0 * std::numeric_limits<double>::epsilon() * magnitude);
    if ((jumped || error > tol) && depth < config_.max_subdivision_depth) {
      Complex mid_log = panel(a, mid, depth + 1, ref_log);
      return panel(mid, b, depth + 1, mid_log);
    }
    if (jumped) branch_ok_ = false;
    if (error > tol) tolerance_failed_ = true;
    rounding_floor_ += 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    total_error_ += error;
    cumulative_ += high;

    bool end_jump = false;
    double rho = std::pow(b, q_);
    Complex end_log = continued_log(rho * z_, log_r, end_jump);
    if (end_jump) branch_ok_ = false;
    Complex scale = std::exp(alpha_ * (static_cast<double>(q_) * std::log(b)));
    Complex mean = (scale == Complex(0.0)) ? Complex(1.0) : cumulative_ / scale;
    breakpoints_.push_back({rho, mean, end_log});
    return end_log;
  }

  const RadialKernel& kernel_;
  Complex alpha_;
  Complex z_;
  const QuadratureConfig& config_;
  const MergedRule& rule_;
  int q_ = 1;
  Complex weight_exponent_;
  bool integer_weight_ = false;
  Complex prefactor_;

  Complex cumulative_ = 0.0;
  double total_error_ = 0.0;
  double rounding_floor_ = 0.0;
  bool branch_ok_ = true;
  bool tolerance_failed_ = false;
  std::vector<RadialBreakpoint> breakpoints_;
};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

RadialIntegral integrate_radial(const RadialKernel& kernel, Complex alpha, Complex z,
                                const QuadratureConfig& config, int min_panels) {
  config.validate();
  if (!(alpha.real() > 0.0))
    throw Error(ErrorKind::InvalidArgument, "radial integration needs Re(alpha) > 0");
  return RadialIntegrator(kernel, alpha, z, config).run(std::max(1, min_panels));
}

}  // namespace gft

#pragma once

#include <functional>
#include <vector>

#include "gft/types.hpp"

namespace gft {

struct QuadratureConfig {
  int nodes_per_panel = 10;
  double abs_tolerance = 1e-12;
  int max_subdivision_depth = 30;

  void validate() const;
};

/// Gauss-Legendre rule on [-1, 1]. Rules are computed once per order and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// Integrand of the form
///     psi(u) = (ratio(u))^exponent * factor(u)
/// along the segment u = tau * z, tau in [0, 1], where ratio(0) = 1 and the
/// power is continued along the segment from its value 1 at the origin.
/// An empty `ratio` or `factor` stands for the constant 1.
struct RadialKernel {
  std::function<Complex(Complex)> ratio;
  Complex exponent = 0.0;
  std::function<Complex(Complex)> factor;
};

/// State of the radial integration at the end of an accepted panel.
struct RadialBreakpoint {
  double rho;          ///< fraction of the segment, u = rho * z
  Complex mean;        ///< alpha * rho^-alpha * int_0^rho tau^(alpha-1) psi(tau z) dtau
  Complex log_ratio;   ///< continued log of ratio(rho * z)
};

struct RadialIntegral {
  Complex mean;             ///< breakpoints.back().mean, the rho = 1 value
  double estimated_error;   ///< absolute error estimate of `mean`
  bool branch_ok;           ///< every node-to-node step of arg(ratio) stayed below pi/2
  std::vector<RadialBreakpoint> breakpoints;
};

/// Computes alpha * int_0^1 tau^(alpha-1) psi(tau z) dtau (equal to 1 when psi = 1)
/// by adaptive Gauss-Legendre panels with node-doubling error estimates.
/// Requires Re(alpha) > 0. `min_panels` fixes the initial uniform partition.
RadialIntegral integrate_radial(const RadialKernel& kernel, Complex alpha, Complex z,
                                const QuadratureConfig& config, int min_panels = 1);

}  // namespace gft

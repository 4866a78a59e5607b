#pragma once

#include <functional>
#include <vector>

#include "gft/loewner.hpp"

namespace gft {

/// A map of the plane, not necessarily analytic.
using PlaneField = std::function<Complex(Complex)>;

/// L(z, 0) for |z| < 1 and L(z/|z|, log|z|) for |z| >= 1.
Complex becker_extension(const Chain& chain, Complex z);

/// The extension as a field. Holds a copy of the chain.
struct ExtensionField {
  Chain chain;

  Complex operator()(Complex z) const { return becker_extension(chain, z); }
};

struct BeltramiSample {
  Complex z;
  Complex F;
  Complex F_z;
  Complex F_zbar;
  Complex mu;
  double abs_mu = 0.0;
};

/// Central differences with spacing step*|z|, combined into Wirtinger
/// derivatives. With `richardson` the step-halved estimate is extrapolated.
/// Requires |z| > 1 + 2 step; DegenerateJacobian when |F_z| <= 1e-12.
BeltramiSample beltrami_estimate(const PlaneField& F, Complex z, double step = 1e-5, bool richardson = false);

/// Exterior sampling: radii geometric from r_inner to r_outer, angles 2 pi j / n_angles.
struct AnnulusGrid {
  int n_radii = 64;
  int n_angles = 256;
  double r_inner = 1.0 + 1e-3;
  double r_outer = 10.0;

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(n_radii) * static_cast<std::size_t>(n_angles); }
  double radius(int i) const;
  double angle(int j) const { return 2.0 * kPi * j / n_angles; }
  Complex point(std::size_t index) const;
};

struct DilatationReport {
  double max_abs_mu = 0.0;
  BeltramiSample witness;
  /// Max over angles at each radius, innermost first.
  std::vector<double> radial_profile;
  AnnulusGrid grid;
  double step = 0.0;
};

/// beltrami_estimate at every annulus node, in index order.
std::vector<BeltramiSample> sample_annulus(const PlaneField& F, const AnnulusGrid& grid, double step = 1e-5);

/// Reduction of sample_annulus output. Ties keep the earliest node
/// (radius-major order).
DilatationReport summarize_dilatation(const std::vector<BeltramiSample>& samples, const AnnulusGrid& grid,
                                      double step);

/// Grid maximum of |mu| over the annulus.
DilatationReport max_dilatation(const PlaneField& F, const AnnulusGrid& grid = {}, double step = 1e-5);

struct SeamReport {
  bool holds = false;
  double max_mismatch = 0.0;
  double witness_angle = 0.0;
};

/// Compares L(z, 0) at |z| = inner_radius with the exterior formula at |z| = 1
/// over n_angles boundary angles; holds when the mismatch is <= tol.
SeamReport seam_continuity(const Chain& chain, int n_angles = 360, double inner_radius = 1.0 - 1e-7,
                           double tol = 1e-6);

}  // namespace gft

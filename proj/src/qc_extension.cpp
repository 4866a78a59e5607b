#include "gft/qc_extension.hpp"

#include <cmath>
#include <limits>

#include "gft/parallel.hpp"

namespace gft {

Complex becker_extension(const Chain& chain, Complex z) {
  if (!is_finite(z)) throw Error(ErrorKind::InvalidArgument, "extension point is not finite", z);
  const double r = std::abs(z);
  if (r < 1.0) return chain(z, 0.0);
  return chain(z / r, std::log(r));
}

namespace {

struct Partials {
  Complex F, Fx, Fy;
};

Partials central(const PlaneField& F, Complex z, double h) {
  const Complex ih{0.0, h};
  return {F(z), (F(z + h) - F(z - h)) / (2.0 * h), (F(z + ih) - F(z - ih)) / (2.0 * h)};
}

}  // namespace

BeltramiSample beltrami_estimate(const PlaneField& F, Complex z, double step, bool richardson) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  if (!(std::abs(z) > 1.0 + 2.0 * step)) throw Error(ErrorKind::Precondition, "sample must satisfy |z| > 1 + 2 step", z);
  const double h = step * std::abs(z);
  Partials d = central(F, z, h);
  if (richardson) {
    Partials half = central(F, z, 0.5 * h);
    d.Fx = (4.0 * half.Fx - d.Fx) / 3.0;
    d.Fy = (4.0 * half.Fy - d.Fy) / 3.0;
  }
  BeltramiSample s;
  s.z = z;
  s.F = d.F;
  s.F_z = 0.5 * (d.Fx - Complex(0.0, 1.0) * d.Fy);
  s.F_zbar = 0.5 * (d.Fx + Complex(0.0, 1.0) * d.Fy);
  if (!is_finite(s.F_z) || !is_finite(s.F_zbar)) throw Error(ErrorKind::NonFinite, "derivative estimate is not finite", z);
  if (std::abs(s.F_z) <= 1e-12) throw Error(ErrorKind::DegenerateJacobian, "|F_z| <= 1e-12", z);
  s.mu = s.F_zbar / s.F_z;
  s.abs_mu = std::abs(s.mu);
  return s;
}

void AnnulusGrid::validate() const {
  if (n_radii < 1 || n_angles < 1) throw Error(ErrorKind::InvalidArgument, "annulus grid needs at least one node");
  if (!(r_inner > 1.0) || !(r_outer >= r_inner) || !std::isfinite(r_outer))
    throw Error(ErrorKind::InvalidArgument, "annulus radii must satisfy 1 < r_inner <= r_outer");
}

double AnnulusGrid::radius(int i) const {
  if (n_radii == 1) return r_inner;
  return r_inner * std::pow(r_outer / r_inner, static_cast<double>(i) / (n_radii - 1));
}

Complex AnnulusGrid::point(std::size_t index) const {
  const int i = static_cast<int>(index / static_cast<std::size_t>(n_angles));
  const int j = static_cast<int>(index % static_cast<std::size_t>(n_angles));
  return std::polar(radius(i), angle(j));
}

std::vector<BeltramiSample> sample_annulus(const PlaneField& F, const AnnulusGrid& grid, double step) {
  grid.validate();
  std::vector<BeltramiSample> samples(grid.size());
  parallel_for(samples.size(), [&](std::size_t k) { samples[k] = beltrami_estimate(F, grid.point(k), step); });
  return samples;
}

DilatationReport summarize_dilatation(const std::vector<BeltramiSample>& samples, const AnnulusGrid& grid,
                                      double step) {
  if (samples.size() != grid.size() || samples.empty())
    throw Error(ErrorKind::InvalidArgument, "sample count does not match the annulus grid");
  DilatationReport out;
  out.grid = grid;
  out.step = step;
  out.radial_profile.assign(grid.n_radii, 0.0);
  std::size_t best = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double v = samples[k].abs_mu;
    if (std::isnan(v)) throw Error(ErrorKind::NonFinite, "|mu| is NaN", samples[k].z);
    double& ring = out.radial_profile[k / grid.n_angles];
    ring = std::max(ring, v);
    if (v > samples[best].abs_mu + 64.0 * std::numeric_limits<double>::epsilon() * samples[best].abs_mu) best = k;
  }
  out.witness = samples[best];
  out.max_abs_mu = samples[best].abs_mu;
  return out;
}

DilatationReport max_dilatation(const PlaneField& F, const AnnulusGrid& grid, double step) {
  return summarize_dilatation(sample_annulus(F, grid, step), grid, step);
}

SeamReport seam_continuity(const Chain& chain, int n_angles, double inner_radius, double tol) {
  if (n_angles < 1) throw Error(ErrorKind::InvalidArgument, "seam check needs at least one angle");
  if (!(inner_radius > 0.0 && inner_radius < 1.0)) throw Error(ErrorKind::InvalidArgument, "inner radius must lie in (0, 1)");
  std::vector<double> gap(n_angles);
  parallel_for(gap.size(), [&](std::size_t j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / n_angles;
    gap[j] = std::abs(becker_extension(chain, std::polar(inner_radius, theta)) -
                      becker_extension(chain, std::polar(1.0, theta)));
  });
  SeamReport out;
  for (int j = 0; j < n_angles; ++j) {
    if (std::isnan(gap[j])) throw Error(ErrorKind::NonFinite, "seam mismatch is NaN");
    if (gap[j] > out.max_mismatch) {
      out.max_mismatch = gap[j];
      out.witness_angle = 2.0 * kPi * j / n_angles;
    }
  }
  out.holds = out.max_mismatch <= tol;
  return out;
}

}  // namespace gft

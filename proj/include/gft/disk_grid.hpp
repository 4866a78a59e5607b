#pragma once

#include <array>
#include <functional>

#include "gft/types.hpp"

namespace gft {

/// Polar sampling of the disk |z| <= r_max. Radii r_i = r_max (i+1)/n_radial,
/// angles 2 pi j / n_angular; node index = i * n_angular + j.
struct DiskGrid {
  int n_radial = 64;
  int n_angular = 128;
  double r_max = 1.0 - 1e-3;
  int refinement_levels = 3;

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(n_radial) * static_cast<std::size_t>(n_angular); }
  double radius(int i) const { return r_max * (i + 1) / n_radial; }
  double angle(int j) const { return 2.0 * kPi * j / n_angular; }
  Complex point(std::size_t index) const;
};

using ScalarField = std::function<double(Complex)>;

struct GridMaximum {
  double value = 0.0;
  Complex witness;
  /// Max over angles at the three largest grid radii, innermost first.
  std::array<double, 3> boundary_trend{};
};

/// Grid maximum of `objective`, then `refinement_levels` rounds of 8x8
/// resampling of the cell around the running argmax (radii clipped to r_max).
/// Ties keep the earliest enumerated node; values within 64 ulp of the
/// running maximum count as ties.
GridMaximum disk_maximize(const ScalarField& objective, const DiskGrid& grid);

/// Evaluates `objective` at every base-grid node (index order).
std::vector<double> sample_grid(const ScalarField& objective, const DiskGrid& grid);

}  // namespace gft

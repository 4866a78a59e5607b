#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gft/disk_grid.hpp"
#include "gft/expr.hpp"

namespace gft {

// Criterion-free univalence evidence. Nothing here proves univalence: a pass
// means no counterexample was found at the stated resolution.

using Evaluable = std::function<Complex(Complex)>;

struct InjectivityReport {
  bool injective_on_grid = true;
  std::optional<std::pair<Complex, Complex>> collision_pair;
  /// min |f(z1) - f(z2)| / |z1 - z2| over the compared pairs
  double min_separation_ratio = INFINITY;
  std::size_t points = 0;
  std::size_t pairs_compared = 0;
  double tol = 0.0;
  bool bucketed = false;
};

/// Samples f on the base nodes of `grid` (refinement is ignored). Up to 1e4
/// points every pair is compared. Above that, images are hashed into cells of
/// side 2 tol r_max, which catches every collision |f(z1) - f(z2)| < tol |z1 - z2|,
/// and the separation ratio is taken over bucket neighbours and grid neighbours.
InjectivityReport injectivity_test(const Evaluable& f, const DiskGrid& grid, double tol = 1e-6);

/// Winding number of f(r e^(i theta)) - w0, i.e. the number of preimages of w0
/// in |z| < r. Retries with r + 1e-4 (up to 5 times) when w0 lies on the image
/// curve; refines any step whose phase change exceeds pi/2.
int preimage_count(const Evaluable& f, Complex w0, double r, int n_nodes = 1024);

/// Preimage counts of `count` targets w0 = f(z0), z0 drawn uniformly (seeded)
/// from |z| < 0.95 r.
std::vector<int> preimage_probe(const Evaluable& f, double r, int count, std::uint64_t seed, int n_nodes = 1024);

struct DerivativeReport {
  double min_abs = INFINITY;
  Complex witness;
  bool flagged = false;  ///< min_abs < 1e-10
};

/// min |f'| over the origin and the base grid nodes.
DerivativeReport derivative_nonvanishing(const FunctionExpr& f, const DiskGrid& grid);

/// Winding number of the closed polygon around w (0 when w is outside).
int polygon_winding(const std::vector<Complex>& polygon, Complex w);

}  // namespace gft

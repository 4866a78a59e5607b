#include "gft/disk_grid.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gft/parallel.hpp"

namespace gft {

void DiskGrid::validate() const {
  if (n_radial < 1 || n_angular < 1) throw Error(ErrorKind::InvalidArgument, "grid needs at least one node");
  if (!(r_max > 0.0) || r_max > 1.0 - 1e-6)
    throw Error(ErrorKind::InvalidArgument, "r_max must lie in (0, 1 - 1e-6]");
  if (refinement_levels < 0) throw Error(ErrorKind::InvalidArgument, "refinement_levels must be >= 0");
}

Complex DiskGrid::point(std::size_t index) const {
  const int i = static_cast<int>(index / static_cast<std::size_t>(n_angular));
  const int j = static_cast<int>(index % static_cast<std::size_t>(n_angular));
  return std::polar(radius(i), angle(j));
}

namespace {

double evaluate(const ScalarField& objective, Complex z) {
  double v;
  try {
    v = objective(z);
  } catch (const Error& e) {
    if (e.where()) throw;
    throw Error(e.kind(), e.what(), z);
  }
  if (std::isnan(v)) throw Error(ErrorKind::NonFinite, "objective is NaN", z);
  return v;
}

std::vector<double> evaluate_all(const ScalarField& objective, const std::vector<Complex>& points) {
  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t k) { values[k] = evaluate(objective, points[k]); });
  return values;
}

// Gains at rounding level count as ties, so the earlier node is kept.
bool improves(double candidate, double incumbent) {
  return candidate > incumbent + 64.0 * std::numeric_limits<double>::epsilon() * std::abs(incumbent);
}

std::size_t first_argmax(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (improves(values[k], values[best])) best = k;
  return best;
}

}  // namespace

std::vector<double> sample_grid(const ScalarField& objective, const DiskGrid& grid) {
  grid.validate();
  std::vector<Complex> points(grid.size());
  for (std::size_t k = 0; k < points.size(); ++k) points[k] = grid.point(k);
  return evaluate_all(objective, points);
}

GridMaximum disk_maximize(const ScalarField& objective, const DiskGrid& grid) {
  std::vector<double> values = sample_grid(objective, grid);
  GridMaximum out;
  for (int t = 0; t < 3; ++t) {
    int i = grid.n_radial - 3 + t;
    if (i < 0) {
      out.boundary_trend[t] = std::nan("");
      continue;
    }
    double m = -INFINITY;
    for (int j = 0; j < grid.n_angular; ++j)
      m = std::max(m, values[static_cast<std::size_t>(i) * grid.n_angular + j]);
    out.boundary_trend[t] = m;
  }

  std::size_t best = first_argmax(values);
  out.value = values[best];
  out.witness = grid.point(best);
  double r = grid.radius(static_cast<int>(best / grid.n_angular));
  double theta = grid.angle(static_cast<int>(best % grid.n_angular));
  double dr = grid.r_max / grid.n_radial;
  double dtheta = 2.0 * kPi / grid.n_angular;

  constexpr int kSub = 8;
  for (int level = 0; level < grid.refinement_levels; ++level) {
    const double lo = std::max(r - dr, 0.0);
    const double hi = std::min(r + dr, grid.r_max);
    std::vector<Complex> points;
    std::vector<std::pair<double, double>> coords;
    for (int a = 0; a < kSub; ++a) {
      double rr = lo + (hi - lo) * (a + 1) / kSub;
      for (int b = 0; b < kSub; ++b) {
        double tt = theta - dtheta + 2.0 * dtheta * b / (kSub - 1);
        points.push_back(std::polar(rr, tt));
        coords.emplace_back(rr, tt);
      }
    }
    std::vector<double> sub = evaluate_all(objective, points);
    std::size_t k = first_argmax(sub);
    if (improves(sub[k], out.value)) {
      out.value = sub[k];
      out.witness = points[k];
      r = coords[k].first;
      theta = coords[k].second;
    }
    dr = (hi - lo) / kSub;
    dtheta = 2.0 * dtheta / (kSub - 1);
  }
  return out;
}

}  // namespace gft

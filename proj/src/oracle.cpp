#include "gft/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "gft/parallel.hpp"

namespace gft {

namespace {

Complex checked(const Evaluable& f, Complex z) {
  Complex w;
  try {
    w = f(z);
  } catch (const Error& e) {
    if (e.where()) throw;
    throw Error(e.kind(), e.what(), z);
  }
  if (!is_finite(w)) throw Error(ErrorKind::NonFinite, "function value is not finite", z);
  return w;
}

struct PairScan {
  const std::vector<Complex>& z;
  const std::vector<Complex>& w;
  double tol;
  InjectivityReport& out;

  double min_sq = INFINITY;

  // Squared distances keep the all-pairs loop free of square roots.
  void compare(std::size_t i, std::size_t j) {
    const double dz = std::norm(z[i] - z[j]);
    if (dz == 0.0) return;
    const double dw = std::norm(w[i] - w[j]);
    ++out.pairs_compared;
    if (dw < min_sq * dz) {
      min_sq = dw / dz;
      out.min_separation_ratio = std::sqrt(min_sq);
    }
    if (dw < tol * tol * dz && !out.collision_pair) {
      out.injective_on_grid = false;
      out.collision_pair = {z[std::min(i, j)], z[std::max(i, j)]};
    }
  }
};

}  // namespace

InjectivityReport injectivity_test(const Evaluable& f, const DiskGrid& grid, double tol) {
  grid.validate();
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "collision tolerance must be positive");
  const std::size_t n = grid.size();
  std::vector<Complex> z(n), w(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = grid.point(i);
  parallel_for(n, [&](std::size_t i) { w[i] = checked(f, z[i]); });

  InjectivityReport out;
  out.points = n;
  out.tol = tol;
  PairScan scan{z, w, tol, out};
  if (n <= 10000) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) scan.compare(i, j);
    return out;
  }

  out.bucketed = true;
  const double cell = 2.0 * tol * grid.r_max;
  auto key_of = [cell](Complex v) {
    return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor(v.real() / cell)),
                                                 static_cast<std::int64_t>(std::floor(v.imag() / cell))};
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return std::hash<std::uint64_t>()(static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ULL ^
                                        static_cast<std::uint64_t>(k.second));
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, KeyHash> buckets;
  for (std::size_t i = 0; i < n; ++i) buckets[key_of(w[i])].push_back(i);
  for (std::size_t i = 0; i < n; ++i) {
    auto [kx, ky] = key_of(w[i]);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({kx + dx, ky + dy});
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second)
          if (j > i) scan.compare(i, j);
      }
  }
  // grid neighbours in radius and angle
  const std::size_t na = static_cast<std::size_t>(grid.n_angular);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ring = i / na, col = i % na;
    if (na > 1) scan.compare(i, ring * na + (col + 1) % na);
    if (ring + 1 < static_cast<std::size_t>(grid.n_radial)) scan.compare(i, i + na);
  }
  return out;
}

namespace {

class Winding {
 public:
  Winding(const Evaluable& f, Complex w0, double r) : f_(f), w0_(w0), r_(r) {}

  double total(int n) {
    std::vector<Complex> v(n + 1);
    for (int j = 0; j < n; ++j) v[j] = value(2 * kPi * j / n);
    v[n] = v[0];
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += increment(2 * kPi * j / n, 2 * kPi * (j + 1) / n, v[j], v[j + 1], 0);
    return sum;
  }

 private:
  Complex value(double theta) {
    Complex v = checked(f_, std::polar(r_, theta)) - w0_;
    if (std::abs(v) <= 1e-14 * (1.0 + std::abs(w0_))) throw Error(ErrorKind::OnCurve, "target on the image curve");
    return v;
  }

  double increment(double t0, double t1, Complex v0, Complex v1, int depth) {
    double d = std::arg(v1 / v0);
    if (std::abs(d) <= kPi / 2) return d;
    if (depth >= 24)
      throw Error(ErrorKind::UnresolvedWinding, "phase step above pi/2 after refinement", std::polar(r_, t0));
    double tm = 0.5 * (t0 + t1);
    Complex vm = value(tm);
    return increment(t0, tm, v0, vm, depth + 1) + increment(tm, t1, vm, v1, depth + 1);
  }

  const Evaluable& f_;
  Complex w0_;
  double r_;
};

}  // namespace

int preimage_count(const Evaluable& f, Complex w0, double r, int n_nodes) {
  if (n_nodes < 3) throw Error(ErrorKind::InvalidArgument, "winding number needs at least 3 nodes");
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  for (int attempt = 0; attempt <= 5; ++attempt) {
    try {
      double turns = Winding(f, w0, r + 1e-4 * attempt).total(n_nodes) / (2 * kPi);
      return static_cast<int>(std::lround(turns));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OnCurve) throw;
    }
  }
  throw Error(ErrorKind::OnCurve, "target stays on the image curve after perturbing the radius", w0);
}

std::vector<int> preimage_probe(const Evaluable& f, double r, int count, std::uint64_t seed, int n_nodes) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<int> counts;
  for (int i = 0; i < count; ++i) {
    Complex z0 = std::polar(0.95 * r * std::sqrt(u(rng)), 2 * kPi * u(rng));
    counts.push_back(preimage_count(f, checked(f, z0), r, n_nodes));
  }
  return counts;
}

DerivativeReport derivative_nonvanishing(const FunctionExpr& f, const DiskGrid& grid) {
  grid.validate();
  CompiledExpr df(differentiate(f));
  DerivativeReport out;
  auto visit = [&](Complex z) {
    double v = std::abs(df(z));
    if (v < out.min_abs) {
      out.min_abs = v;
      out.witness = z;
    }
  };
  visit(0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) visit(grid.point(i));
  out.flagged = out.min_abs < 1e-10;
  return out;
}

int polygon_winding(const std::vector<Complex>& polygon, Complex w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    Complex a = polygon[i] - w, b = polygon[(i + 1) % polygon.size()] - w;
    if (a == Complex(0.0) || b == Complex(0.0)) return 0;
    sum += std::arg(b / a);
  }
  return static_cast<int>(std::lround(sum / (2 * kPi)));
}

}  // namespace gft

#include "gft/qc_bound.hpp"

#include <cmath>

namespace gft {

QcBound qc_bound_K(Complex s, double k) {
  if (!(s.real() > 0.0)) throw Error(ErrorKind::InvalidArgument, "qc bound needs Re(s) > 0");
  if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidArgument, "qc bound needs k in [0, 1)");
  QcBound out;
  out.s = s;
  out.k = k;
  if (s == Complex(1.0)) {
    out.K = k;
    return out;
  }
  // |conj(s)^2 - 1| = |s - 1| |s + 1|; writing it this way keeps every
  // quotient below free of the cancellation near s = 1.
  const double a = s.real();
  const double dm = std::abs(s - 1.0);
  const double dp = std::abs(s + 1.0);
  const double B = dm * dp;
  out.l1 = dm / dp;
  out.l2 = k > 0.0 ? k * dp * dp / (std::sqrt(4.0 * a * a + k * k * B * B) + 2.0 * a) : *out.l1;
  // 1 - l3 = (1 - k)(dp - dm)/(dp + k dm) with dp - dm = 4a/(dp + dm), free of
  // cancellation when l3 is close to 1.
  const double gap = (1.0 - k) * 4.0 * a / ((dp + dm) * (dp + k * dm));
  double l3 = gap < 0.5 ? 1.0 - gap : (dm + k * dp) / (dp + k * dm);
  // The disks touch at l = l3, so a K rounded below the exact value would break
  // the inclusion. Round up by one ulp; K is an upper bound anyway.
  double up = std::nextafter(l3, 1.0);
  if (up < 1.0) l3 = up;
  out.l3 = l3;
  out.K = l3;
  return out;
}

InclusionCheck disk_inclusion_check(Complex s, double m, double k, double l) {
  const double a = s.real();
  const double b = s.imag();
  const double lp = 1.0 + l * l;
  const double lm = (1.0 - l) * (1.0 + l);  // 1 - l is exact for l near 1
  const double D = 2.0 * a * lp + lm * (1.0 + std::norm(s));
  InclusionCheck out;
  out.s1 = m * Complex(lp + a * lm, -b * lm) / D;
  out.s2 = m / (2.0 * a);
  out.r1 = 2.0 * l * m / D;
  out.r2 = k * m / (2.0 * a);
  // s1 - s2 = m (1 - l^2)(conj(s)^2 - 1) / (2 a D), so r1 - |s1 - s2| - r2 has
  // the numerator below. Its terms all shrink with a, so nothing large cancels.
  const double B = std::abs(s - 1.0) * std::abs(s + 1.0);
  out.slack = m * (4.0 * a * l - lm * B - k * D) / (2.0 * a * D);
  out.holds = out.slack >= -1e-12 * std::max(1.0, out.r1 + out.r2);
  return out;
}

}  // namespace gft

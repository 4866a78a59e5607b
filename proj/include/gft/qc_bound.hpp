#pragma once

#include <optional>

#include "gft/types.hpp"

namespace gft {

/// Dilatation bound of the extension produced by the quasiconformal criterion.
/// For s = 1 the l-thresholds are not defined and K = k.
struct QcBound {
  Complex s;
  double k = 0.0;
  std::optional<double> l1, l2, l3;
  double K = 0.0;
};

/// Requires Re s > 0 and k in [0, 1). At k = 0, l2 takes its limit l1.
QcBound qc_bound_K(Complex s, double k);

struct InclusionCheck {
  bool holds = false;
  double slack = 0.0;  ///< r1 - |s1 - s2| - r2
  Complex s1, s2;
  double r1 = 0.0, r2 = 0.0;
};

/// Whether the disk |w - m/(2a)| <= k m/(2a) lies inside the disk of values A
/// with |((1+s)A - m)/((1-s)A + m)| <= l.
InclusionCheck disk_inclusion_check(Complex s, double m, double k, double l);

}  // namespace gft

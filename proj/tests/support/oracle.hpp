// Independent reference implementations used only by tests.  These are direct
// transcriptions of the displayed formulas, deliberately kept separate from
// the library code paths they check.
#pragma once

#include <cmath>

namespace zrank::test {

// z = (p1 - p2) / sqrt(p(1-p)[1/n1 + 1/n2]),  p = (t1 + t2)/(n1 + n2),
// t_i = p_i * n_i.
inline double z_direct(double p1, double n1, double p2, double n2) {
  const double t1 = p1 * n1;
  const double t2 = p2 * n2;
  const double p = (t1 + t2) / (n1 + n2);
  return (p1 - p2) / std::sqrt(p * (1.0 - p) * (1.0 / n1 + 1.0 / n2));
}

inline double pooled_direct(double t1, double t2, double n1, double n2) {
  return (t1 + t2) / (n1 + n2);
}

}  // namespace zrank::test

// Standard normal distribution function with pinned accuracy.
#pragma once

namespace zrank {

// Complementary error function after W. J. Cody, "Rational Chebyshev
// approximation for the error function", Math. Comp. 23 (1969), 631-637,
// double-precision coefficient set from the SPECFUN CALERF routine.
// Absolute error is a few ulp everywhere; far below the 1e-9 budget the
// p-value machinery assumes.
double erfc_cody(double x);

// Phi(x) = erfc(-x / sqrt(2)) / 2.  Phi(0) == 0.5 exactly.
double standard_normal_cdf(double x);

}  // namespace zrank

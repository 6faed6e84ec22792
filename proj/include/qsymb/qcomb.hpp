#pragma once

#include "qsymb/laurent.hpp"

namespace qsymb {

// Balanced q-integer [n] = (q^n - q^{-n})/(q - q^{-1}), so [n] =
// q^{n-1} + q^{n-3} + ... + q^{1-n} for n > 0, [0] = 0, [-n] = -[n].
LaurentPoly q_int(int n);

// [n]! for n >= 0
LaurentPoly q_factorial(int n);

// Balanced q-binomial, an honest Laurent polynomial for 0 <= k <= m,
// computed by exact division of [m]...[m-k+1] by [k]!.
LaurentPoly q_binomial(int m, int k);

// gcd in Z[q^{±1}] up to units ±q^k, normalized so the lowest exponent is 0
// and the top coefficient is positive. Inputs must be q-only and integral.
// gcd(0,0) = 0.
LaurentPoly laurent_gcd(const LaurentPoly& f, const LaurentPoly& g);

} // namespace qsymb

#include "qsymb/qcomb.hpp"

namespace qsymb {

LaurentPoly q_int(int n) {
    if (n == 0) return LaurentPoly();
    if (n < 0) return -q_int(-n);
    LaurentPoly f;
    for (int k = 0; k < n; ++k) f += LaurentPoly::var_q(n - 1 - 2 * k);
    return f;
}

LaurentPoly q_factorial(int n) {
    QS_CHECK(n >= 0, "q_factorial of negative argument");
    LaurentPoly f(1);
    for (int k = 2; k <= n; ++k) f *= q_int(k);
    return f;
}

LaurentPoly q_binomial(int m, int k) {
    QS_CHECK(0 <= k && k <= m, "q_binomial outside 0 <= k <= m");
    LaurentPoly num(1);
    for (int l = 0; l < k; ++l) num *= q_int(m - l);
    return num.divided_by(q_factorial(k));
}

namespace {

// gcd of the coefficient numerators; inputs are integral polynomials
mpz_class int_content(const LaurentPoly& f) {
    mpz_class g = 0;
    for (const auto& [e, c] : f.terms()) {
        QS_CHECK(c.get_den() == 1, "laurent_gcd input not integral");
        mpz_class a = abs(c.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    return g;
}

} // namespace

LaurentPoly laurent_gcd(const LaurentPoly& f, const LaurentPoly& g) {
    QS_CHECK(f.q_only() && g.q_only(), "laurent_gcd inputs must be q-only");
    if (f.is_zero() && g.is_zero()) return LaurentPoly();
    mpz_class cf = f.is_zero() ? mpz_class(0) : int_content(f);
    mpz_class cg = g.is_zero() ? mpz_class(0) : int_content(g);
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    // poly_gcd on q-only inputs runs the univariate Euclid branch and returns a
    // monic polynomial with min exponent 0
    LaurentPoly h = poly_gcd(f, g);
    // rescale to the integer-primitive representative with positive top coefficient
    mpz_class den_lcm = 1;
    for (const auto& [e, v] : h.terms()) {
        mpz_class d = v.get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    h = h.scaled(Rational(den_lcm));
    mpz_class hc = int_content(h);
    h = h.scaled(Rational(mpz_class(1), hc));
    if (h.coeff(0, h.max_b()) < 0) h = -h;
    h = h.scaled(Rational(c));
    return h;
}

} // namespace qsymb

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "json.hpp"
#include "qsymb/common.hpp"

namespace qsymb {

using Rational = mpq_class;

std::string rat_str(const Rational& r);
Rational rat_parse(const std::string& s);

// Exponent pair of a monomial p^a q^b, ordered lexicographically (a first).
struct Exp {
    int a = 0;
    int b = 0;
    friend auto operator<=>(const Exp&, const Exp&) = default;
};

// Element of Q[p^{±1}, q^{±1}], stored as a sparse map exponent -> nonzero
// rational coefficient. The zero polynomial is the empty map.
class LaurentPoly {
public:
    using Map = std::map<Exp, Rational>;

    LaurentPoly() = default;
    LaurentPoly(long n);
    explicit LaurentPoly(const Rational& c);
    static LaurentPoly monomial(Rational c, int a, int b);
    static LaurentPoly var_p(int k = 1);
    static LaurentPoly var_q(int k = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // true when every exponent of p is zero
    bool q_only() const;
    // true when every coefficient is an integer
    bool integral() const;
    size_t term_count() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    Rational coeff(int a, int b) const;

    int min_a() const;
    int max_a() const;
    int min_b() const;
    int max_b() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly scaled(const Rational& c) const;
    LaurentPoly shifted(int da, int db) const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    // bar involution p -> p^{-1}, q -> q^{-1}
    LaurentPoly bar() const;

    // Splits along the direct sum Q[p,q]-lattice: a monomial p^a q^b lies in the
    // plus part iff a > 0 or (a == 0 and b > 0), in the constant part iff
    // a == b == 0, and in the minus part otherwise.
    struct Split;
    Split lattice_split() const;

    // Exact division: returns f/g when g divides f in Q[p^{±1},q^{±1}],
    // std::nullopt otherwise. Division by zero is an error.
    static std::optional<LaurentPoly> try_divide(const LaurentPoly& f, const LaurentPoly& g);
    LaurentPoly divided_by(const LaurentPoly& g) const;

    // Canonical text form: terms sorted by (a, b), e.g. "-1/2 * p^-1 q^3 + 2 + q".
    std::string str() const;
    static LaurentPoly parse(const std::string& s);

    // JSON form: array of [a, b, "num/den"] triples sorted by (a, b).
    nlohmann::json to_json() const;
    static LaurentPoly from_json(const nlohmann::json& j);

private:
    Map terms_;
    void add_term(int a, int b, const Rational& c);
    friend LaurentPoly poly_gcd(const LaurentPoly&, const LaurentPoly&);
};

struct LaurentPoly::Split {
    LaurentPoly plus;
    LaurentPoly minus;
    Rational constant;
};

// gcd in Q[p^{±1},q^{±1}] up to units, normalized so that the minimal exponents
// are (0,0) and the lexicographically least term has coefficient 1.
// gcd(0,0) = 0.
LaurentPoly poly_gcd(const LaurentPoly& f, const LaurentPoly& g);

} // namespace qsymb

#pragma once

#include "qsymb/laurent.hpp"

namespace qsymb {

// Element of Q(p,q), kept fully reduced: numerator and denominator coprime in
// Q[p^{±1},q^{±1}], denominator with minimal exponents (0,0) and its
// lexicographically least coefficient equal to 1. This makes the
// representation unique, so == could compare componentwise; it still
// cross-multiplies to stay correct independently of normalization.
class RationalFn {
public:
    RationalFn() : num_(), den_(1) {}
    RationalFn(long n) : num_(n), den_(1) {}
    RationalFn(const Rational& c) : num_(c), den_(1) {}
    RationalFn(const LaurentPoly& f) : num_(f), den_(1) {}
    RationalFn(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RationalFn operator-() const;
    RationalFn& operator+=(const RationalFn& o);
    RationalFn& operator-=(const RationalFn& o);
    RationalFn& operator*=(const RationalFn& o);
    RationalFn& operator/=(const RationalFn& o);
    friend RationalFn operator+(RationalFn x, const RationalFn& y) { return x += y; }
    friend RationalFn operator-(RationalFn x, const RationalFn& y) { return x -= y; }
    friend RationalFn operator*(RationalFn x, const RationalFn& y) { return x *= y; }
    friend RationalFn operator/(RationalFn x, const RationalFn& y) { return x /= y; }

    friend bool operator==(const RationalFn& x, const RationalFn& y) {
        return x.num_ * y.den_ == y.num_ * x.den_;
    }
    friend bool operator!=(const RationalFn& x, const RationalFn& y) { return !(x == y); }

    RationalFn bar() const { return RationalFn(num_.bar(), den_.bar()); }

    // true when the reduced denominator is 1, i.e. the element lies in
    // Q[p^{±1},q^{±1}]
    bool is_laurent() const { return den_.is_one(); }
    const LaurentPoly& as_laurent() const;

    // Behaviour at the origin in the sense of iterated specialization: first
    // expand as a Laurent series in p over Q(q), then look at q -> 0 in the
    // p^0 coefficient. in_A0 means no pole; value is then the constant term.
    struct OriginInfo {
        bool in_A0 = false;
        Rational value = 0;
    };
    OriginInfo origin() const;
    bool in_A0() const { return origin().in_A0; }
    bool in_qA0() const {
        auto o = origin();
        return o.in_A0 && o.value == 0;
    }

    std::string str() const;
    nlohmann::json to_json() const;
    static RationalFn from_json(const nlohmann::json& j);

private:
    LaurentPoly num_, den_;
    void reduce();
};

} // namespace qsymb

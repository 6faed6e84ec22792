#include "qsymb/ratfn.hpp"

namespace qsymb {

RationalFn::RationalFn(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    QS_CHECK(!den_.is_zero(), "rational function with zero denominator");
    reduce();
}

void RationalFn::reduce() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    if (den_.is_monomial()) {
        // dividing by a monomial never needs a gcd
        auto [e, c] = *den_.terms().begin();
        num_ = num_.shifted(-e.a, -e.b).scaled(1 / c);
        den_ = LaurentPoly(1);
        return;
    }
    // a full divisibility hit is common (Laurent results of field arithmetic)
    // and much cheaper than the gcd
    if (auto quot = LaurentPoly::try_divide(num_, den_)) {
        num_ = *quot;
        den_ = LaurentPoly(1);
        return;
    }
    LaurentPoly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_.divided_by(g);
        den_ = den_.divided_by(g);
    }
    int da = den_.min_a(), db = den_.min_b();
    num_ = num_.shifted(-da, -db);
    den_ = den_.shifted(-da, -db);
    Rational lead = den_.terms().begin()->second;
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
}

RationalFn RationalFn::operator-() const {
    RationalFn out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
        if (num_.is_zero()) den_ = LaurentPoly(1);
        // common-denominator sums stay reduced only up to factors of den_
        else if (!den_.is_one())
            reduce();
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) {
    RationalFn n = -o;
    return *this += n;
}

RationalFn& RationalFn::operator*=(const RationalFn& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
    QS_CHECK(!o.is_zero(), "division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    reduce();
    return *this;
}

const LaurentPoly& RationalFn::as_laurent() const {
    QS_CHECK(is_laurent(), "not a Laurent polynomial: " + str());
    return num_;
}

namespace {

// slice of f at its minimal p-exponent, as a q-only polynomial
LaurentPoly lowest_p_slice(const LaurentPoly& f) {
    int m = f.min_a();
    LaurentPoly s;
    for (const auto& [e, c] : f.terms())
        if (e.a == m) s += LaurentPoly::monomial(c, 0, e.b);
    return s;
}

} // namespace

RationalFn::OriginInfo RationalFn::origin() const {
    OriginInfo out;
    if (num_.is_zero()) {
        out.in_A0 = true;
        return out;
    }
    // ord_p comparison; the lowest slices never cancel, so this is
    // representative-independent
    int ap = num_.min_a(), bp = den_.min_a();
    if (ap < bp) return out;
    out.in_A0 = true;
    if (ap > bp) return out;
    LaurentPoly f0 = lowest_p_slice(num_), g0 = lowest_p_slice(den_);
    int aq = f0.min_b(), bq = g0.min_b();
    if (aq < bq) {
        out.in_A0 = false;
        return out;
    }
    if (aq > bq) return out;
    out.value = f0.coeff(0, aq) / g0.coeff(0, bq);
    return out;
}

std::string RationalFn::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

nlohmann::json RationalFn::to_json() const {
    if (den_.is_one()) return num_.to_json();
    return nlohmann::json{{"num", num_.to_json()}, {"den", den_.to_json()}};
}

RationalFn RationalFn::from_json(const nlohmann::json& j) {
    if (j.is_array()) return RationalFn(LaurentPoly::from_json(j));
    return RationalFn(LaurentPoly::from_json(j.at("num")),
                      LaurentPoly::from_json(j.at("den")));
}

} // namespace qsymb

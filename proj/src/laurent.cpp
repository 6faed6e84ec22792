#include "qsymb/laurent.hpp"

#include <sstream>

namespace qsymb {

std::string rat_str(const Rational& r) {
    return r.get_str();
}

Rational rat_parse(const std::string& s) {
    mpq_t tmp;
    mpq_init(tmp);
    int rc = mpq_set_str(tmp, s.c_str(), 10);
    if (rc != 0) {
        mpq_clear(tmp);
        throw error("malformed rational: '" + s + "'");
    }
    mpq_canonicalize(tmp);
    Rational out(tmp);
    mpq_clear(tmp);
    return out;
}

LaurentPoly::LaurentPoly(long n) {
    if (n != 0) terms_[Exp{0, 0}] = Rational(n);
}

LaurentPoly::LaurentPoly(const Rational& c) {
    if (c != 0) terms_[Exp{0, 0}] = c;
}

LaurentPoly LaurentPoly::monomial(Rational c, int a, int b) {
    LaurentPoly f;
    if (c != 0) f.terms_[Exp{a, b}] = std::move(c);
    return f;
}

LaurentPoly LaurentPoly::var_p(int k) { return monomial(1, k, 0); }
LaurentPoly LaurentPoly::var_q(int k) { return monomial(1, 0, k); }

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Exp{0, 0} &&
           terms_.begin()->second == 1;
}

bool LaurentPoly::q_only() const {
    for (const auto& [e, c] : terms_)
        if (e.a != 0) return false;
    return true;
}

bool LaurentPoly::integral() const {
    for (const auto& [e, c] : terms_)
        if (c.get_den() != 1) return false;
    return true;
}

Rational LaurentPoly::coeff(int a, int b) const {
    auto it = terms_.find(Exp{a, b});
    return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_a() const {
    QS_CHECK(!is_zero(), "min_a of zero polynomial");
    int m = terms_.begin()->first.a;
    for (const auto& [e, c] : terms_) m = std::min(m, e.a);
    return m;
}

int LaurentPoly::max_a() const {
    QS_CHECK(!is_zero(), "max_a of zero polynomial");
    int m = terms_.begin()->first.a;
    for (const auto& [e, c] : terms_) m = std::max(m, e.a);
    return m;
}

int LaurentPoly::min_b() const {
    QS_CHECK(!is_zero(), "min_b of zero polynomial");
    int m = terms_.begin()->first.b;
    for (const auto& [e, c] : terms_) m = std::min(m, e.b);
    return m;
}

int LaurentPoly::max_b() const {
    QS_CHECK(!is_zero(), "max_b of zero polynomial");
    int m = terms_.begin()->first.b;
    for (const auto& [e, c] : terms_) m = std::max(m, e.b);
    return m;
}

void LaurentPoly::add_term(int a, int b, const Rational& c) {
    if (c == 0) return;
    Exp e{a, b};
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        Rational s = it->second + c;
        if (s == 0)
            terms_.erase(it);
        else
            it->second = std::move(s);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) {
        Rational n = -c;
        out.terms_[e] = std::move(n);
    }
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.a, e.b, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        Rational n = -c;
        add_term(e.a, e.b, n);
    }
    return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly out;
    for (const auto& [ex, cx] : x.terms_)
        for (const auto& [ey, cy] : y.terms_) {
            Rational c = cx * cy;
            out.add_term(ex.a + ey.a, ex.b + ey.b, c);
        }
    return out;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
    LaurentPoly out;
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) {
        Rational n = v * c;
        out.terms_[e] = std::move(n);
    }
    return out;
}

LaurentPoly LaurentPoly::shifted(int da, int db) const {
    LaurentPoly out;
    for (const auto& [e, v] : terms_) out.terms_[Exp{e.a + da, e.b + db}] = v;
    return out;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly out;
    for (const auto& [e, v] : terms_) out.terms_[Exp{-e.a, -e.b}] = v;
    return out;
}

LaurentPoly::Split LaurentPoly::lattice_split() const {
    Split s;
    for (const auto& [e, v] : terms_) {
        if (e.a > 0 || (e.a == 0 && e.b > 0))
            s.plus.terms_[e] = v;
        else if (e.a == 0 && e.b == 0)
            s.constant = v;
        else
            s.minus.terms_[e] = v;
    }
    return s;
}

namespace {

// View of a Laurent polynomial as a dense polynomial in p with coefficients in
// Q[q^{±1}] (kept as q-only LaurentPolys), after factoring out p^{min_a}.
struct PView {
    int shift_a = 0;
    std::vector<LaurentPoly> coef; // coef[i] multiplies p^{shift_a + i}

    static PView of(const LaurentPoly& f) {
        PView v;
        QS_CHECK(!f.is_zero(), "PView of zero");
        v.shift_a = f.min_a();
        v.coef.resize(f.max_a() - v.shift_a + 1);
        for (const auto& [e, c] : f.terms()) {
            LaurentPoly m = LaurentPoly::monomial(c, 0, e.b);
            v.coef[e.a - v.shift_a] += m;
        }
        return v;
    }
};

// Exact division in Q[q^{±1}]: u/w, nullopt when not divisible.
std::optional<LaurentPoly> divide_q(const LaurentPoly& u, const LaurentPoly& w) {
    QS_CHECK(!w.is_zero(), "division by zero");
    if (u.is_zero()) return LaurentPoly();
    LaurentPoly rem = u, quot;
    int dw = w.max_b();
    Rational lw = w.coeff(0, dw);
    while (!rem.is_zero()) {
        int dr = rem.max_b();
        if (dr - rem.min_b() < dw - w.min_b()) return std::nullopt;
        Rational c = rem.coeff(0, dr) / lw;
        LaurentPoly t = LaurentPoly::monomial(c, 0, dr - dw);
        quot += t;
        rem -= t * w;
        if (!rem.is_zero() && rem.max_b() >= dr) return std::nullopt;
    }
    return quot;
}

} // namespace

std::optional<LaurentPoly> LaurentPoly::try_divide(const LaurentPoly& f,
                                                   const LaurentPoly& g) {
    QS_CHECK(!g.is_zero(), "division by zero");
    if (f.is_zero()) return LaurentPoly();
    PView pg = PView::of(g);
    LaurentPoly rem = f, quot;
    int dg = g.max_a();
    const LaurentPoly& lg = pg.coef.back();
    while (!rem.is_zero()) {
        int dr = rem.max_a();
        if (dr - rem.min_a() < dg - g.min_a()) return std::nullopt;
        // leading p-coefficient of rem as a q-polynomial
        LaurentPoly lr;
        for (const auto& [e, c] : rem.terms())
            if (e.a == dr) lr += monomial(c, 0, e.b);
        auto cq = divide_q(lr, lg);
        if (!cq) return std::nullopt;
        LaurentPoly t = cq->shifted(dr - dg, 0);
        quot += t;
        rem -= t * g;
        if (!rem.is_zero() && rem.max_a() >= dr) return std::nullopt;
    }
    return quot;
}

LaurentPoly LaurentPoly::divided_by(const LaurentPoly& g) const {
    auto r = try_divide(*this, g);
    QS_CHECK(r.has_value(), "exact division failed");
    return *r;
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c) << " * p^" << e.a << " q^" << e.b;
    }
    return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& s) {
    if (s == "0") return LaurentPoly();
    LaurentPoly out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(" + ", pos);
        std::string term =
            s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        size_t star = term.find(" * p^");
        if (star == std::string::npos) throw error("malformed term: '" + term + "'");
        Rational c = rat_parse(term.substr(0, star));
        size_t qpos = term.find(" q^", star + 5);
        if (qpos == std::string::npos) throw error("malformed term: '" + term + "'");
        int a = std::stoi(term.substr(star + 5, qpos - (star + 5)));
        int b = std::stoi(term.substr(qpos + 3));
        out.add_term(a, b, c);
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return out;
}

nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        std::string cs = c.get_num().get_str() + "/" + c.get_den().get_str();
        j.push_back(nlohmann::json::array({e.a, e.b, cs}));
    }
    return j;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
    LaurentPoly out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3) throw error("malformed LaurentPoly JSON");
        out.add_term(t[0].get<int>(), t[1].get<int>(),
                     rat_parse(t[2].get<std::string>()));
    }
    return out;
}

namespace {

// ---- gcd machinery ----------------------------------------------------
//
// Worked in two layers to keep intermediate expression swell under control:
// univariate gcds run a primitive PRS over Z[q] (integer contents via
// mpz_gcd are cheap), and the bivariate gcd runs the subresultant PRS in
// (Z[q])[p], whose divisions are exact by construction.

// scales f so all coefficients are integers (multiplies by the lcm of the
// denominators; the result differs from f by a positive rational factor)
LaurentPoly to_integral(const LaurentPoly& f) {
    mpz_class l = 1;
    for (const auto& [e, c] : f.terms()) {
        mpz_class d = c.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l == 1 ? f : f.scaled(Rational(l));
}

mpz_class z_content(const LaurentPoly& f) {
    mpz_class g = 0;
    for (const auto& [e, c] : f.terms()) {
        QS_CHECK(c.get_den() == 1, "z_content of non-integral polynomial");
        mpz_class a = abs(c.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    return g;
}

int qdeg(const LaurentPoly& f) { return f.max_b(); }

// integer-primitive representative of a q-only polynomial: min exponent 0,
// integer coefficients with content 1, positive top coefficient
LaurentPoly qprim(const LaurentPoly& f) {
    if (f.is_zero()) return f;
    LaurentPoly g = to_integral(f.shifted(0, -f.min_b()));
    g = g.scaled(Rational(mpz_class(1), z_content(g)));
    if (g.coeff(0, g.max_b()) < 0) g = -g;
    return g;
}

// gcd in Q[q^{±1}] up to units, as the integer-primitive representative;
// primitive PRS over Z[q]
LaurentPoly qgcd_z(LaurentPoly u, LaurentPoly w) {
    QS_CHECK(u.q_only() && w.q_only(), "qgcd_z inputs must be q-only");
    if (u.is_zero()) return qprim(w);
    if (w.is_zero()) return qprim(u);
    u = qprim(u);
    w = qprim(w);
    if (qdeg(u) < qdeg(w)) std::swap(u, w);
    while (true) {
        if (qdeg(w) == 0) return LaurentPoly(1);
        // pseudo-remainder of u by w over Z[q]
        Rational lw = w.coeff(0, qdeg(w));
        LaurentPoly r = u;
        int e = qdeg(u) - qdeg(w) + 1;
        while (!r.is_zero() && qdeg(r) >= qdeg(w)) {
            Rational lr = r.coeff(0, qdeg(r));
            r = r.scaled(lw) - w.shifted(0, qdeg(r) - qdeg(w)).scaled(lr);
            --e;
        }
        while (e-- > 0) r = r.scaled(lw);
        if (r.is_zero()) return w;
        u = w;
        w = qprim(r);
    }
}

int pdeg(const LaurentPoly& f) { return f.max_a(); }

LaurentPoly plead(const LaurentPoly& f) {
    LaurentPoly l;
    int d = f.max_a();
    for (const auto& [e, c] : f.terms())
        if (e.a == d) l += LaurentPoly::monomial(c, 0, e.b);
    return l;
}

// content of f (integral coefficients) in (Z[q])[p]: gcd of the p-slices
LaurentPoly pcontent(const LaurentPoly& f) {
    PView v = PView::of(f);
    LaurentPoly c;
    for (const auto& s : v.coef)
        if (!s.is_zero()) c = qgcd_z(c, s);
    return c;
}

// f divided by its content; exact since the content divides every p-slice
// (divide_q works in Q[q^{±1}], so per-slice q-shifts are preserved)
LaurentPoly primitive_part(const LaurentPoly& f, const LaurentPoly& content) {
    PView v = PView::of(f);
    LaurentPoly out;
    for (size_t i = 0; i < v.coef.size(); ++i) {
        if (v.coef[i].is_zero()) continue;
        auto d = divide_q(v.coef[i], content);
        QS_CHECK(d.has_value(), "content division failed");
        out += d->shifted(v.shift_a + (int)i, 0);
    }
    return out;
}

// Pseudo-remainder in (Q[q^{±1}])[p]; r and w have min_a >= 0 and
// pdeg(r) >= pdeg(w) >= 1. Result has pdeg < pdeg(w) (or is zero).
LaurentPoly pseudo_rem(LaurentPoly r, const LaurentPoly& w) {
    const int dw = pdeg(w);
    const LaurentPoly lw = plead(w);
    int e = pdeg(r) - dw + 1;
    while (!r.is_zero() && pdeg(r) >= dw) {
        LaurentPoly lr = plead(r);
        r = r * lw - lr.shifted(pdeg(r) - dw, 0) * w;
        --e;
    }
    while (e-- > 0) r = r * lw;
    return r;
}

LaurentPoly unit_normalize(const LaurentPoly& f) {
    if (f.is_zero()) return f;
    LaurentPoly g = f.shifted(-f.min_a(), -f.min_b());
    return g.scaled(1 / g.terms().begin()->second);
}

LaurentPoly transpose_vars(const LaurentPoly& f) {
    LaurentPoly out;
    for (const auto& [e, c] : f.terms()) out += LaurentPoly::monomial(c, e.b, e.a);
    return out;
}

// gcd with p as the main PRS variable
LaurentPoly poly_gcd_in_p(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly F = to_integral(f);
    LaurentPoly G = to_integral(g);
    LaurentPoly cf = pcontent(F), cg = pcontent(G);
    LaurentPoly c = qgcd_z(cf, cg);
    LaurentPoly u = primitive_part(F, cf);
    LaurentPoly w = primitive_part(G, cg);
    u = u.shifted(-u.min_a(), 0);
    w = w.shifted(-w.min_a(), 0);
    if (pdeg(u) < pdeg(w)) std::swap(u, w);
    // subresultant polynomial remainder sequence in (Z[q])[p]; all divisions
    // below are exact, which is what keeps the q-degrees from doubling per step
    LaurentPoly gc(1), h(1), out;
    while (true) {
        if (pdeg(w) - w.min_a() == 0) {
            // w is a q-polynomial times a p-power, a unit times content in
            // (Q(q))[p], so the primitive parts are coprime
            out = c;
            break;
        }
        int delta = pdeg(u) - pdeg(w);
        LaurentPoly r = pseudo_rem(u, w);
        if (r.is_zero()) {
            out = primitive_part(w, pcontent(w)) * c;
            break;
        }
        LaurentPoly divisor = gc;
        for (int i = 0; i < delta; ++i) divisor *= h;
        u = w;
        auto rd = LaurentPoly::try_divide(r, divisor);
        QS_CHECK(rd.has_value(), "subresultant division failed");
        w = *rd;
        gc = plead(u);
        if (delta == 1) {
            h = gc;
        } else if (delta > 1) {
            LaurentPoly num(1);
            for (int i = 0; i < delta; ++i) num *= gc;
            LaurentPoly den(1);
            for (int i = 0; i < delta - 1; ++i) den *= h;
            auto hq = LaurentPoly::try_divide(num, den);
            QS_CHECK(hq.has_value(), "subresultant h-update failed");
            h = *hq;
        }
    }
    return unit_normalize(out);
}

} // namespace

LaurentPoly poly_gcd(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.is_zero()) return unit_normalize(g);
    if (g.is_zero()) return unit_normalize(f);
    if (f.is_monomial() || g.is_monomial()) return LaurentPoly(1);
    // PRS depth is governed by the main-variable span, so run it in the
    // narrower variable
    int span_p = std::max(f.max_a() - f.min_a(), g.max_a() - g.min_a());
    int span_q = std::max(f.max_b() - f.min_b(), g.max_b() - g.min_b());
    if (span_q < span_p)
        return unit_normalize(
            transpose_vars(poly_gcd_in_p(transpose_vars(f), transpose_vars(g))));
    return poly_gcd_in_p(f, g);
}

} // namespace qsymb

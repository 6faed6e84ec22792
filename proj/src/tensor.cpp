#include "qsymb/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "qsymb/qcomb.hpp"

namespace qsymb {

void tensor_add_scaled(TensorVec& acc, const TensorVec& x, const RationalFn& c) {
    if (c.is_zero()) return;
    for (const auto& [w, v] : x) {
        auto& slot = acc[w];
        slot += v * c;
        if (slot.is_zero()) acc.erase(w);
    }
}

std::optional<Composition> comp_raise(const Composition& c, int i) {
    QS_CHECK(1 <= i && i <= c.r(), "index out of range");
    if (c.parts[i] == 0) return std::nullopt;
    auto p = c.parts;
    p[i - 1] += 1;
    p[i] -= 1;
    return Composition(p);
}

std::optional<Composition> comp_lower(const Composition& c, int i) {
    QS_CHECK(1 <= i && i <= c.r(), "index out of range");
    if (c.parts[i - 1] == 0) return std::nullopt;
    auto p = c.parts;
    p[i - 1] -= 1;
    p[i] += 1;
    return Composition(p);
}

void UjExpr::add_term(Term t, const RationalFn& c) {
    if (c.is_zero()) return;
    auto it = terms_.try_emplace(std::move(t), RationalFn()).first;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

UjExpr UjExpr::one() {
    UjExpr x;
    x.terms_[{}] = RationalFn(1);
    return x;
}

UjExpr UjExpr::e(int i, int n) {
    QS_CHECK(i >= 1 && n >= 1, "bad generator");
    UjExpr x;
    x.terms_[{UjGen{0, i, n}}] = RationalFn(1);
    return x;
}

UjExpr UjExpr::f(int i, int n) {
    QS_CHECK(i >= 1 && n >= 1, "bad generator");
    UjExpr x;
    x.terms_[{UjGen{1, i, n}}] = RationalFn(1);
    return x;
}

UjExpr UjExpr::k(int i, int exp) {
    QS_CHECK(i >= 1 && exp != 0, "bad generator");
    UjExpr x;
    x.terms_[{UjGen{2, i, exp}}] = RationalFn(1);
    return x;
}

UjExpr& UjExpr::operator+=(const UjExpr& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
}

UjExpr& UjExpr::operator-=(const UjExpr& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
}

UjExpr UjExpr::operator-() const {
    UjExpr x;
    for (const auto& [t, c] : terms_) x.terms_[t] = -c;
    return x;
}

UjExpr operator*(const UjExpr& a, const UjExpr& b) {
    UjExpr x;
    for (const auto& [ta, ca] : a.terms_)
        for (const auto& [tb, cb] : b.terms_) {
            UjExpr::Term t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            x.add_term(std::move(t), ca * cb);
        }
    return x;
}

UjExpr operator*(const RationalFn& c, UjExpr a) {
    UjExpr x;
    for (const auto& [t, v] : a.terms_) x.add_term(t, v * c);
    return x;
}

UjExpr UjExpr::expanded() const {
    UjExpr x;
    for (const auto& [t, c] : terms_) {
        Term nt;
        RationalFn nc = c;
        for (const UjGen& g : t) {
            if (g.kind <= 1 && g.n > 1) {
                nt.insert(nt.end(), (size_t)g.n, UjGen{g.kind, g.i, 1});
                nc *= RationalFn(LaurentPoly(1), q_factorial(g.n));
            } else {
                nt.push_back(g);
            }
        }
        x.add_term(std::move(nt), nc);
    }
    return x;
}

std::string UjExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.str() << ')';
        if (t.empty()) os << " 1";
        for (const UjGen& g : t) {
            os << ' ' << "efk"[g.kind] << '_' << g.i;
            if (g.kind == 2) {
                if (g.n != 1) os << '^' << g.n;
            } else if (g.n != 1) {
                os << "^(" << g.n << ')';
            }
        }
    }
    return os.str();
}

UjExpr psij(const UjExpr& x) {
    UjExpr out;
    for (const auto& [t, c] : x.terms_) {
        UjExpr::Term nt = t;
        for (UjGen& g : nt)
            if (g.kind == 2) g.n = -g.n;
        out.add_term(std::move(nt), c.bar());
    }
    return out;
}

UjExpr sigmaj(const UjExpr& x) {
    UjExpr out;
    for (const auto& [t, c] : x.terms_) {
        UjExpr::Term nt(t.rbegin(), t.rend());
        for (UjGen& g : nt)
            if (g.kind <= 1) g.kind = 1 - g.kind;
        out.add_term(std::move(nt), c);
    }
    return out;
}

UjExpr tauj(const UjExpr& x) {
    UjExpr out;
    for (const auto& [t, c] : x.expanded().terms_) {
        UjExpr acc = c * UjExpr::one();
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            const UjGen& g = *it;
            UjExpr img;
            if (g.kind == 0)
                img = RationalFn(LaurentPoly::var_p(g.i == 1 ? -1 : 0) *
                                 LaurentPoly::var_q(-1)) *
                      (UjExpr::k(g.i, -1) * UjExpr::f(g.i));
            else if (g.kind == 1)
                img = RationalFn(LaurentPoly::var_p(g.i == 1 ? 1 : 0) *
                                 LaurentPoly::var_q(1)) *
                      (UjExpr::e(g.i) * UjExpr::k(g.i));
            else
                img = UjExpr::k(g.i, g.n);
            acc = acc * img;
        }
        out += acc;
    }
    return out;
}

namespace {

int wdot(const Weight& a, const Weight& b) {
    QS_CHECK(a.r() == b.r(), "rank mismatch");
    int s = 0;
    for (int m = -a.r(); m <= a.r(); ++m) s += a.at(m) * b.at(m);
    return s;
}

std::string word_str(const Word& w) {
    std::ostringstream os;
    os << '(';
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) os << ',';
        os << w[k];
    }
    os << ')';
    return os.str();
}

} // namespace

std::vector<UjExpr> uj_defining_relations(int r) {
    QS_CHECK(r >= 1, "rank must be positive");
    using X = UjExpr;
    std::vector<UjExpr> rels;
    RationalFn qq(LaurentPoly::var_q(1) + LaurentPoly::var_q(-1));

    for (int i = 1; i <= r; ++i) {
        rels.push_back(X::k(i, 1) * X::k(i, -1) - X::one());
        rels.push_back(X::k(i, -1) * X::k(i, 1) - X::one());
        for (int j = i + 1; j <= r; ++j)
            rels.push_back(X::k(i) * X::k(j) - X::k(j) * X::k(i));
    }

    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            int c = wdot(beta_root(r, i), alpha_root(r, j));
            rels.push_back(X::k(i) * X::e(j) -
                           RationalFn(LaurentPoly::var_q(c)) * (X::e(j) * X::k(i)));
            rels.push_back(X::k(i) * X::f(j) -
                           RationalFn(LaurentPoly::var_q(-c)) * (X::f(j) * X::k(i)));
            if (i != j) rels.push_back(X::e(i) * X::f(j) - X::f(j) * X::e(i));
            if (i == j && i != 1)
                rels.push_back(X::e(i) * X::f(i) - X::f(i) * X::e(i) -
                               RationalFn(LaurentPoly(1),
                                          LaurentPoly::var_q(1) - LaurentPoly::var_q(-1)) *
                                   (X::k(i, 1) - X::k(i, -1)));
            if (std::abs(i - j) == 1) {
                rels.push_back(X::e(i) * X::e(i) * X::e(j) - qq * (X::e(i) * X::e(j) * X::e(i)) +
                               X::e(j) * X::e(i) * X::e(i));
                rels.push_back(X::f(i) * X::f(i) * X::f(j) - qq * (X::f(i) * X::f(j) * X::f(i)) +
                               X::f(j) * X::f(i) * X::f(i));
            }
            if (std::abs(i - j) > 1) {
                rels.push_back(X::e(i) * X::e(j) - X::e(j) * X::e(i));
                rels.push_back(X::f(i) * X::f(j) - X::f(j) * X::f(i));
            }
        }

    RationalFn pq(LaurentPoly::var_p(1) * LaurentPoly::var_q(1));
    RationalFn pqi(LaurentPoly::var_p(-1) * LaurentPoly::var_q(-1));
    X e1 = X::e(1), f1 = X::f(1);
    rels.push_back(e1 * e1 * f1 - qq * (e1 * f1 * e1) + f1 * e1 * e1 +
                   qq * (pq * (e1 * X::k(1, 1)) + pqi * (e1 * X::k(1, -1))));
    rels.push_back(f1 * f1 * e1 - qq * (f1 * e1 * f1) + e1 * f1 * f1 +
                   qq * (pq * (X::k(1, 1) * f1) + pqi * (X::k(1, -1) * f1)));
    return rels;
}

TensorBimodule::TensorBimodule(const SchurAlgebra& S)
    : S_(S), H_(S.algebra()), W_(S.group()) {
    build();
}

void TensorBimodule::build() {
    r_ = S_.pi().front().r();
    d_ = W_.d();
    int n = 2 * r_ + 1;
    size_t count = 1;
    for (int k = 0; k < d_; ++k) count *= (size_t)n;

    words_.reserve(count);
    Word w((size_t)d_, -r_);
    for (size_t idx = 0; idx < count; ++idx) {
        words_.push_back(w);
        for (int k = d_ - 1; k >= 0; --k) {
            if (w[(size_t)k] < r_) {
                ++w[(size_t)k];
                break;
            }
            w[(size_t)k] = -r_;
        }
    }

    pair_of_.assign(count, {-1, -1});
    for (size_t lam = 0; lam < S_.pi().size(); ++lam) {
        Word sorted;
        const auto& parts = S_.pi()[lam].parts;
        for (int m = 0; m <= r_; ++m)
            sorted.insert(sorted.end(), (size_t)parts[(size_t)m], m);

        for (int x : S_.min_reps((int)lam)) {
            Word wx;
            if (x == 0) {
                wx = sorted;
            } else {
                int s = -1;
                for (int t = 0; t < d_; ++t)
                    if (W_.right_descent(x, t)) {
                        s = t;
                        break;
                    }
                QS_CHECK(s >= 0, "no descent on a nontrivial element");
                wx = words_[(size_t)word_of_.at({(int)lam, W_.rmul(x, s)})];
                if (s == 0) {
                    QS_CHECK(wx[0] > 0, "coset step is not strict");
                    wx[0] = -wx[0];
                } else {
                    QS_CHECK(wx[(size_t)s - 1] < wx[(size_t)s],
                             "coset step is not strict");
                    std::swap(wx[(size_t)s - 1], wx[(size_t)s]);
                }
            }
            int idx = word_index(wx);
            QS_CHECK(pair_of_[(size_t)idx].first < 0, "iso table collision");
            pair_of_[(size_t)idx] = {(int)lam, x};
            word_of_[{(int)lam, x}] = idx;
        }
    }
    QS_CHECK(word_of_.size() == words_.size(),
             "module dimension does not match the word count");
}

int TensorBimodule::word_index(const Word& w) const {
    QS_CHECK((int)w.size() == d_, "wrong word length");
    int idx = 0;
    for (int k = 0; k < d_; ++k) {
        QS_CHECK(-r_ <= w[(size_t)k] && w[(size_t)k] <= r_, "letter out of range");
        idx = idx * (2 * r_ + 1) + (w[(size_t)k] + r_);
    }
    return idx;
}

int TensorBimodule::alpha_pairing(int a, int letter) const {
    if (a > 0) return (letter == a - 1) - (letter == a);
    return (letter == a) - (letter == a + 1);
}

TensorVec TensorBimodule::act_E(int a, const TensorVec& v) const {
    int in = a > 0 ? a : a + 1, out = a > 0 ? a - 1 : a;
    TensorVec acc;
    for (const auto& [w, c] : v)
        for (int k = 0; k < d_; ++k) {
            if (w[(size_t)k] != in) continue;
            int tail = 0;
            for (int l = k + 1; l < d_; ++l) tail += alpha_pairing(a, w[(size_t)l]);
            Word nw = w;
            nw[(size_t)k] = out;
            tensor_add_scaled(acc, {{nw, c}}, RationalFn(LaurentPoly::var_q(-tail)));
        }
    return acc;
}

TensorVec TensorBimodule::act_F(int a, const TensorVec& v) const {
    int in = a > 0 ? a - 1 : a, out = a > 0 ? a : a + 1;
    TensorVec acc;
    for (const auto& [w, c] : v)
        for (int k = 0; k < d_; ++k) {
            if (w[(size_t)k] != in) continue;
            int head = 0;
            for (int l = 0; l < k; ++l) head += alpha_pairing(a, w[(size_t)l]);
            Word nw = w;
            nw[(size_t)k] = out;
            tensor_add_scaled(acc, {{nw, c}}, RationalFn(LaurentPoly::var_q(head)));
        }
    return acc;
}

TensorVec TensorBimodule::act_K(int a, int exp, const TensorVec& v) const {
    TensorVec acc;
    for (const auto& [w, c] : v) {
        int tot = 0;
        for (int l = 0; l < d_; ++l) tot += alpha_pairing(a, w[(size_t)l]);
        tensor_add_scaled(acc, {{w, c}}, RationalFn(LaurentPoly::var_q(exp * tot)));
    }
    return acc;
}

TensorVec TensorBimodule::act_e(int i, const TensorVec& v) const {
    QS_CHECK(1 <= i && i <= r_, "generator out of range");
    TensorVec acc = act_E(i, v);
    tensor_add_scaled(acc, act_F(-i, act_K(i, -1, v)),
                      RationalFn(LaurentPoly::var_p(i == 1 ? -1 : 0)));
    return acc;
}

TensorVec TensorBimodule::act_f(int i, const TensorVec& v) const {
    QS_CHECK(1 <= i && i <= r_, "generator out of range");
    TensorVec acc = act_E(-i, v);
    tensor_add_scaled(acc, act_K(-i, -1, act_F(i, v)),
                      RationalFn(LaurentPoly::var_p(i == 1 ? 1 : 0)));
    return acc;
}

TensorVec TensorBimodule::act_k(int i, int exp, const TensorVec& v) const {
    QS_CHECK(1 <= i && i <= r_, "generator out of range");
    return act_K(i, exp, act_K(-i, -exp, v));
}

TensorVec TensorBimodule::act_expr(const UjExpr& x, const TensorVec& v) const {
    TensorVec acc;
    for (const auto& [t, c] : x.terms()) {
        TensorVec cur = v;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            const UjGen& g = *it;
            if (g.kind == 2) {
                cur = act_k(g.i, g.n, cur);
                continue;
            }
            for (int n = 0; n < g.n; ++n)
                cur = g.kind == 0 ? act_e(g.i, cur) : act_f(g.i, cur);
            if (g.n > 1) {
                TensorVec scaled;
                tensor_add_scaled(scaled, cur,
                                  RationalFn(LaurentPoly(1), q_factorial(g.n)));
                cur = std::move(scaled);
            }
        }
        tensor_add_scaled(acc, cur, c);
    }
    return acc;
}

TensorVec TensorBimodule::act_gen_right(const TensorVec& v, int s) const {
    QS_CHECK(0 <= s && s < d_, "generator out of range");
    RationalFn pi(LaurentPoly::var_p(-1));
    RationalFn pd(LaurentPoly::var_p(-1) - LaurentPoly::var_p(1));
    RationalFn qi(LaurentPoly::var_q(-1));
    RationalFn qd(LaurentPoly::var_q(-1) - LaurentPoly::var_q(1));
    TensorVec acc;
    for (const auto& [w, c] : v) {
        if (s == 0) {
            if (w[0] == 0) {
                tensor_add_scaled(acc, {{w, c}}, pi);
            } else {
                Word nw = w;
                nw[0] = -nw[0];
                tensor_add_scaled(acc, {{nw, c}}, RationalFn(1));
                if (w[0] < 0) tensor_add_scaled(acc, {{w, c}}, pd);
            }
        } else {
            int a = w[(size_t)s - 1], b = w[(size_t)s];
            if (a == b) {
                tensor_add_scaled(acc, {{w, c}}, qi);
            } else {
                Word nw = w;
                std::swap(nw[(size_t)s - 1], nw[(size_t)s]);
                tensor_add_scaled(acc, {{nw, c}}, RationalFn(1));
                if (a > b) tensor_add_scaled(acc, {{w, c}}, qd);
            }
        }
    }
    return acc;
}

TensorVec TensorBimodule::act_hecke(const TensorVec& v, const HeckeElt& h) const {
    TensorVec acc;
    for (const auto& [x, c] : h) {
        TensorVec cur = v;
        for (int s : W_.word(x)) cur = act_gen_right(cur, s);
        tensor_add_scaled(acc, cur, RationalFn(c));
    }
    return acc;
}

Weight TensorBimodule::weight(const Word& w) const {
    Weight out(r_);
    for (int letter : w) out.at(letter) += 1;
    return out;
}

WeightJ TensorBimodule::weight_j(const Word& w) const { return project_j(weight(w)); }

std::pair<int, int> TensorBimodule::pair_of_word(const Word& w) const {
    return pair_of_[(size_t)word_index(w)];
}

const Word& TensorBimodule::word_of_pair(int lam, int x) const {
    return words_[(size_t)word_of_.at({lam, x})];
}

TElt TensorBimodule::iso(const TensorVec& v) const {
    TElt t;
    for (const auto& [w, c] : v) {
        QS_CHECK(c.is_laurent(), "coefficient has a denominator");
        auto [lam, x] = pair_of_word(w);
        t[lam][x] = c.as_laurent();
    }
    return t;
}

TensorVec TensorBimodule::iso_inv(const TElt& t) const {
    TensorVec v;
    for (const auto& [lam, coords] : t)
        for (const auto& [x, c] : coords) v[word_of_pair(lam, x)] = RationalFn(c);
    return v;
}

TensorVec TensorBimodule::act_selt(const SElt& s, const TensorVec& v) const {
    LaurentPoly den(1);
    for (const auto& [w, c] : v) den = den * c.den();
    TensorVec cleared;
    tensor_add_scaled(cleared, v, RationalFn(den));
    TensorVec out;
    tensor_add_scaled(out, iso_inv(S_.act(s, iso(cleared))),
                      RationalFn(LaurentPoly(1), den));
    return out;
}

TensorVec TensorBimodule::bar_vec(const TensorVec& v) const {
    TensorVec out;
    for (const auto& [w, c] : v)
        tensor_add_scaled(out, iso_inv(S_.bar_t(iso({{w, RationalFn(1)}}))), c.bar());
    return out;
}

RationalFn TensorBimodule::form_vec(const TensorVec& a, const TensorVec& b) const {
    LaurentPoly da(1), db(1);
    for (const auto& [w, c] : a) da = da * c.den();
    for (const auto& [w, c] : b) db = db * c.den();
    TensorVec ca, cb;
    tensor_add_scaled(ca, a, RationalFn(da));
    tensor_add_scaled(cb, b, RationalFn(db));
    return RationalFn(S_.form(iso(ca), iso(cb))) / RationalFn(da * db);
}

SElt TensorBimodule::xi_e(int i) const {
    SElt s;
    for (size_t lam = 0; lam < S_.pi().size(); ++lam)
        if (auto up = comp_raise(S_.pi()[lam], i))
            s[XiKey{S_.comp_index(*up), 0, (int)lam}] = LaurentPoly(1);
    return s;
}

SElt TensorBimodule::xi_f(int i) const {
    SElt s;
    for (size_t lam = 0; lam < S_.pi().size(); ++lam)
        if (auto down = comp_lower(S_.pi()[lam], i))
            s[XiKey{S_.comp_index(*down), 0, (int)lam}] = LaurentPoly(1);
    return s;
}

SElt TensorBimodule::xi_k(int i, int exp) const {
    QS_CHECK(1 <= i && i <= r_, "generator out of range");
    SElt s;
    for (size_t lam = 0; lam < S_.pi().size(); ++lam) {
        int c = weight_j(word_of_pair((int)lam, 0)).coords[(size_t)i - 1];
        s[XiKey{(int)lam, 0, (int)lam}] = LaurentPoly::var_q(exp * c);
    }
    return s;
}

TensorBimodule::SurjectionReport TensorBimodule::check_surjection_formulas() const {
    SurjectionReport rep;
    for (int i = 1; i <= r_; ++i) {
        auto ki = [this, i](const TensorVec& v) { return act_k(i, 1, v); };
        std::vector<std::pair<std::string, SElt>> gens = {
            {"e_" + std::to_string(i), xi_e(i)},
            {"f_" + std::to_string(i), xi_f(i)},
            {"k_" + std::to_string(i), xi_k(i, 1)},
        };
        for (const Word& w : words_) {
            TensorVec v{{w, RationalFn(1)}};
            std::vector<TensorVec> direct = {act_e(i, v), act_f(i, v), ki(v)};
            for (size_t g = 0; g < gens.size(); ++g) {
                TensorVec diff = act_selt(gens[g].second, v);
                tensor_add_scaled(diff, direct[g], RationalFn(-1));
                if (!diff.empty())
                    rep.failures.push_back(gens[g].first + " disagrees on " + word_str(w));
            }
        }
    }
    rep.ok = rep.failures.empty();
    return rep;
}

nlohmann::json TensorBimodule::generator_matrices_json() const {
    nlohmann::json j;
    j["r"] = r_;
    j["d"] = d_;
    j["words"] = nlohmann::json::array();
    for (const Word& w : words_) j["words"].push_back(w);

    auto matrix = [this](auto&& op) {
        nlohmann::json m = nlohmann::json::array();
        for (size_t col = 0; col < words_.size(); ++col) {
            TensorVec v = op(TensorVec{{words_[col], RationalFn(1)}});
            for (const auto& [w, c] : v)
                m.push_back({word_index(w), col, c.str()});
        }
        return m;
    };
    j["e"] = nlohmann::json::array();
    j["f"] = nlohmann::json::array();
    j["k"] = nlohmann::json::array();
    for (int i = 1; i <= r_; ++i) {
        j["e"].push_back(matrix([&](const TensorVec& v) { return act_e(i, v); }));
        j["f"].push_back(matrix([&](const TensorVec& v) { return act_f(i, v); }));
        j["k"].push_back(matrix([&](const TensorVec& v) { return act_k(i, 1, v); }));
    }
    return j;
}

} // namespace qsymb

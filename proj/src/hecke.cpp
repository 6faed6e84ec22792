#include "qsymb/hecke.hpp"

namespace qsymb {

void hecke_add(HeckeElt& acc, const HeckeElt& x) {
    for (const auto& [w, c] : x) {
        auto it = acc.find(w);
        if (it == acc.end()) {
            acc[w] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

void hecke_add_scaled(HeckeElt& acc, const HeckeElt& x, const LaurentPoly& c) {
    if (c.is_zero()) return;
    for (const auto& [w, v] : x) {
        LaurentPoly t = v * c;
        auto it = acc.find(w);
        if (it == acc.end()) {
            acc[w] = std::move(t);
        } else {
            it->second += t;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

HeckeElt hecke_scaled(const HeckeElt& x, const LaurentPoly& c) {
    HeckeElt out;
    hecke_add_scaled(out, x, c);
    return out;
}

bool hecke_eq(const HeckeElt& x, const HeckeElt& y) { return x == y; }

HeckeAlgebra::HeckeAlgebra(const WeylGroupB& W) : W_(&W) {
    int n = W.size();
    qw_.reserve(n);
    qw_inv_.reserve(n);
    for (int w = 0; w < n; ++w) {
        int np = W.neg_count(w), nq = W.length(w) - np;
        qw_.push_back(LaurentPoly::monomial(1, np, nq));
        qw_inv_.push_back(LaurentPoly::monomial(1, -np, -nq));
    }
    barh_.resize(n);
    barh_done_.assign(n, 0);
}

LaurentPoly HeckeAlgebra::q_gen(int s) const {
    return s == 0 ? LaurentPoly::var_p() : LaurentPoly::var_q();
}

HeckeElt HeckeAlgebra::rmul_gen(const HeckeElt& h, int s) const {
    HeckeElt out;
    for (const auto& [w, c] : h) {
        int ws = W_->rmul(w, s);
        if (W_->length(ws) > W_->length(w)) {
            hecke_add_scaled(out, basis(ws), c);
        } else {
            hecke_add_scaled(out, basis(ws), c);
            LaurentPoly t = q_gen(s);
            hecke_add_scaled(out, basis(w), c * (t.bar() - t));
        }
    }
    return out;
}

HeckeElt HeckeAlgebra::lmul_gen(int s, const HeckeElt& h) const {
    HeckeElt out;
    for (const auto& [w, c] : h) {
        int sw = W_->lmul(s, w);
        if (W_->length(sw) > W_->length(w)) {
            hecke_add_scaled(out, basis(sw), c);
        } else {
            hecke_add_scaled(out, basis(sw), c);
            LaurentPoly t = q_gen(s);
            hecke_add_scaled(out, basis(w), c * (t.bar() - t));
        }
    }
    return out;
}

HeckeElt HeckeAlgebra::mul(const HeckeElt& a, const HeckeElt& b) const {
    HeckeElt out;
    for (const auto& [w, c] : b) {
        HeckeElt t = hecke_scaled(a, c);
        for (int s : W_->word(w)) t = rmul_gen(t, s);
        hecke_add(out, t);
    }
    return out;
}

const HeckeElt& HeckeAlgebra::bar_basis(int w) const {
    if (!barh_done_[w]) {
        if (w == 0) {
            barh_[0] = unit();
        } else {
            const auto& wd = W_->word(w);
            int s = wd.back();
            const HeckeElt& prev = bar_basis(W_->rmul(w, s));
            // bar(H_s) = H_s + (q_s - q_s^{-1})
            LaurentPoly t = q_gen(s);
            HeckeElt out = rmul_gen(prev, s);
            hecke_add_scaled(out, prev, t - t.bar());
            barh_[w] = std::move(out);
        }
        barh_done_[w] = 1;
    }
    return barh_[w];
}

HeckeElt HeckeAlgebra::bar(const HeckeElt& h) const {
    HeckeElt out;
    for (const auto& [w, c] : h) hecke_add_scaled(out, bar_basis(w), c.bar());
    return out;
}

HeckeElt HeckeAlgebra::sgn(const HeckeElt& h) const {
    HeckeElt out;
    for (const auto& [w, c] : h) {
        LaurentPoly t = c.bar();
        if (W_->length(w) % 2) t = -t;
        hecke_add_scaled(out, basis(w), t);
    }
    return out;
}

HeckeElt HeckeAlgebra::flat(const HeckeElt& h) const {
    HeckeElt out;
    for (const auto& [w, c] : h) hecke_add_scaled(out, basis(W_->inverse(w)), c);
    return out;
}

LaurentPoly HeckeAlgebra::r_poly(int y, int w) const {
    const HeckeElt& b = bar_basis(w);
    auto it = b.find(y);
    return it == b.end() ? LaurentPoly() : it->second;
}

HeckeElt HeckeAlgebra::x_parabolic(const std::vector<int>& J) const {
    int wJ = W_->longest_in(J);
    HeckeElt out;
    for (int w : W_->subgroup(J))
        hecke_add_scaled(out, basis(w), qw_[wJ] * qw_inv_[w]);
    return out;
}

LaurentPoly HeckeAlgebra::poincare(const std::vector<int>& J) const {
    int wJ = W_->longest_in(J);
    LaurentPoly out;
    for (int w : W_->subgroup(J)) out += qw_[wJ] * qw_inv_[w] * qw_inv_[w];
    return out;
}

HeckeElt HeckeAlgebra::dual_act_gen(int s, const HeckeElt& f) const {
    HeckeElt out;
    for (const auto& [w, c] : f) {
        int sw = W_->lmul(s, w);
        if (W_->length(sw) > W_->length(w)) {
            hecke_add_scaled(out, basis(sw), c);
        } else {
            hecke_add_scaled(out, basis(sw), c);
            LaurentPoly t = q_gen(s);
            hecke_add_scaled(out, basis(w), c * (t.bar() - t));
        }
    }
    return out;
}

HeckeElt HeckeAlgebra::dual_act(const HeckeElt& a, const HeckeElt& f) const {
    HeckeElt out;
    for (const auto& [w, c] : a) {
        HeckeElt t = hecke_scaled(f, c);
        const auto& wd = W_->word(w);
        for (auto it = wd.rbegin(); it != wd.rend(); ++it) t = dual_act_gen(*it, t);
        hecke_add(out, t);
    }
    return out;
}

HeckeElt HeckeAlgebra::dual_bar(const HeckeElt& f) const {
    // (bar f)(H_y) = bar(f(bar H_y)) = bar(sum_z r_{z,y} f_z)
    HeckeElt out;
    for (int y = 0; y < W_->size(); ++y) {
        LaurentPoly v;
        for (const auto& [z, fz] : f) {
            LaurentPoly r = r_poly(z, y);
            if (!r.is_zero()) v += r * fz;
        }
        if (!v.is_zero()) out[y] = v.bar();
    }
    return out;
}

HeckeElt HeckeAlgebra::d_iso(const HeckeElt& h) const {
    return dual_act(h, basis(W_->longest()));
}

LaurentPoly HeckeAlgebra::form(const HeckeElt& x, const HeckeElt& y) const {
    HeckeElt dy = d_iso(y);
    LaurentPoly out;
    for (const auto& [w, c] : x) {
        auto it = dy.find(w);
        if (it != dy.end()) out += c * it->second;
    }
    return out;
}

} // namespace qsymb

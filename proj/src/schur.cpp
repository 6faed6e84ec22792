#include "qsymb/schur.hpp"

#include <algorithm>
#include <sstream>

namespace qsymb {

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
    QS_CHECK(!parts.empty(), "composition needs at least one part");
    for (int x : parts) QS_CHECK(x >= 0, "composition parts must be nonnegative");
}

int Composition::d() const {
    int n = 0;
    for (int x : parts) n += x;
    return n;
}

std::vector<int> Composition::gens() const {
    std::vector<char> boundary((size_t)d() + 1, 0);
    int acc = 0;
    for (size_t k = 0; k + 1 < parts.size(); ++k) {
        acc += parts[k];
        boundary[(size_t)acc] = 1;
    }
    std::vector<int> J;
    for (int s = 0; s < d(); ++s)
        if (!boundary[(size_t)s]) J.push_back(s);
    return J;
}

std::string Composition::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t k = 0; k < parts.size(); ++k) {
        if (k) os << ',';
        os << parts[k];
    }
    os << ')';
    return os.str();
}

static void gen_compositions(int d, int len, std::vector<int>& cur,
                             std::vector<Composition>& out) {
    if (len == 1) {
        cur.push_back(d);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 0; first <= d; ++first) {
        cur.push_back(first);
        gen_compositions(d - first, len - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Composition> compositions(int r, int d) {
    QS_CHECK(r >= 0 && d >= 0, "compositions need r, d >= 0");
    std::vector<Composition> out;
    std::vector<int> cur;
    gen_compositions(d, r + 1, cur, out);
    return out;
}

void telt_add_scaled(TElt& acc, const TElt& x, const LaurentPoly& c) {
    if (c.is_zero()) return;
    for (const auto& [lam, coords] : x)
        for (const auto& [w, v] : coords) {
            auto& slot = acc[lam][w];
            slot += v * c;
            if (slot.is_zero()) acc[lam].erase(w);
        }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second.empty() ? acc.erase(it) : std::next(it);
}

void selt_add_scaled(SElt& acc, const SElt& x, const LaurentPoly& c) {
    if (c.is_zero()) return;
    for (const auto& [key, v] : x) {
        auto& slot = acc[key];
        slot += v * c;
        if (slot.is_zero()) acc.erase(key);
    }
}

SchurAlgebra::SchurAlgebra(const KLContext& kl, std::vector<Composition> pi)
    : kl_(kl), H_(kl.algebra()), W_(kl.group()), pi_(std::move(pi)) {
    build();
}

SchurAlgebra::SchurAlgebra(const KLContext& kl, int r)
    : SchurAlgebra(kl, compositions(r, kl.group().d())) {}

void SchurAlgebra::build() {
    QS_CHECK(!pi_.empty(), "empty index set");
    data_.resize(pi_.size());
    for (size_t k = 0; k < pi_.size(); ++k) {
        QS_CHECK(pi_[k].d() == W_.d(), "composition size must match the rank");
        QS_CHECK(index_.emplace(pi_[k].parts, (int)k).second,
                 "duplicate composition");
        CompData& cd = data_[k];
        cd.J = pi_[k].gens();
        cd.wJ = W_.longest_in(cd.J);
        cd.poincare = H_.poincare(cd.J);
        cd.reps = W_.min_coset_reps(cd.J);
        cd.is_rep.assign((size_t)W_.size(), 0);
        for (int w : cd.reps) cd.is_rep[(size_t)w] = 1;
        cd.members = W_.subgroup(cd.J);
        for (int w : cd.reps) {
            tindex_[{(int)k, w}] = (int)tbasis_.size();
            tbasis_.emplace_back((int)k, w);
        }
    }
}

int SchurAlgebra::comp_index(const Composition& c) const {
    auto it = index_.find(c.parts);
    QS_CHECK(it != index_.end(), "composition not in the index set");
    return it->second;
}

int SchurAlgebra::t_index(int lam, int w) const {
    auto it = tindex_.find({lam, w});
    QS_CHECK(it != tindex_.end(), "not a module basis pair");
    return it->second;
}

std::vector<LaurentPoly> SchurAlgebra::dense(const TElt& t) const {
    std::vector<LaurentPoly> v((size_t)dim_t());
    for (const auto& [lam, coords] : t)
        for (const auto& [w, c] : coords) v[(size_t)t_index(lam, w)] = c;
    return v;
}

TElt SchurAlgebra::from_dense(const std::vector<LaurentPoly>& v) const {
    QS_CHECK((int)v.size() == dim_t(), "wrong coordinate length");
    TElt t;
    for (size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) t[tbasis_[k].first][tbasis_[k].second] = v[k];
    return t;
}

const WeylGroupB::DoubleCoset& SchurAlgebra::coset_datum(int lam, int mu, int x) const {
    auto key = std::make_pair(lam, mu);
    auto it = dcosets_.find(key);
    if (it == dcosets_.end())
        it = dcosets_.emplace(key, W_.double_cosets(data_[lam].J, data_[mu].J)).first;
    for (const auto& dc : it->second)
        if (dc.x == x) return dc;
    QS_CHECK(false, "not a minimal double coset representative");
    return it->second.front();
}

std::vector<int> SchurAlgebra::double_reps(int lam, int mu) const {
    coset_datum(lam, mu, 0); // fill the cache; e is always a representative
    std::vector<int> out;
    for (const auto& dc : dcosets_.at({lam, mu})) out.push_back(dc.x);
    return out;
}

const std::vector<XiKey>& SchurAlgebra::xi_keys() const {
    if (keys_.empty())
        for (size_t lam = 0; lam < pi_.size(); ++lam)
            for (size_t mu = 0; mu < pi_.size(); ++mu)
                for (int x : double_reps((int)lam, (int)mu))
                    keys_.push_back(XiKey{(int)lam, x, (int)mu});
    return keys_;
}

const HeckeElt& SchurAlgebra::eta(int lam, int x, int mu) const {
    auto key = std::make_tuple(lam, x, mu);
    auto it = eta_.find(key);
    if (it != eta_.end()) return it->second;

    const auto& dc = coset_datum(lam, mu, x);
    int top = W_.mul(W_.mul(data_[lam].wJ, x), dc.xprime);
    const LaurentPoly& qtop = H_.q_elt(top);
    HeckeElt out;
    for (int u : data_[lam].members) {
        int ux = W_.mul(u, x);
        for (int v : data_[mu].members) {
            if (!W_.is_min_rep(v, dc.Jx)) continue;
            int w = W_.mul(ux, v);
            QS_CHECK(W_.length(w) ==
                         W_.length(u) + W_.length(x) + W_.length(v),
                     "double coset factorization is not length-additive");
            out[w] = qtop * H_.q_elt_inv(w);
        }
    }
    return eta_.emplace(key, std::move(out)).first->second;
}

TElt SchurAlgebra::telt(int lam, const HeckeElt& h) const {
    auto coords = kl_.parabolic_coords(data_[lam].J, h);
    for (auto it = coords.begin(); it != coords.end();)
        it = it->second.is_zero() ? coords.erase(it) : std::next(it);
    TElt t;
    if (!coords.empty()) t[lam] = std::move(coords);
    return t;
}

HeckeElt SchurAlgebra::component(const TElt& t, int lam) const {
    HeckeElt out;
    auto it = t.find(lam);
    if (it == t.end()) return out;
    for (const auto& [w, c] : it->second) {
        HeckeElt term = H_.x_parabolic(data_[lam].J);
        for (int s : W_.word(w)) term = H_.rmul_gen(term, s);
        hecke_add_scaled(out, term, c);
    }
    return out;
}

TElt SchurAlgebra::x_elt(int lam) const {
    return TElt{{lam, {{0, LaurentPoly(1)}}}};
}

TElt SchurAlgebra::c_elt(int lam, int w) const {
    return telt(lam, kl_.parabolic_c(data_[lam].J, w));
}

TElt SchurAlgebra::d_elt(int lam, int w) const {
    QS_CHECK(data_[lam].is_rep[(size_t)w], "index is not a minimal representative");
    return telt(lam, kl_.parabolic_d(data_[lam].J, w));
}

TElt SchurAlgebra::act(const SElt& s, const TElt& t) const {
    std::map<int, HeckeElt> image; // target component -> raw element
    for (const auto& [key, c] : s) {
        auto comp = t.find(key.mu);
        if (comp == t.end()) continue;
        const HeckeElt& base = eta(key.lam, key.x, key.mu);
        for (const auto& [w, a] : comp->second) {
            HeckeElt term = base;
            for (int gen : W_.word(w)) term = H_.rmul_gen(term, gen);
            hecke_add_scaled(image[key.lam], term, c * a);
        }
    }
    TElt out;
    for (const auto& [lam, h] : image) telt_add_scaled(out, telt(lam, h), LaurentPoly(1));
    return out;
}

TElt SchurAlgebra::act_hecke(const TElt& t, const HeckeElt& h) const {
    TElt out;
    for (const auto& [lam, coords] : t)
        telt_add_scaled(out, telt(lam, H_.mul(component(t, lam), h)), LaurentPoly(1));
    return out;
}

SElt SchurAlgebra::expand_hom(int lam, int mu, const HeckeElt& image) const {
    auto coords = kl_.parabolic_coords(data_[lam].J, image);
    for (auto it = coords.begin(); it != coords.end();)
        it = it->second.is_zero() ? coords.erase(it) : std::next(it);

    SElt out;
    std::map<int, LaurentPoly> rec;
    for (int x : double_reps(lam, mu)) {
        auto cx = coords.find(x);
        if (cx == coords.end()) continue;
        const auto& dc = coset_datum(lam, mu, x);
        LaurentPoly coeff = cx->second * H_.q_elt_inv(dc.xprime);
        QS_CHECK(coeff.integral(), "structure constant is not integral");
        out[XiKey{lam, x, mu}] = coeff;
        for (int y : data_[mu].members) {
            int wy = W_.mul(x, y);
            if (!data_[lam].is_rep[(size_t)wy]) continue;
            auto& slot = rec[wy];
            slot += H_.q_elt_inv(y) * cx->second;
            if (slot.is_zero()) rec.erase(wy);
        }
    }
    QS_CHECK(rec == coords, "image is not a module homomorphism value");
    return out;
}

SElt SchurAlgebra::mul(const SElt& a, const SElt& b) const {
    SElt out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            if (ka.mu != kb.lam) continue;
            auto pk = std::make_pair(ka, kb);
            auto it = prod_.find(pk);
            if (it == prod_.end()) {
                TElt im = act(SElt{{ka, LaurentPoly(1)}},
                              telt(kb.lam, eta(kb.lam, kb.x, kb.mu)));
                it = prod_.emplace(pk, expand_hom(ka.lam, kb.mu,
                                                  component(im, ka.lam)))
                         .first;
            }
            selt_add_scaled(out, it->second, ca * cb);
        }
    return out;
}

SElt SchurAlgebra::unit() const {
    SElt out;
    for (size_t lam = 0; lam < pi_.size(); ++lam)
        out[XiKey{(int)lam, 0, (int)lam}] = LaurentPoly(1);
    return out;
}

SElt SchurAlgebra::flat(const SElt& s) const {
    SElt out;
    for (const auto& [key, c] : s)
        out[XiKey{key.mu, W_.inverse(key.x), key.lam}] = c;
    return out;
}

TElt SchurAlgebra::bar_t(const TElt& t) const {
    TElt out;
    for (const auto& [lam, coords] : t)
        telt_add_scaled(out, telt(lam, H_.bar(component(t, lam))), LaurentPoly(1));
    return out;
}

SElt SchurAlgebra::bar_s(const SElt& s) const {
    SElt out;
    for (size_t mu = 0; mu < pi_.size(); ++mu) {
        TElt im = act(s, x_elt((int)mu)); // x_mu is bar-invariant
        for (const auto& [lam, coords] : im)
            selt_add_scaled(out,
                            expand_hom(lam, (int)mu, H_.bar(component(im, lam))),
                            LaurentPoly(1));
    }
    return out;
}

LaurentPoly SchurAlgebra::form(const TElt& a, const TElt& b) const {
    LaurentPoly out;
    for (const auto& [lam, coords] : a) {
        if (b.find(lam) == b.end()) continue;
        out += kl_.form_J(data_[lam].J, component(a, lam), component(b, lam));
    }
    return out;
}

const std::map<int, LaurentPoly>& SchurAlgebra::basis_coords(int lam, int w,
                                                             KLKind k) const {
    auto& cache = k == KLKind::C ? ccoord_ : dcoord_;
    auto key = std::make_pair(lam, w);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const auto& J = data_[lam].J;
        HeckeElt h = k == KLKind::C ? kl_.parabolic_c(J, w) : kl_.parabolic_d(J, w);
        auto coords = kl_.parabolic_coords(J, h);
        for (auto c = coords.begin(); c != coords.end();)
            c = c->second.is_zero() ? coords.erase(c) : std::next(c);
        it = cache.emplace(key, std::move(coords)).first;
    }
    return it->second;
}

std::map<int, LaurentPoly> SchurAlgebra::c_coords(int lam, const HeckeElt& h) const {
    auto work = kl_.parabolic_coords(data_[lam].J, h);
    for (auto it = work.begin(); it != work.end();)
        it = it->second.is_zero() ? work.erase(it) : std::next(it);
    std::map<int, LaurentPoly> out;
    while (!work.empty()) {
        auto top = std::prev(work.end());
        int w = top->first;
        LaurentPoly c = top->second;
        out[w] = c;
        for (const auto& [v, bc] : basis_coords(lam, w, KLKind::C)) {
            auto& slot = work[v];
            slot -= c * bc;
            if (slot.is_zero()) work.erase(v);
        }
        QS_CHECK(work.find(w) == work.end(), "triangular reduction stalled");
    }
    return out;
}

std::map<int, LaurentPoly> SchurAlgebra::d_coords(int lam, const HeckeElt& h) const {
    auto work = kl_.parabolic_coords(data_[lam].J, h);
    for (auto it = work.begin(); it != work.end();)
        it = it->second.is_zero() ? work.erase(it) : std::next(it);
    std::map<int, LaurentPoly> out;
    while (!work.empty()) {
        auto top = std::prev(work.end());
        int w = top->first;
        LaurentPoly c = top->second;
        out[w] = c;
        for (const auto& [v, bc] : basis_coords(lam, w, KLKind::D)) {
            auto& slot = work[v];
            slot -= c * bc;
            if (slot.is_zero()) work.erase(v);
        }
        QS_CHECK(work.find(w) == work.end(), "triangular reduction stalled");
    }
    return out;
}

SchurAlgebra::SchurCellModule SchurAlgebra::cell_module(int cell, KLKind kind) const {
    const auto& cd = kl_.cells();
    QS_CHECK(0 <= cell && cell < (int)cd.cells.size(), "no such cell");

    SchurCellModule m;
    m.kind = kind;
    for (size_t lam = 0; lam < pi_.size(); ++lam)
        for (int w : data_[lam].reps) {
            int probe = kind == KLKind::C ? W_.mul(data_[lam].wJ, w) : w;
            if (cd.cell_of[(size_t)probe] == cell) m.elems.emplace_back((int)lam, w);
        }

    std::map<std::pair<int, int>, int> pos;
    for (size_t i = 0; i < m.elems.size(); ++i) pos[m.elems[i]] = (int)i;

    size_t n = m.elems.size();
    for (const XiKey& key : xi_keys()) {
        std::vector<std::vector<LaurentPoly>> mat(n, std::vector<LaurentPoly>(n));
        for (size_t j = 0; j < n; ++j) {
            auto [mu, w] = m.elems[j];
            if (mu != key.mu) continue;
            TElt im = act(SElt{{key, LaurentPoly(1)}},
                          kind == KLKind::C ? c_elt(mu, w) : d_elt(mu, w));
            for (const auto& [nu, comps] : im) {
                auto coords = kind == KLKind::C ? c_coords(nu, component(im, nu))
                                                : d_coords(nu, component(im, nu));
                for (const auto& [v, c] : coords) {
                    int probe = kind == KLKind::C ? W_.mul(data_[nu].wJ, v) : v;
                    int target = cd.cell_of[(size_t)probe];
                    QS_CHECK(cd.cell_leq[(size_t)target][(size_t)cell],
                             "cell module action escaped the ideal");
                    if (target == cell) mat[(size_t)pos.at({nu, v})][j] = c;
                }
            }
        }
        m.action.push_back(std::move(mat));
    }
    return m;
}

nlohmann::json SchurAlgebra::structure_constants_json() const {
    nlohmann::json j;
    j["compositions"] = nlohmann::json::array();
    for (const auto& c : pi_) j["compositions"].push_back(c.parts);
    j["keys"] = nlohmann::json::array();
    for (const XiKey& k : xi_keys())
        j["keys"].push_back({k.lam, W_.perm(k.x).str(), k.mu});
    j["products"] = nlohmann::json::array();
    const auto& keys = xi_keys();
    for (size_t a = 0; a < keys.size(); ++a)
        for (size_t b = 0; b < keys.size(); ++b) {
            if (keys[a].mu != keys[b].lam) continue;
            SElt p = mul(SElt{{keys[a], LaurentPoly(1)}},
                         SElt{{keys[b], LaurentPoly(1)}});
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [key, c] : p) {
                size_t k = std::find(keys.begin(), keys.end(), key) - keys.begin();
                terms.push_back({k, c.to_json()});
            }
            j["products"].push_back({a, b, terms});
        }
    return j;
}

} // namespace qsymb

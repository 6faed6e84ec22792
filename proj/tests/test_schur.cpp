#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "qsymb/schur.hpp"

using namespace qsymb;

namespace {

LaurentPoly P(int k = 1) { return LaurentPoly::var_p(k); }
LaurentPoly Q(int k = 1) { return LaurentPoly::var_q(k); }

struct Setup {
    WeylGroupB W;
    HeckeAlgebra H;
    KLContext kl;
    SchurAlgebra S;
    explicit Setup(int d) : W(d), H(W), kl(H, std::string()), S(kl, 1) {}
};

SElt single(const XiKey& k) { return SElt{{k, LaurentPoly(1)}}; }

bool telt_eq(const TElt& a, const TElt& b) { return a == b; }

TElt random_telt(const SchurAlgebra& S, std::mt19937_64& rng, int terms = 3) {
    std::uniform_int_distribution<int> pick(0, S.dim_t() - 1), ex(-2, 2), co(-3, 3);
    TElt t;
    for (int i = 0; i < terms; ++i) {
        auto [lam, w] = S.t_basis()[pick(rng)];
        TElt unit{{lam, {{w, LaurentPoly(1)}}}};
        telt_add_scaled(t, unit, LaurentPoly::monomial(co(rng), ex(rng), ex(rng)));
    }
    return t;
}

int dual_rep(const SchurAlgebra& S, int lam, int w) {
    const WeylGroupB& W = S.group();
    return W.mul(W.mul(S.w_lambda(lam), w), W.longest());
}

LaurentPoly trace(const std::vector<std::vector<LaurentPoly>>& m) {
    LaurentPoly t;
    for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

int key_pos(const SchurAlgebra& S, const XiKey& k) {
    const auto& keys = S.xi_keys();
    auto it = std::find(keys.begin(), keys.end(), k);
    REQUIRE(it != keys.end());
    return (int)(it - keys.begin());
}

} // namespace

TEST_CASE("compositions and their generator sets") {
    auto c11 = compositions(1, 1);
    REQUIRE(c11.size() == 2);
    CHECK(c11[0].parts == std::vector<int>{0, 1});
    CHECK(c11[1].parts == std::vector<int>{1, 0});

    auto c12 = compositions(1, 2);
    REQUIRE(c12.size() == 3);
    CHECK(c12[0].parts == std::vector<int>{0, 2});
    CHECK(c12[1].parts == std::vector<int>{1, 1});
    CHECK(c12[2].parts == std::vector<int>{2, 0});

    CHECK(compositions(2, 1).size() == 3);
    CHECK(compositions(2, 3).size() == 10); // binom(5, 2)

    CHECK(Composition({0, 1}).gens() == std::vector<int>{});
    CHECK(Composition({1, 0}).gens() == std::vector<int>{0});
    CHECK(Composition({0, 2}).gens() == std::vector<int>{1});
    CHECK(Composition({1, 1}).gens() == std::vector<int>{0});
    CHECK(Composition({2, 0}).gens() == std::vector<int>{0, 1});
    CHECK(Composition({2, 0, 1}).gens() == std::vector<int>{0, 1});
    CHECK(Composition({0, 2, 1}).gens() == std::vector<int>{1});
    CHECK(Composition({1, 1, 1}).d() == 3);
    CHECK(Composition({2, 0, 1}).r() == 2);
    CHECK(Composition({2, 0, 1}).str() == "(2,0,1)");
    CHECK_THROWS(Composition({1, -1}));
    CHECK_THROWS(Composition({}));

    // every composition is ordered and the dimension count matches the
    // sum of minimal coset representative counts
    Setup s(2);
    CHECK(std::is_sorted(s.S.pi().begin(), s.S.pi().end()));
    int dim = 0;
    for (size_t k = 0; k < s.S.pi().size(); ++k) dim += (int)s.S.min_reps((int)k).size();
    CHECK(dim == s.S.dim_t());
    CHECK(s.S.dim_t() == 9); // 1 + 4 + 4
    CHECK(s.S.comp_index(Composition({1, 1})) == 1);
    CHECK_THROWS(s.S.comp_index(Composition({1, 0})));
    CHECK_THROWS(SchurAlgebra(s.kl, {Composition({1, 0})}));
}

TEST_CASE("cyclic generator images") {
    Setup s(1);
    const auto& S = s.S;
    int s0 = s.W.rmul(0, 0);

    // the homomorphism x_{(1,0)} H -> x_{(0,1)} H = H sends x_{(1,0)} to itself
    HeckeElt expect;
    hecke_add_scaled(expect, HeckeAlgebra::basis(0), P());
    hecke_add_scaled(expect, HeckeAlgebra::basis(s0), LaurentPoly(1));
    CHECK(S.eta(0, 0, 1) == expect);
    CHECK(S.eta(0, 0, 1) == s.H.x_parabolic({0}));

    // eta at x = e, lam = mu is the parabolic symmetrizer itself
    for (int lam = 0; lam < 2; ++lam)
        CHECK(S.eta(lam, 0, lam) == s.H.x_parabolic(S.gens(lam)));

    CHECK_THROWS(S.eta(0, s0, 1)); // s0 is not the minimal representative

    // expanding eta back through the hom recovers the basis element
    for (const XiKey& k : S.xi_keys()) {
        SElt got = S.expand_hom(k.lam, k.mu, S.eta(k.lam, k.x, k.mu));
        CHECK(got == single(k));
    }
}

TEST_CASE("xi basis identities in rank two") {
    Setup s(2);
    const auto& S = s.S;
    const auto& H = s.H;
    const auto& W = s.W;

    CHECK(S.xi_keys().size() == 15);

    for (const XiKey& k : S.xi_keys()) {
        const HeckeElt& eta = S.eta(k.lam, k.x, k.mu);

        // right multiplication by x_mu only rescales by the Poincare polynomial
        CHECK(H.mul(eta, H.x_parabolic(S.gens(k.mu))) ==
              hecke_scaled(eta, S.p_poly(k.mu)));

        // the Hecke anti-automorphism pairs eta with its reversed key
        CHECK(H.flat(eta) == S.eta(k.mu, W.inverse(k.x), k.lam));

        // expansion of the identity map composed with eta
        CHECK(S.expand_hom(k.lam, k.mu, eta) == single(k));
    }

    // eta at x = e is the product of the two symmetrizers divided by the
    // Poincare polynomial of the intersection
    for (int lam = 0; lam < 3; ++lam)
        for (int mu = 0; mu < 3; ++mu) {
            std::vector<int> ji;
            std::set_intersection(S.gens(lam).begin(), S.gens(lam).end(),
                                  S.gens(mu).begin(), S.gens(mu).end(),
                                  std::back_inserter(ji));
            CHECK(hecke_scaled(S.eta(lam, 0, mu), H.poincare(ji)) ==
                  H.mul(H.x_parabolic(S.gens(lam)), H.x_parabolic(S.gens(mu))));
        }
}

TEST_CASE("centralizer algebra structure") {
    Setup s(2);
    const auto& S = s.S;
    const auto& keys = S.xi_keys();

    // unit and identity action
    SElt one = S.unit();
    CHECK(one.size() == 3);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 4; ++i) {
        TElt t = random_telt(S, rng);
        CHECK(telt_eq(S.act(one, t), t));
    }
    for (const XiKey& k : keys) {
        CHECK(S.mul(one, single(k)) == single(k));
        CHECK(S.mul(single(k), one) == single(k));
    }

    // the diagonal idempotents cut out the components
    for (int lam = 0; lam < 3; ++lam) {
        XiKey id{lam, 0, lam};
        for (auto [mu, w] : S.t_basis()) {
            TElt t{{mu, {{w, LaurentPoly(1)}}}};
            TElt got = S.act(single(id), t);
            if (mu == lam)
                CHECK(telt_eq(got, t));
            else
                CHECK(got.empty());
        }
    }

    // full associativity over the composable triples
    int triples = 0;
    for (const XiKey& a : keys)
        for (const XiKey& b : keys) {
            if (a.mu != b.lam) continue;
            SElt ab = S.mul(single(a), single(b));
            for (const XiKey& c : keys) {
                if (b.mu != c.lam) continue;
                ++triples;
                CHECK(S.mul(ab, single(c)) ==
                      S.mul(single(a), S.mul(single(b), single(c))));
            }
        }
    CHECK(triples == 441);

    // the action is associative through products
    for (const XiKey& a : keys)
        for (const XiKey& b : keys) {
            if (a.mu != b.lam) continue;
            TElt t = S.x_elt(b.mu);
            CHECK(telt_eq(S.act(S.mul(single(a), single(b)), t),
                          S.act(single(a), S.act(single(b), t))));
        }

    // products of incomposable keys vanish
    XiKey k1{0, 0, 1}, k2{0, 0, 2};
    CHECK(S.mul(single(k1), single(k2)).empty());
}

TEST_CASE("bimodule commutation") {
    Setup s(2);
    const auto& S = s.S;
    std::mt19937_64 rng(57);
    std::uniform_int_distribution<int> pw(0, s.W.size() - 1);

    for (const XiKey& k : S.xi_keys())
        for (int i = 0; i < 2; ++i) {
            HeckeElt h = HeckeAlgebra::basis(pw(rng));
            TElt t = random_telt(S, rng);
            CHECK(telt_eq(S.act(single(k), S.act_hecke(t, h)),
                          S.act_hecke(S.act(single(k), t), h)));
        }

    // right action is a module structure
    for (int i = 0; i < 6; ++i) {
        HeckeElt h1 = HeckeAlgebra::basis(pw(rng)), h2 = HeckeAlgebra::basis(pw(rng));
        TElt t = random_telt(S, rng);
        CHECK(telt_eq(S.act_hecke(t, s.H.mul(h1, h2)),
                      S.act_hecke(S.act_hecke(t, h1), h2)));
    }

    // dense coordinates round trip
    for (int i = 0; i < 4; ++i) {
        TElt t = random_telt(S, rng);
        CHECK(telt_eq(S.from_dense(S.dense(t)), t));
    }
}

TEST_CASE("flat and bar on the centralizer") {
    Setup s(2);
    const auto& S = s.S;
    const auto& keys = S.xi_keys();

    CHECK(S.flat(S.unit()) == S.unit());
    for (const XiKey& k : keys) {
        SElt f = S.flat(single(k));
        CHECK(f.size() == 1);
        CHECK(f.begin()->first.lam == k.mu);
        CHECK(f.begin()->first.mu == k.lam);
        CHECK(S.flat(f) == single(k));
    }
    // anti-automorphism across all composable products
    for (const XiKey& a : keys)
        for (const XiKey& b : keys) {
            if (a.mu != b.lam) continue;
            CHECK(S.flat(S.mul(single(a), single(b))) ==
                  S.mul(S.flat(single(b)), S.flat(single(a))));
        }

    // bar fixes the idempotent-adjacent elements and is an involution
    for (const XiKey& k : keys) {
        SElt barred = S.bar_s(single(k));
        if (k.x == 0) CHECK(barred == single(k));
        CHECK(S.bar_s(barred) == single(k));
    }
    CHECK(S.bar_s(S.unit()) == S.unit());

    // ring homomorphism on a sample of products
    int done = 0;
    for (const XiKey& a : keys)
        for (const XiKey& b : keys) {
            if (a.mu != b.lam || ++done % 5 != 0) continue;
            CHECK(S.bar_s(S.mul(single(a), single(b))) ==
                  S.mul(S.bar_s(single(a)), S.bar_s(single(b))));
        }

    // bar on the module: involution, semilinear over the algebra
    std::mt19937_64 rng(99);
    for (int i = 0; i < 4; ++i) {
        TElt t = random_telt(S, rng);
        CHECK(telt_eq(S.bar_t(S.bar_t(t)), t));
    }
    for (const XiKey& k : keys) {
        TElt t = S.x_elt(k.mu);
        CHECK(telt_eq(S.bar_t(S.act(single(k), t)),
                      S.act(S.bar_s(single(k)), S.bar_t(t))));
    }
}

TEST_CASE("the bilinear form on the module") {
    for (int d = 1; d <= 2; ++d) {
        Setup s(d);
        const auto& S = s.S;

        // KL and dual KL elements pair to the identity matrix under the
        // representative bijection w -> w_lam w w_0
        for (auto [lam, y] : S.t_basis())
            for (auto [mu, w] : S.t_basis()) {
                LaurentPoly got = S.form(S.c_elt(lam, y), S.d_elt(mu, w));
                int expect = (lam == mu && y == dual_rep(S, lam, w)) ? 1 : 0;
                CHECK(got == LaurentPoly(expect));
            }

        // adjunction against the flipped key
        std::mt19937_64 rng(7 + d);
        for (const XiKey& k : S.xi_keys())
            for (int i = 0; i < 2; ++i) {
                TElt a = random_telt(S, rng), b = random_telt(S, rng);
                CHECK(S.form(a, S.act(single(k), b)) ==
                      S.form(S.act(S.flat(single(k)), a), b));
            }
    }
}

TEST_CASE("cell modules over the centralizer") {
    Setup s(1);
    const auto& S = s.S;
    const auto& cd = s.kl.cells();
    int s0 = s.W.rmul(0, 0);
    REQUIRE(cd.cells.size() == 2);
    REQUIRE(cd.cell_of[s0] == 1);

    auto m1 = S.cell_module(1, KLKind::C);
    CHECK(m1.elems == std::vector<std::pair<int, int>>{{0, s0}, {1, 0}});
    auto m0 = S.cell_module(0, KLKind::C);
    CHECK(m0.elems == std::vector<std::pair<int, int>>{{0, 0}});

    auto d0 = S.cell_module(0, KLKind::D);
    CHECK(d0.elems == std::vector<std::pair<int, int>>{{0, 0}, {1, 0}});
    auto d1 = S.cell_module(1, KLKind::D);
    CHECK(d1.elems == std::vector<std::pair<int, int>>{{0, s0}});

    // identity acts as the identity matrix
    size_t n = m1.elems.size();
    std::vector<std::vector<LaurentPoly>> id(n, std::vector<LaurentPoly>(n));
    for (size_t i = 0; i < n; ++i) id[i][i] = LaurentPoly(1);
    std::vector<std::vector<LaurentPoly>> got(n, std::vector<LaurentPoly>(n));
    for (size_t k = 0; k < S.xi_keys().size(); ++k) {
        const XiKey& key = S.xi_keys()[k];
        if (key.x != 0 || key.lam != key.mu) continue;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) got[i][j] += m1.action[k][i][j];
    }
    CHECK(got == id);
}

TEST_CASE("cell module characters match across the duality") {
    for (int d = 1; d <= 2; ++d) {
        Setup s(d);
        const auto& S = s.S;
        const auto& cd = s.kl.cells();
        int w0 = s.W.longest();

        int total = 0;
        for (int cell = 0; cell < (int)cd.cells.size(); ++cell) {
            auto mc = S.cell_module(cell, KLKind::C);
            total += (int)mc.elems.size();

            int cellw0 = cd.cell_of[s.W.mul(cd.cells[cell][0], w0)];
            auto md = S.cell_module(cellw0, KLKind::D);

            // the representative bijection carries the one basis to the other
            std::vector<std::pair<int, int>> mapped;
            for (auto [lam, w] : mc.elems) mapped.emplace_back(lam, dual_rep(S, lam, w));
            std::sort(mapped.begin(), mapped.end());
            CHECK(mapped == md.elems);

            for (size_t k = 0; k < S.xi_keys().size(); ++k) {
                const XiKey& key = S.xi_keys()[k];
                XiKey fk{key.mu, s.W.inverse(key.x), key.lam};
                CHECK(trace(mc.action[k]) == trace(md.action[key_pos(S, fk)]));
            }
        }
        CHECK(total == S.dim_t());
    }
}

TEST_CASE("KL coordinates inside a component") {
    Setup s(2);
    const auto& S = s.S;
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> ex(-2, 2), co(-3, 3);

    for (int lam = 0; lam < 3; ++lam) {
        const auto& reps = S.min_reps(lam);
        std::uniform_int_distribution<int> pick(0, (int)reps.size() - 1);
        for (int trial = 0; trial < 2; ++trial) {
            std::map<int, LaurentPoly> want;
            HeckeElt hc, hd;
            for (int i = 0; i < 3; ++i) {
                int w = reps[pick(rng)];
                LaurentPoly c = LaurentPoly::monomial(co(rng), ex(rng), ex(rng));
                auto& slot = want[w];
                slot += c;
                if (slot.is_zero()) want.erase(w);
                hecke_add_scaled(hc, s.kl.parabolic_c(S.gens(lam), w), c);
                hecke_add_scaled(hd, s.kl.parabolic_d(S.gens(lam), w), c);
            }
            CHECK(S.c_coords(lam, hc) == want);
            CHECK(S.d_coords(lam, hd) == want);
        }
    }

    CHECK_THROWS(S.d_elt(2, s.W.rmul(0, 0))); // not a minimal representative
    CHECK_THROWS(S.telt(2, HeckeAlgebra::basis(s.W.rmul(0, 0))));
}

TEST_CASE("structure constant export") {
    Setup s(1);
    auto j1 = s.S.structure_constants_json();
    auto j2 = s.S.structure_constants_json();
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["keys"].size() == 5);
    CHECK(j1["compositions"].size() == 2);
    CHECK(j1["products"].size() == 13);
}

#include "doctest.h"

#include "qsymb/crystal.hpp"
#include "qsymb/qcomb.hpp"

using namespace qsymb;

namespace {

RationalFn Q(int k = 1) { return RationalFn(LaurentPoly::var_q(k)); }
RationalFn P(int k = 1) { return RationalFn(LaurentPoly::var_p(k)); }

struct Setup {
    WeylGroupB W;
    HeckeAlgebra H;
    KLContext kl;
    SchurAlgebra S;
    TensorBimodule T;
    Setup(int r, int d) : W(d), H(W), kl(H, std::string()), S(kl, r), T(S) {}
};

void check_clean(const CheckReport& rep) {
    for (const auto& f : rep.failures) {
        CAPTURE(f);
        CHECK(false);
    }
    CHECK(rep.ok);
}

} // namespace

TEST_CASE("one-box module at rank one") {
    Setup s(1, 1);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((1,0);(0))"));
    CHECK(M.module.dim == 2);
    CHECK(M.module.r == 1);
    M.module.check();

    // the highest weight line is an exact coordinate line
    for (int v = 0; v < 2; ++v)
        CHECK(M.module.emat[0][v][M.hw].is_zero());

    check_clean(check_global_basis(M));

    // psij fixes f_1 entrywise on this module
    CHECK(mat_bar(M.module.fmat[0]) == M.module.fmat[0]);

    // duality of the two bases under the first form
    CHECK(mat_mul(M.form1, M.up) == mat_identity(2));
}

TEST_CASE("plus-box module at rank one is one-dimensional") {
    Setup s(1, 1);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((0,0);(1))"));
    CHECK(M.module.dim == 1);
    CHECK(M.hw == 0);
    check_clean(check_global_basis(M));
}

TEST_CASE("missing constituent throws") {
    Setup s(1, 1);
    CHECK_THROWS_AS(build_irreducible(s.T, Bipartition::parse("((2,0);(0))")), error);
}

TEST_CASE("two-box string module") {
    Setup s(1, 2);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((2,0);(0))"));
    CHECK(M.module.dim == 3);
    check_clean(check_global_basis(M));

    // the lower global basis is exactly the divided power string of the head
    Vec u = col_of(M.low, M.hw);
    for (int n = 0; n < 3; ++n) {
        Vec x = mat_vec(M.module.divided_f(1, n), u);
        int nz = 0;
        Vec diff = x;
        for (size_t i = 0; i < diff.size(); ++i)
            if (!diff[i].is_zero()) ++nz;
        CHECK(nz == 1);
        ClassResult res = reduce_class(x);
        CHECK(res.in_lattice);
        CHECK(res.single);
        CHECK(res.coeff == 1);
        CHECK(x[(size_t)res.cls] == RationalFn(1));
    }
    CHECK(vec_is_zero(mat_vec(M.module.divided_f(1, 3), u)));

    // lattice rejects a pole in either variable
    CHECK(!in_lattice(M, vec_scaled(u, RationalFn(1) / P())));
    CHECK(!in_lattice(M, vec_scaled(u, RationalFn(1) / Q())));

    // Gram matrix of the second form is the identity modulo qA0
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            RationalFn x = M.form2[a][b];
            if (a == b) x -= RationalFn(1);
            CHECK(x.in_qA0());
        }

    StringBasis sb = string_decomposition(M.module, 1);
    REQUIRE(sb.len.size() == 1);
    CHECK(sb.len[0] == 3);

    CheckReport rep;
    CrystalOps ops = crystal_operators(M, rep);
    check_clean(rep);
    // crystal operators are inverse where defined
    for (int b = 0; b < 3; ++b) {
        int f = ops.ftil[0][b];
        if (f >= 0) CHECK(ops.etil[0][f] == b);
        int e = ops.etil[0][b];
        if (e >= 0) CHECK(ops.ftil[0][e] == b);
    }
    CHECK(ops.eps[0][M.hw] == 0);
    CHECK(ops.phi[0][M.hw] == 2);

    CheckReport mk;
    check_modified_kashiwara(M, ops, mk);
    check_clean(mk);

    CheckReport lead;
    check_leading_coefficients(M, ops, lead);
    check_clean(lead);

    CheckReport lab;
    assign_labels(M, ops, lab);
    check_clean(lab);
    CHECK(M.labels[(size_t)M.hw] == t_lambda(M.shape));

    std::string dot = crystal_graph_dot(M, ops);
    size_t edges = 0, nodes = 0;
    for (size_t at = dot.find(" -> "); at != std::string::npos;
         at = dot.find(" -> ", at + 1))
        ++edges;
    for (size_t at = dot.find("[label=\"(("); at != std::string::npos;
         at = dot.find("[label=\"((", at + 1))
        ++nodes;
    CHECK(nodes == 3);
    CHECK(edges == 2);
    CHECK(dot.find("f~1") != std::string::npos);
}

TEST_CASE("modified operator coefficients on the mixed shape") {
    Setup s(1, 2);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((1,0);(1))"));
    CHECK(M.module.dim == 2);
    check_clean(check_global_basis(M));
    CheckReport rep;
    CrystalOps ops = crystal_operators(M, rep);
    check_modified_kashiwara(M, ops, rep);
    check_leading_coefficients(M, ops, rep);
    assign_labels(M, ops, rep);
    check_clean(rep);
}

TEST_CASE("rank two irreducible with branching") {
    Setup s(2, 1);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((1,0,0);(0,0))"));
    CHECK(M.module.r == 2);
    check_clean(check_global_basis(M));

    BranchDecomp bd = branch_module(M, 2);
    std::vector<Bipartition> expect = branch_set(M.shape);
    CHECK(bd.types.size() == expect.size());
    int total = 0;
    for (const Mat& c : bd.comp) total += mat_cols(c);
    CHECK(total == M.module.dim);

    CheckReport rep;
    CrystalOps ops = crystal_operators(M, rep);
    check_modified_kashiwara(M, ops, rep);
    check_leading_coefficients(M, ops, rep);
    check_clean(rep);

    // the primed operators move between constituent heads inside the lattice
    PlusOps po = build_plus_ops(M, rep);
    check_clean(rep);
    CHECK(po.i == 2);
    for (int b = 0; b < M.module.dim; ++b) {
        ClassResult res = reduce_class(col_of(po.etil_plus, b));
        CHECK(res.in_lattice);
        CHECK(res.single);
        if (po.ecls[(size_t)b] >= 0) {
            CHECK(res.cls == po.ecls[(size_t)b]);
            CHECK(res.coeff == 1);
            // round trip back to the source class
            CHECK(po.fcls[(size_t)po.ecls[(size_t)b]] == b);
        } else {
            CHECK(res.cls == -1);
        }
    }

    CheckReport lab;
    assign_labels(M, ops, lab);
    check_clean(lab);

    nlohmann::json j = irrep_json(M);
    CHECK(j["dim"] == M.module.dim);
    CHECK(j["rank"] == 2);
    CHECK((int)j["basis"].size() == M.module.dim);
}

TEST_CASE("rank two primed operators move a plus box") {
    Setup s(2, 1);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((0,0,0);(1,0))"));
    CHECK(M.module.dim == 2);
    check_clean(check_global_basis(M));

    CheckReport rep;
    CrystalOps ops = crystal_operators(M, rep);
    check_clean(rep);

    // exactly one raising arrow between the two constituent head classes
    REQUIRE(ops.etilp.size() == 1);
    int arrows = 0;
    for (int b = 0; b < M.module.dim; ++b)
        if (ops.etilp[0][(size_t)b] >= 0) {
            ++arrows;
            CHECK(ops.ftilp[0][(size_t)ops.etilp[0][(size_t)b]] == b);
            CHECK(ops.etilp[0][(size_t)b] != b);
        }
    CHECK(arrows == 1);

    CheckReport lab;
    assign_labels(M, ops, lab);
    check_clean(lab);
}

TEST_CASE("rank two coideal weight support on the cell basis") {
    Setup s(2, 2);
    check_clean(property_ast_check(s.T));
}

TEST_CASE("rank one support conditions are vacuous") {
    Setup s(1, 2);
    check_clean(property_ast_check(s.T));
}

TEST_CASE("filtration of the degree two tensor module") {
    Setup s(1, 2);
    FiltrationReport fr = filtration_check(s.T);
    for (const auto& f : fr.failures) {
        CAPTURE(f);
        CHECK(false);
    }
    CHECK(fr.ok);
    CHECK(fr.dim == 9);
    REQUIRE(fr.mult.size() == 4);
    std::map<std::string, int> got;
    int total = 0;
    for (const auto& [shape, m] : fr.mult) {
        got[shape.str()] = m;
        total += m * (int)enumerate_sst(shape).size();
    }
    CHECK(total == 9);
    CHECK(got["((2,0);(0))"] == 1);
    CHECK(got["((1,1);(0))"] == 1);
    CHECK(got["((1,0);(1))"] == 2);
    CHECK(got["((0,0);(2))"] == 1);
}

TEST_CASE("every small shape at rank one carries a global basis") {
    Setup s(1, 2);
    for (const Bipartition& lam : enumerate_bipartitions(1, 2)) {
        CAPTURE(lam.str());
        GlobalBasisDatum M = build_irreducible(s.T, lam);
        check_clean(check_global_basis(M));
        CHECK(M.module.dim == (int)enumerate_sst(lam).size());
        CheckReport rep;
        CrystalOps ops = crystal_operators(M, rep);
        check_modified_kashiwara(M, ops, rep);
        check_leading_coefficients(M, ops, rep);
        assign_labels(M, ops, rep);
        check_clean(rep);
        // label weights enumerate the tableau weights
        std::vector<WeightJ> got, want;
        for (const Bitableau& t : M.labels) got.push_back(wtj(t));
        for (const Bitableau& t : enumerate_sst(lam)) want.push_back(wtj(t));
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("upper basis columns are psij-fixed and dual to the lower basis") {
    Setup s(1, 2);
    GlobalBasisDatum M = build_irreducible(s.T, Bipartition::parse("((1,0);(1))"));
    for (int c = 0; c < M.module.dim; ++c)
        CHECK(vec_bar(col_of(M.up, c)) == col_of(M.up, c));
    CHECK(mat_mul(M.form1, M.up) == mat_identity(M.module.dim));
}

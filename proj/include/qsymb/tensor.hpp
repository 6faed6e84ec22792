#pragma once

#include <optional>

#include "qsymb/bipartition.hpp"
#include "qsymb/ratfn.hpp"
#include "qsymb/schur.hpp"

namespace qsymb {

// Basis words of the d-th tensor power of the vector representation:
// letters run over -r..r, slot 0 is the leftmost tensor factor.
using Word = std::vector<int>;
using TensorVec = std::map<Word, RationalFn>;

void tensor_add_scaled(TensorVec& acc, const TensorVec& x, const RationalFn& c);

// raising and lowering on compositions: move one unit between parts i-1 and
// i, or nothing when the source part is empty
std::optional<Composition> comp_raise(const Composition& c, int i);
std::optional<Composition> comp_lower(const Composition& c, int i);

// One symbol of a formal expression in the coideal generators. For kinds e
// and f, n >= 1 is the divided power order; for kind k, n is the exponent.
struct UjGen {
    int kind; // 0 = e, 1 = f, 2 = k
    int i;
    int n;
    friend auto operator<=>(const UjGen&, const UjGen&) = default;
};

class UjExpr {
public:
    using Term = std::vector<UjGen>;

    UjExpr() = default;
    static UjExpr one();
    static UjExpr e(int i, int n = 1);
    static UjExpr f(int i, int n = 1);
    static UjExpr k(int i, int exp = 1);

    const std::map<Term, RationalFn>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    UjExpr& operator+=(const UjExpr& o);
    UjExpr& operator-=(const UjExpr& o);
    UjExpr operator-() const;
    friend UjExpr operator+(UjExpr a, const UjExpr& b) { return a += b; }
    friend UjExpr operator-(UjExpr a, const UjExpr& b) { return a -= b; }
    friend UjExpr operator*(const UjExpr& a, const UjExpr& b);
    friend UjExpr operator*(const RationalFn& c, UjExpr a);

    // divided powers rewritten as plain products with 1/[n]! coefficients
    UjExpr expanded() const;

    std::string str() const;

private:
    std::map<Term, RationalFn> terms_;
    void add_term(Term t, const RationalFn& c);
    friend UjExpr psij(const UjExpr&);
    friend UjExpr sigmaj(const UjExpr&);
    friend UjExpr tauj(const UjExpr&);
};

// bar-conjugating algebra automorphism: fixes e_i, f_i, inverts k_i, p, q
UjExpr psij(const UjExpr& x);
// anti-automorphism swapping e_i and f_i
UjExpr sigmaj(const UjExpr& x);
// anti-automorphism e_i -> p^{-d_{i1}} q^{-1} k_i^{-1} f_i,
// f_i -> p^{d_{i1}} q e_i k_i
UjExpr tauj(const UjExpr& x);

// the defining relations of the coideal algebra; each expression acts as
// zero on every tensor power
std::vector<UjExpr> uj_defining_relations(int r);

// The tensor power as a bimodule: a left action of the coideal algebra via
// the iterated coproduct and a right action of the Hecke algebra, tied to
// the parabolic module sum by an explicit isomorphism.
class TensorBimodule {
public:
    explicit TensorBimodule(const SchurAlgebra& S);

    int r() const { return r_; }
    int d() const { return d_; }
    const SchurAlgebra& schur() const { return S_; }
    int dim() const { return (int)words_.size(); }
    const std::vector<Word>& basis_words() const { return words_; }
    int word_index(const Word& w) const;

    // single quantum group generators; the nonzero codes a in {-r..r} label
    // the simple roots as in alpha_root
    TensorVec act_E(int a, const TensorVec& v) const;
    TensorVec act_F(int a, const TensorVec& v) const;
    TensorVec act_K(int a, int exp, const TensorVec& v) const;

    // coideal generators and formal expressions
    TensorVec act_e(int i, const TensorVec& v) const;
    TensorVec act_f(int i, const TensorVec& v) const;
    TensorVec act_k(int i, int exp, const TensorVec& v) const;
    TensorVec act_expr(const UjExpr& x, const TensorVec& v) const;

    // right Hecke action
    TensorVec act_gen_right(const TensorVec& v, int s) const;
    TensorVec act_hecke(const TensorVec& v, const HeckeElt& h) const;

    Weight weight(const Word& w) const;
    WeightJ weight_j(const Word& w) const;

    // the right module isomorphism with the sum of the x_lam H: the sorted
    // word of content lam corresponds to x_lam, and the minimal coset
    // representatives carry it across the component
    std::pair<int, int> pair_of_word(const Word& w) const;
    const Word& word_of_pair(int lam, int x) const;
    TElt iso(const TensorVec& v) const; // coefficients must be Laurent
    TensorVec iso_inv(const TElt& t) const;

    // centralizer action, bar involution, and bilinear form pulled through
    // the isomorphism
    TensorVec act_selt(const SElt& s, const TensorVec& v) const;
    TensorVec bar_vec(const TensorVec& v) const;
    RationalFn form_vec(const TensorVec& a, const TensorVec& b) const;

    // images of the coideal generators in the centralizer algebra
    SElt xi_e(int i) const;
    SElt xi_f(int i) const;
    SElt xi_k(int i, int exp) const;

    struct SurjectionReport {
        bool ok = true;
        std::vector<std::string> failures;
    };
    // compares the centralizer image of every generator with the direct
    // action on every basis word
    SurjectionReport check_surjection_formulas() const;

    nlohmann::json generator_matrices_json() const;

private:
    const SchurAlgebra& S_;
    const HeckeAlgebra& H_;
    const WeylGroupB& W_;
    int r_ = 0;
    int d_ = 0;
    std::vector<Word> words_;
    std::vector<std::pair<int, int>> pair_of_;
    std::map<std::pair<int, int>, int> word_of_;

    int alpha_pairing(int a, int letter) const;
    void build();
};

} // namespace qsymb

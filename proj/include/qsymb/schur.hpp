#pragma once

#include <map>
#include <utility>

#include "qsymb/kl.hpp"

namespace qsymb {

// A composition of d into r+1 nonnegative parts. Its generator set I_lambda
// leaves out the part boundaries, so the first block carries the sign
// generator exactly when lambda_0 > 0.
struct Composition {
    std::vector<int> parts;

    explicit Composition(std::vector<int> p);
    int d() const;
    int r() const { return (int)parts.size() - 1; }
    std::vector<int> gens() const;
    std::string str() const;
    friend auto operator<=>(const Composition&, const Composition&) = default;
    friend bool operator==(const Composition&, const Composition&) = default;
};

// all compositions of d into r+1 parts, lexicographically increasing
std::vector<Composition> compositions(int r, int d);

// Index of one basis endomorphism: the component indices name compositions
// of the ambient SchurAlgebra, x is a Weyl group index in ^lam W^mu.
struct XiKey {
    int lam;
    int x;
    int mu;
    friend auto operator<=>(const XiKey&, const XiKey&) = default;
    friend bool operator==(const XiKey&, const XiKey&) = default;
};

// Element of the direct-sum module: component index -> coordinates in the
// basis {x_lam H_w : w in ^lam W}. Zero coefficients are never stored.
using TElt = std::map<int, std::map<int, LaurentPoly>>;
// Element of the centralizer algebra in the xi basis.
using SElt = std::map<XiKey, LaurentPoly>;

void telt_add_scaled(TElt& acc, const TElt& x, const LaurentPoly& c);
void selt_add_scaled(SElt& acc, const SElt& x, const LaurentPoly& c);

class SchurAlgebra {
public:
    SchurAlgebra(const KLContext& kl, std::vector<Composition> pi);
    // the standard index set: all compositions of d into r+1 parts
    SchurAlgebra(const KLContext& kl, int r);

    const KLContext& kl() const { return kl_; }
    const WeylGroupB& group() const { return W_; }
    const HeckeAlgebra& algebra() const { return H_; }
    const std::vector<Composition>& pi() const { return pi_; }
    int comp_index(const Composition& c) const;

    const std::vector<int>& gens(int lam) const { return data_[lam].J; }
    int w_lambda(int lam) const { return data_[lam].wJ; }
    const LaurentPoly& p_poly(int lam) const { return data_[lam].poincare; }
    const std::vector<int>& min_reps(int lam) const { return data_[lam].reps; }
    // ^lam W^mu, sorted like min_coset_reps
    std::vector<int> double_reps(int lam, int mu) const;
    const std::vector<XiKey>& xi_keys() const;

    // enumeration of the module basis pairs (lam, w in ^lam W)
    const std::vector<std::pair<int, int>>& t_basis() const { return tbasis_; }
    int t_index(int lam, int w) const;
    int dim_t() const { return (int)tbasis_.size(); }
    std::vector<LaurentPoly> dense(const TElt& t) const;
    TElt from_dense(const std::vector<LaurentPoly>& v) const;

    // the image of the cyclic generator x_mu under xi_{lam,x,mu}
    const HeckeElt& eta(int lam, int x, int mu) const;

    TElt telt(int lam, const HeckeElt& h) const; // h must lie in x_lam H
    HeckeElt component(const TElt& t, int lam) const;
    TElt x_elt(int lam) const;
    TElt c_elt(int lam, int w) const; // parabolic KL element, w in ^lam W
    TElt d_elt(int lam, int w) const;

    TElt act(const SElt& s, const TElt& t) const;
    TElt act_hecke(const TElt& t, const HeckeElt& h) const;
    SElt mul(const SElt& a, const SElt& b) const;
    SElt unit() const;
    SElt flat(const SElt& s) const;
    TElt bar_t(const TElt& t) const;
    SElt bar_s(const SElt& s) const;
    LaurentPoly form(const TElt& a, const TElt& b) const;

    // coordinates of a component element in its parabolic KL basis
    std::map<int, LaurentPoly> c_coords(int lam, const HeckeElt& h) const;
    std::map<int, LaurentPoly> d_coords(int lam, const HeckeElt& h) const;

    // the endomorphism of x_mu H -> x_lam H sending x_mu to image, expanded
    // in the xi basis; checks that image is a legal homomorphism value
    SElt expand_hom(int lam, int mu, const HeckeElt& image) const;

    // quotient modules through one left cell, with the action matrix of
    // every xi basis element (indexed parallel to xi_keys())
    struct SchurCellModule {
        KLKind kind = KLKind::C;
        std::vector<std::pair<int, int>> elems; // (lam, w)
        std::vector<std::vector<std::vector<LaurentPoly>>> action;
    };
    SchurCellModule cell_module(int cell, KLKind kind) const;

    nlohmann::json structure_constants_json() const;

private:
    struct CompData {
        std::vector<int> J;
        int wJ = 0;
        LaurentPoly poincare;
        std::vector<int> reps;
        std::vector<char> is_rep; // indexed by Weyl index
        std::vector<int> members; // W_lambda
    };

    const KLContext& kl_;
    const HeckeAlgebra& H_;
    const WeylGroupB& W_;
    std::vector<Composition> pi_;
    std::map<std::vector<int>, int> index_;
    std::vector<CompData> data_;
    std::vector<std::pair<int, int>> tbasis_;
    std::map<std::pair<int, int>, int> tindex_;
    mutable std::map<std::pair<int, int>, std::vector<WeylGroupB::DoubleCoset>> dcosets_;
    mutable std::vector<XiKey> keys_;
    mutable std::map<std::tuple<int, int, int>, HeckeElt> eta_;
    mutable std::map<std::pair<XiKey, XiKey>, SElt> prod_;
    mutable std::map<std::pair<int, int>, std::map<int, LaurentPoly>> ccoord_, dcoord_;

    void build();
    const WeylGroupB::DoubleCoset& coset_datum(int lam, int mu, int x) const;
    const std::map<int, LaurentPoly>& basis_coords(int lam, int w, KLKind k) const;
};

} // namespace qsymb

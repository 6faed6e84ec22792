#pragma once

#include <map>

#include "qsymb/laurent.hpp"
#include "qsymb/weyl.hpp"

namespace qsymb {

// Element of the Hecke algebra (or of its dual, see below) in the standard
// basis: group-element index -> coefficient, zero coefficients absent.
using HeckeElt = std::map<int, LaurentPoly>;

void hecke_add(HeckeElt& acc, const HeckeElt& x);
void hecke_add_scaled(HeckeElt& acc, const HeckeElt& x, const LaurentPoly& c);
HeckeElt hecke_scaled(const HeckeElt& x, const LaurentPoly& c);
bool hecke_eq(const HeckeElt& x, const HeckeElt& y);

// Two-parameter Iwahori-Hecke algebra of W_d over Z[p^{±1},q^{±1}], in the
// normalization H_s^2 = 1 + (q_s^{-1} - q_s) H_s with q_{s_0} = p and
// q_{s_i} = q for i >= 1.
class HeckeAlgebra {
public:
    explicit HeckeAlgebra(const WeylGroupB& W);

    const WeylGroupB& group() const { return *W_; }
    LaurentPoly q_gen(int s) const;
    // q_w = p^{neg(w)} q^{ell(w) - neg(w)}
    const LaurentPoly& q_elt(int w) const { return qw_[w]; }
    const LaurentPoly& q_elt_inv(int w) const { return qw_inv_[w]; }

    static HeckeElt basis(int w) { return HeckeElt{{w, LaurentPoly(1)}}; }
    static HeckeElt unit() { return basis(0); }

    HeckeElt rmul_gen(const HeckeElt& h, int s) const;
    HeckeElt lmul_gen(int s, const HeckeElt& h) const;
    HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const;

    // bar: the anti-linear algebra automorphism with bar(H_w) = (H_{w^{-1}})^{-1}
    const HeckeElt& bar_basis(int w) const;
    HeckeElt bar(const HeckeElt& h) const;
    // sgn: anti-linear, H_w -> (-1)^{ell(w)} H_w
    HeckeElt sgn(const HeckeElt& h) const;
    // flat: the linear anti-automorphism H_w -> H_{w^{-1}}
    HeckeElt flat(const HeckeElt& h) const;

    // coefficient of H_y in bar(H_w)
    LaurentPoly r_poly(int y, int w) const;

    // x_J = q_{w_J} sum_{w in W_J} q_w^{-1} H_w, and the normalized Poincare
    // polynomial P_J = q_{w_J} sum_{w in W_J} q_w^{-2} with x_J^2 = P_J x_J
    HeckeElt x_parabolic(const std::vector<int>& J) const;
    LaurentPoly poincare(const std::vector<int>& J) const;

    // ---- right dual module: functionals on the algebra, basis h_w dual to
    // H_w, with the left action H_s . h_w = h_{sw} (+ (q_s^{-1}-q_s) h_w when
    // sw < w)
    HeckeElt dual_act_gen(int s, const HeckeElt& f) const;
    HeckeElt dual_act(const HeckeElt& a, const HeckeElt& f) const;
    // bar on functionals: (bar f)(H) = bar(f(bar H))
    HeckeElt dual_bar(const HeckeElt& f) const;
    // the isomorphism H -> H*, H |-> H . h_{w_0}
    HeckeElt d_iso(const HeckeElt& h) const;
    // <x | y> = d(y)(x); also the coefficient of H_{w_0} in flat(y) * x
    LaurentPoly form(const HeckeElt& x, const HeckeElt& y) const;

private:
    const WeylGroupB* W_;
    std::vector<LaurentPoly> qw_, qw_inv_;
    mutable std::vector<HeckeElt> barh_;
    mutable std::vector<char> barh_done_;
};

} // namespace qsymb

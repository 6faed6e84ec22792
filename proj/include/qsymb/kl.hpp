#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qsymb/hecke.hpp"

namespace qsymb {

enum class KLKind { C, D };
const char* kl_kind_name(KLKind k);

// One Kazhdan-Lusztig-type basis of the Hecke algebra, column w holding the
// expansion of the basis element indexed by w in the standard basis.
// Invariants (asserted on construction and on cache load): diagonal
// coefficient 1, support Bruhat-below the diagonal, integral coefficients,
// off-diagonal coefficients in the strictly positive (kind C) or strictly
// negative (kind D) half of the lattice.
struct KLTable {
    int d = 0;
    KLKind kind = KLKind::C;
    std::vector<HeckeElt> elt;
};

// Left cells: strongly connected components of the digraph with an edge
// w -> y whenever C_y occurs in C_s C_w for some generator s. Cells are
// listed in increasing order of their minimal element.
struct CellDatum {
    std::vector<std::vector<int>> cells;
    std::vector<int> cell_of;
    // cell_leq[a][b] nonzero iff the elements of cell a are <=_L those of b
    std::vector<std::vector<char>> cell_leq;
};

// Action matrices of the generators on a cell module: the quotient of the
// span of the basis elements indexed by {y : y <=_L x} by the span of the
// strictly smaller ones. action[s][i][j] is the coefficient of elems[i] in
// H_s . elems[j].
struct CellModule {
    KLKind kind = KLKind::C;
    std::vector<int> elems;
    std::vector<std::vector<std::vector<LaurentPoly>>> action;
};

class KLContext {
public:
    // cache_dir empty disables the disk cache; by default taken from the
    // QSYMB_CACHE_DIR environment variable
    explicit KLContext(const HeckeAlgebra& H,
                       std::optional<std::string> cache_dir = std::nullopt);

    const WeylGroupB& group() const { return W_; }
    const HeckeAlgebra& algebra() const { return H_; }

    const KLTable& table(KLKind k) const;
    const HeckeElt& c_basis(int w) const { return table(KLKind::C).elt[w]; }
    const HeckeElt& d_basis(int w) const { return table(KLKind::D).elt[w]; }

    // change of basis between the standard basis and a KL basis; the result
    // of to_basis maps w to the coefficient of the KL element at w
    HeckeElt to_basis(HeckeElt h, KLKind k) const;
    HeckeElt from_basis(const HeckeElt& coords, KLKind k) const;

    // parabolic KL elements attached to J; w must be a minimal coset
    // representative for the C version
    HeckeElt parabolic_c(const std::vector<int>& J, int w) const;
    HeckeElt parabolic_d(const std::vector<int>& J, int w) const;
    // coordinates of h in the basis {x_J H_w : w minimal}; errors when h is
    // not in the submodule x_J H
    std::map<int, LaurentPoly> parabolic_coords(const std::vector<int>& J,
                                                const HeckeElt& h) const;
    // the renormalized form on x_J H; division by the Poincare polynomial
    // must be exact
    LaurentPoly form_J(const std::vector<int>& J, const HeckeElt& a,
                       const HeckeElt& b) const;

    const CellDatum& cells() const;
    int cell_of(int w) const { return cells().cell_of[w]; }
    bool leq_L(int y, int w) const;
    CellModule cell_module(int cell, KLKind kind) const;

    nlohmann::json table_json(KLKind k) const;
    void export_csv(KLKind k, std::ostream& os) const;

private:
    const HeckeAlgebra& H_;
    const WeylGroupB& W_;
    std::string cache_dir_;
    mutable std::optional<KLTable> tab_[2];
    mutable std::optional<CellDatum> cells_;

    HeckeElt build_column(int w, KLKind kind) const;
    void build_table(KLKind k) const;
    void check_table(const KLTable& t) const;
    std::string cache_path(KLKind k) const;
    bool load_cache(KLKind k) const;
    void save_cache(KLKind k) const;
};

std::string cache_dir_from_env();

} // namespace qsymb

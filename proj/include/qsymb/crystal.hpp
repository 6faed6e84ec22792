#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsymb/bipartition.hpp"
#include "qsymb/linalg.hpp"
#include "qsymb/tensor.hpp"

namespace qsymb {

// A finite-dimensional module over the coideal algebra, presented by exact
// generator matrices acting on column vectors. The k-matrices are diagonal
// with monomial entries recording the weight of each basis vector.
struct UjModuleDatum {
    int r = 0;
    int dim = 0;
    std::vector<Mat> emat, fmat; // emat[i-1] acts as e_i
    std::vector<Vec> kdiag;      // kdiag[i-1][v] is the k_i eigenvalue on v
    std::vector<WeightJ> wt;     // per basis vector
    std::string provenance;

    Mat kmat(int i, int exp) const;
    Mat divided_e(int i, int n) const; // e_i^n / [n]!
    Mat divided_f(int i, int n) const;
    Mat gen_matrix(const UjGen& g) const;
    Mat expr_matrix(const UjExpr& x) const;
    // all defining relations act as zero and the k-eigenvalues match wt
    void check() const;
};

struct CheckReport {
    bool ok = true;
    std::vector<std::string> failures;
    void require(bool cond, const std::string& what);
};

// Global basis data for one irreducible module realized on a left cell.
// Module coordinates are the cell basis itself, so the lower global basis
// is the identity matrix and vectors are their own coordinate columns.
struct GlobalBasisDatum {
    Bipartition shape{{0}, {}};
    int cell = -1;  // left cell carrying the C-side realization
    int cellD = -1; // its image under right multiplication by w0
    UjModuleDatum module;
    std::vector<std::pair<int, int>> celems; // (component, y) per column
    std::vector<std::pair<int, int>> delems; // paired D-side basis labels
    Mat low;                                 // identity
    Mat up;                                  // upper global basis columns
    Mat form1, form2;                        // Gram matrices, (x,y) = x^T F y
    int hw = -1;
    std::vector<Bitableau> labels;           // per column, via assign_labels
};

// Enumerates the left cells, matches weight characters against the
// semistandard tableaux of lam, and assembles both global bases. Throws
// qsymb::error("lam is not a constituent at this degree") when no cell
// matches.
GlobalBasisDatum build_irreducible(const TensorBimodule& T, const Bipartition& lam);

// anti-linear involution fixing every lower global basis vector
Vec apply_psij(const GlobalBasisDatum& M, const Vec& v);
void check_psij(const GlobalBasisDatum& M, CheckReport& rep);

bool in_lattice(const GlobalBasisDatum& M, const Vec& v);
void check_lattice(const GlobalBasisDatum& M, CheckReport& rep);

// balanced-triple membership test on a candidate basis written in lower
// global basis coordinates: entries must lie in A0, be Laurent, have
// bar-image in A0, and specialize at the origin to an invertible rational
// matrix
void check_balanced(const GlobalBasisDatum& M, const Mat& cand, CheckReport& rep);
void check_a_span(const GlobalBasisDatum& M, CheckReport& rep);

// the full list of global-basis conditions: psij-fixedness of both bases,
// duality under the first form, lattice description by the second form,
// almost orthonormality, origin orthonormality, and triple balance with a
// stable integral span
CheckReport check_global_basis(const GlobalBasisDatum& M);

// Expansion of a lattice vector in lower global basis coordinates reduced
// at the origin. single means every coordinate lies in A0 and at most one
// survives at the origin.
struct ClassResult {
    bool in_lattice = false;
    bool single = false;
    int cls = -1; // -1 when the reduction is zero
    Rational coeff = 0;
    Vec coords;
};
ClassResult reduce_class(const Vec& coords);
// scales v so that the reduction becomes a coefficient-1 class indicator;
// nullopt when no scaling works
std::optional<std::pair<Vec, int>> normalize_class(const Vec& v);

// Canonical string decomposition for one generator index: the module is
// the direct sum of f_i^(n) applied to the kernel of e_i, which yields
// exact raising and lowering operators shifting along strings.
struct StringBasis {
    int i = 0;
    Mat basis;                           // columns f_i^(n) u, strings in order
    std::vector<std::pair<int, int>> pos; // (string, n) per column
    std::vector<int> len;                // string lengths (top power + 1)
    Mat ftil, etil;                      // shift operators in module coordinates
};
StringBasis string_decomposition(const UjModuleDatum& M, int i);

// Crystal operators on classes: value -1 encodes zero. Primed operators are
// present for indices 2..r when requested.
struct CrystalOps {
    std::vector<std::vector<int>> etil, ftil; // [i-1][class]
    std::vector<std::vector<int>> eps, phi;   // string statistics per class
    std::vector<std::vector<int>> etilp, ftilp; // [i-2][class]
};
CrystalOps crystal_operators(const GlobalBasisDatum& M, CheckReport& rep,
                             bool with_primed = true);

// modified Kashiwara operator as an exact matrix on module coordinates
Mat modified_kashiwara(const UjModuleDatum& M, int i, int n);
void check_modified_kashiwara(const GlobalBasisDatum& M, const CrystalOps& ops,
                              CheckReport& rep);

// leading-coefficient expansion of f_i applied to a global basis vector
void check_leading_coefficients(const GlobalBasisDatum& M, const CrystalOps& ops,
                                CheckReport& rep);

// Restriction to the subalgebra generated by e_j, f_j, k_j with j < level.
// Constituents are matched against the branching rule for the shape; the
// decomposition must be multiplicity-free.
struct BranchDecomp {
    int level = 0; // constituents have rank level - 1
    std::vector<Bipartition> types;
    std::vector<Vec> hwvec;  // highest weight vector per constituent
    std::vector<Mat> comp;   // per constituent, basis columns, hw first
    std::vector<int> offset; // column offset of each constituent in basis
    Mat basis, basis_inv;    // assembled decomposition basis
};
BranchDecomp branch_module(const GlobalBasisDatum& M, int level);

// the raising operator distributing over the branching at index i = r and
// its one-sided inverse
struct PlusOps {
    int i = 0;
    Mat etil_plus, ftil_plus;
    std::vector<int> sources;   // classes where etil_plus acts nonzero
    std::vector<int> ecls, fcls; // induced class maps, -1 for zero
};
PlusOps build_plus_ops(const GlobalBasisDatum& M, CheckReport& rep);

// bitableau labels from branching chains and string positions; fills
// M.labels and verifies the bijection with the semistandard tableaux
void assign_labels(GlobalBasisDatum& M, const CrystalOps& ops, CheckReport& rep);

// filtration of the tensor module by dominance: isotypic components,
// span checks against the cell basis, subquotient global bases, and the
// multiplicity table
struct FiltrationReport {
    bool ok = true;
    int dim = 0;
    std::vector<std::pair<Bipartition, int>> mult;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};
FiltrationReport filtration_check(const TensorBimodule& T);

// support conditions on the cell basis of the tensor module: expansions of
// e_i and f_i stay inside the ambient-weight order cone with the expected
// leading term (vacuous at r = 1)
CheckReport property_ast_check(const TensorBimodule& T);

nlohmann::json irrep_json(const GlobalBasisDatum& M);
std::string crystal_graph_dot(const GlobalBasisDatum& M, const CrystalOps& ops);

} // namespace qsymb

#include "qsymb/crystal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qsymb/qcomb.hpp"

namespace qsymb {

namespace {

RationalFn rf_q(int k) { return RationalFn(LaurentPoly::var_q(k)); }
RationalFn rf_p(int k) { return RationalFn(LaurentPoly::var_p(k)); }
RationalFn rf_qint(int n) { return RationalFn(q_int(n)); }
RationalFn rf_qfact(int n) { return RationalFn(q_factorial(n)); }

} // namespace

void CheckReport::require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    failures.push_back(what);
}

// ---------------------------------------------------------------------------
// UjModuleDatum

Mat UjModuleDatum::kmat(int i, int exp) const {
    QS_CHECK(1 <= i && i <= r, "generator index out of range");
    Mat a = mat_zero(dim, dim);
    for (int v = 0; v < dim; ++v) {
        RationalFn x = RationalFn(1);
        const RationalFn& base = kdiag[i - 1][v];
        for (int t = 0; t < std::abs(exp); ++t) x *= base;
        if (exp < 0) x = RationalFn(1) / x;
        a[v][v] = x;
    }
    return a;
}

Mat UjModuleDatum::divided_e(int i, int n) const {
    QS_CHECK(1 <= i && i <= r && n >= 0, "divided power out of range");
    return mat_scaled(mat_pow(emat[i - 1], n), RationalFn(1) / rf_qfact(n));
}

Mat UjModuleDatum::divided_f(int i, int n) const {
    QS_CHECK(1 <= i && i <= r && n >= 0, "divided power out of range");
    return mat_scaled(mat_pow(fmat[i - 1], n), RationalFn(1) / rf_qfact(n));
}

Mat UjModuleDatum::gen_matrix(const UjGen& g) const {
    if (g.kind == 0) return divided_e(g.i, g.n);
    if (g.kind == 1) return divided_f(g.i, g.n);
    return kmat(g.i, g.n);
}

Mat UjModuleDatum::expr_matrix(const UjExpr& x) const {
    Mat acc = mat_zero(dim, dim);
    for (const auto& [term, c] : x.terms()) {
        Mat m = mat_identity(dim);
        for (const UjGen& g : term) m = mat_mul(m, gen_matrix(g));
        acc = mat_add(acc, mat_scaled(m, c));
    }
    return acc;
}

void UjModuleDatum::check() const {
    QS_CHECK((int)emat.size() == r && (int)fmat.size() == r && (int)kdiag.size() == r,
             "generator tables need one entry per index");
    QS_CHECK((int)wt.size() == dim, "one weight per basis vector");
    for (int i = 1; i <= r; ++i)
        for (int v = 0; v < dim; ++v)
            QS_CHECK(kdiag[i - 1][v] == rf_q(wt[v].coords[i - 1]),
                     "k-eigenvalue disagrees with the recorded weight");
    for (const UjExpr& rel : uj_defining_relations(r))
        QS_CHECK(mat_is_zero(expr_matrix(rel)), "defining relation acts nonzero");
}

// ---------------------------------------------------------------------------
// build_irreducible

namespace {

// expands a centralizer element against the action table of a cell module
Mat selt_matrix(const SchurAlgebra& S,
                const SchurAlgebra::SchurCellModule& cm,
                const std::map<XiKey, int>& kidx, const SElt& s) {
    const int n = (int)cm.elems.size();
    Mat a = mat_zero(n, n);
    for (const auto& [key, c] : s) {
        auto it = kidx.find(key);
        QS_CHECK(it != kidx.end(), "centralizer key missing from the basis");
        const auto& block = cm.action[it->second];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (block[i][j].is_zero()) continue;
                a[i][j] += RationalFn(c) * RationalFn(block[i][j]);
            }
    }
    return a;
}

std::map<XiKey, int> key_index(const SchurAlgebra& S) {
    std::map<XiKey, int> kidx;
    const auto& keys = S.xi_keys();
    for (int i = 0; i < (int)keys.size(); ++i) kidx[keys[i]] = i;
    return kidx;
}

std::vector<int> hw_columns(const UjModuleDatum& M) {
    std::vector<int> hw;
    for (int j = 0; j < M.dim; ++j) {
        bool killed = true;
        for (int i = 0; i < M.r && killed; ++i)
            for (int v = 0; v < M.dim; ++v)
                if (!M.emat[i][v][j].is_zero()) {
                    killed = false;
                    break;
                }
        if (killed) hw.push_back(j);
    }
    return hw;
}

// solves F with A_g^T F = F A_{im(g)} for all generators, one-dimensional
// solution space scaled to F[hw][hw] = 1; weight blocks only, then the full
// equations are verified exactly
Mat solve_form(const UjModuleDatum& M, bool tau, int hw) {
    const int n = M.dim;
    std::vector<std::pair<int, int>> unk;
    std::vector<std::vector<int>> uidx(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (M.wt[a] == M.wt[b]) {
                uidx[a][b] = (int)unk.size();
                unk.push_back({a, b});
            }

    std::vector<std::pair<Mat, Mat>> eqs;
    for (int i = 1; i <= M.r; ++i) {
        for (UjExpr g : {UjExpr::e(i), UjExpr::f(i)}) {
            UjExpr im = tau ? tauj(g) : sigmaj(g);
            eqs.push_back({mat_transpose(M.expr_matrix(g)), M.expr_matrix(im)});
        }
    }

    // seed with a zero row so the unknown count survives even when every
    // generator equation is trivial
    Mat rows = {Vec(unk.size())};
    for (const auto& [at, b] : eqs) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                Vec row(unk.size());
                bool nontrivial = false;
                for (int c = 0; c < n; ++c) {
                    // at[x][c] F[c][y] - F[x][c] b[c][y] = 0
                    if (uidx[c][y] >= 0 && !at[x][c].is_zero()) {
                        row[uidx[c][y]] += at[x][c];
                        nontrivial = true;
                    }
                    if (uidx[x][c] >= 0 && !b[c][y].is_zero()) {
                        row[uidx[x][c]] -= b[c][y];
                        nontrivial = true;
                    }
                }
                if (nontrivial) rows.push_back(std::move(row));
            }
    }

    std::vector<Vec> ker = kernel_basis(rows);
    QS_CHECK(ker.size() == 1, "contravariant form is not unique up to scale");
    const int hwu = uidx[hw][hw];
    QS_CHECK(hwu >= 0 && !ker[0][hwu].is_zero(),
             "form vanishes on the highest weight line");
    Vec sol = vec_scaled(ker[0], RationalFn(1) / ker[0][hwu]);

    Mat f = mat_zero(n, n);
    for (size_t u = 0; u < unk.size(); ++u) f[unk[u].first][unk[u].second] = sol[u];

    for (int i = 1; i <= M.r; ++i) {
        for (UjExpr g : {UjExpr::e(i), UjExpr::f(i), UjExpr::k(i, 1)}) {
            UjExpr im = tau ? tauj(g) : sigmaj(g);
            Mat lhs = mat_mul(mat_transpose(M.expr_matrix(g)), f);
            Mat rhs = mat_mul(f, M.expr_matrix(im));
            QS_CHECK(lhs == rhs, "contravariance fails on a generator");
        }
    }
    QS_CHECK(f == mat_transpose(f), "contravariant form must be symmetric");
    return f;
}

} // namespace

GlobalBasisDatum build_irreducible(const TensorBimodule& T, const Bipartition& lam) {
    const SchurAlgebra& S = T.schur();
    const KLContext& kl = S.kl();
    const WeylGroupB& W = S.group();
    const int r = T.r();
    QS_CHECK(lam.r() == r, "bipartition rank disagrees with the module");
    QS_CHECK(lam.size() == T.d(), "bipartition size disagrees with the degree");

    std::vector<WeightJ> target;
    for (const Bitableau& t : enumerate_sst(lam)) target.push_back(wtj(t));
    std::sort(target.begin(), target.end());

    const int w0 = W.longest();
    const auto& cells = kl.cells().cells;

    int found = -1;
    std::vector<std::pair<int, int>> celems;
    for (int cell = 0; cell < (int)cells.size() && found < 0; ++cell) {
        std::vector<std::pair<int, int>> elems;
        std::vector<WeightJ> weights;
        for (int mu = 0; mu < (int)S.pi().size(); ++mu) {
            WeightJ wmu = T.weight_j(T.word_of_pair(mu, 0));
            for (int y : S.min_reps(mu))
                if (kl.cell_of(W.mul(S.w_lambda(mu), y)) == cell) {
                    elems.push_back({mu, y});
                    weights.push_back(wmu);
                }
        }
        std::sort(weights.begin(), weights.end());
        if (weights == target) {
            found = cell;
            celems = std::move(elems);
        }
    }
    if (found < 0) throw error("shape is not a constituent at this degree: " + lam.str());

    GlobalBasisDatum M;
    M.shape = lam;
    M.cell = found;

    auto kidx = key_index(S);
    auto cm = S.cell_module(found, KLKind::C);
    QS_CHECK(cm.elems == celems, "cell module basis enumeration changed");
    const int n = (int)cm.elems.size();

    M.celems = cm.elems;
    M.module.r = r;
    M.module.dim = n;
    M.module.provenance = "cell " + std::to_string(found) + " of degree " +
                          std::to_string(T.d());
    for (int i = 1; i <= r; ++i) {
        M.module.emat.push_back(selt_matrix(S, cm, kidx, T.xi_e(i)));
        M.module.fmat.push_back(selt_matrix(S, cm, kidx, T.xi_f(i)));
        Mat k = selt_matrix(S, cm, kidx, T.xi_k(i, 1));
        Vec diag(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) {
                    diag[a] = k[a][a];
                    continue;
                }
                QS_CHECK(k[a][b].is_zero(), "k-action must be diagonal on the cell basis");
            }
        M.module.kdiag.push_back(std::move(diag));
    }
    for (const auto& [mu, y] : cm.elems)
        M.module.wt.push_back(T.weight_j(T.word_of_pair(mu, 0)));
    M.module.check();

    std::vector<int> hw = hw_columns(M.module);
    QS_CHECK(hw.size() == 1, "irreducible module needs a unique highest weight vector");
    M.hw = hw[0];

    // the dual realization on the cell translated by the longest element
    M.cellD = kl.cell_of(W.mul(cells[found][0], w0));
    for (int x : cells[found])
        QS_CHECK(kl.cell_of(W.mul(x, w0)) == M.cellD,
                 "translated cell is not a single left cell");
    auto dm = S.cell_module(M.cellD, KLKind::D);
    QS_CHECK((int)dm.elems.size() == n, "dual cell module has a different dimension");

    std::map<std::pair<int, int>, int> dpos;
    for (int j = 0; j < n; ++j) dpos[dm.elems[j]] = j;
    std::vector<int> dcol(n);
    for (int c = 0; c < n; ++c) {
        const auto& [mu, y] = cm.elems[c];
        int z = W.mul(W.mul(S.w_lambda(mu), y), w0);
        auto it = dpos.find({mu, z});
        QS_CHECK(it != dpos.end(), "dual basis partner missing from the cell");
        M.delems.push_back({mu, z});
        dcol[c] = it->second;
    }

    UjModuleDatum D;
    D.r = r;
    D.dim = n;
    for (int i = 1; i <= r; ++i) {
        D.emat.push_back(selt_matrix(S, dm, kidx, T.xi_e(i)));
        D.fmat.push_back(selt_matrix(S, dm, kidx, T.xi_f(i)));
        Mat k = selt_matrix(S, dm, kidx, T.xi_k(i, 1));
        Vec diag(n);
        for (int a = 0; a < n; ++a) diag[a] = k[a][a];
        D.kdiag.push_back(std::move(diag));
    }

    std::vector<int> hwd = hw_columns(D);
    QS_CHECK(hwd.size() == 1, "dual realization needs a unique highest weight vector");
    QS_CHECK(hwd[0] == dcol[M.hw],
             "dual highest weight vector is not the partner of the primal one");

    // intertwiner from the dual to the primal realization matching the
    // highest weight lines, built by lockstep generation
    std::vector<Vec> vd, vc;
    SpanBuilder seen(n);
    {
        Vec d0(n), c0(n);
        d0[hwd[0]] = RationalFn(1);
        c0[M.hw] = RationalFn(1);
        std::vector<std::pair<Vec, Vec>> queue = {{d0, c0}};
        seen.add(d0);
        vd.push_back(d0);
        vc.push_back(c0);
        for (size_t head = 0; head < queue.size() && seen.rank() < n; ++head) {
            auto [xd, xc] = queue[head];
            for (int i = 0; i < r; ++i) {
                for (int kind = 0; kind < 2; ++kind) {
                    const Mat& ad = kind == 0 ? D.emat[i] : D.fmat[i];
                    const Mat& ac = kind == 0 ? M.module.emat[i] : M.module.fmat[i];
                    Vec yd = mat_vec(ad, xd);
                    if (vec_is_zero(yd)) continue;
                    Vec yc = mat_vec(ac, xc);
                    if (seen.add(yd)) {
                        vd.push_back(yd);
                        vc.push_back(yc);
                        queue.push_back({std::move(yd), std::move(yc)});
                    }
                }
            }
        }
    }
    QS_CHECK(seen.rank() == n, "dual realization is not generated by its highest weight vector");

    Mat vdm = mat_zero(n, n), vcm = mat_zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            vdm[i][j] = vd[j][i];
            vcm[i][j] = vc[j][i];
        }
    Mat theta = mat_mul(vcm, mat_inverse(vdm));
    for (int i = 0; i < r; ++i) {
        QS_CHECK(mat_mul(theta, D.emat[i]) == mat_mul(M.module.emat[i], theta),
                 "intertwiner fails on a raising generator");
        QS_CHECK(mat_mul(theta, D.fmat[i]) == mat_mul(M.module.fmat[i], theta),
                 "intertwiner fails on a lowering generator");
    }

    M.low = mat_identity(n);
    M.up = mat_zero(n, n);
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i) M.up[i][c] = theta[i][dcol[c]];

    M.form1 = solve_form(M.module, false, M.hw);
    M.form2 = solve_form(M.module, true, M.hw);
    return M;
}

// ---------------------------------------------------------------------------
// involution and forms

Vec apply_psij(const GlobalBasisDatum& M, const Vec& v) {
    (void)M;
    return vec_bar(v);
}

void check_psij(const GlobalBasisDatum& M, CheckReport& rep) {
    for (int i = 0; i < M.module.r; ++i) {
        rep.require(mat_bar(M.module.emat[i]) == M.module.emat[i],
                    "psij intertwining fails for e_" + std::to_string(i + 1));
        rep.require(mat_bar(M.module.fmat[i]) == M.module.fmat[i],
                    "psij intertwining fails for f_" + std::to_string(i + 1));
        rep.require(mat_bar(M.module.kmat(i + 1, 1)) == M.module.kmat(i + 1, -1),
                    "psij intertwining fails for k_" + std::to_string(i + 1));
    }
    for (int c = 0; c < M.module.dim; ++c) {
        rep.require(vec_bar(col_of(M.low, c)) == col_of(M.low, c),
                    "psij moves a lower global basis vector");
        rep.require(vec_bar(col_of(M.up, c)) == col_of(M.up, c),
                    "psij moves an upper global basis vector");
    }
}

bool in_lattice(const GlobalBasisDatum& M, const Vec& v) {
    Mat fv = mat_mul(M.form2, mat_col(v));
    RationalFn pairing;
    for (int i = 0; i < M.module.dim; ++i) pairing += v[i] * fv[i][0];
    return pairing.in_A0();
}

void check_lattice(const GlobalBasisDatum& M, CheckReport& rep) {
    const int n = M.module.dim;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalFn x = M.form2[a][b];
            if (a == b) x -= RationalFn(1);
            rep.require(x.in_qA0(), "Gram matrix of the second form is not almost "
                                    "orthonormal at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto o = M.form2[a][b].origin();
            rep.require(o.in_A0 && o.value == (a == b ? 1 : 0),
                        "origin pairing of classes is not orthonormal");
        }

    for (int b = 0; b < n; ++b) {
        Vec g = col_of(M.low, b);
        rep.require(in_lattice(M, g), "global basis vector escapes the lattice");
        rep.require(!in_lattice(M, vec_scaled(g, rf_p(-1))),
                    "lattice admits a p-denominator");
        rep.require(!in_lattice(M, vec_scaled(g, rf_q(-1))),
                    "lattice admits a q-denominator");
    }

    // sampled agreement of the form criterion with the coordinate span
    for (int s = 0; s < 3; ++s) {
        Vec v(n);
        for (int b = 0; b < n; ++b)
            v[b] = s == 0 ? RationalFn(1)
                          : s == 1 ? rf_q(b % 3)
                                   : rf_p(1) * rf_q(-b);
        rep.require(in_lattice(M, v), "A0-combination left the lattice");
    }
    if (n > 1) {
        Vec v(n, RationalFn(1));
        v[0] = rf_p(-1);
        rep.require(!in_lattice(M, v), "pole coordinate slipped into the lattice");
    }
}

void check_balanced(const GlobalBasisDatum& M, const Mat& cand, CheckReport& rep) {
    const int n = M.module.dim;
    QS_CHECK(mat_rows(cand) == n && mat_cols(cand) == n,
             "candidate basis has the wrong shape");
    Mat origin = mat_zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const RationalFn& x = cand[a][b];
            rep.require(x.is_laurent(), "candidate basis leaves the integral span");
            rep.require(x.in_A0(), "candidate basis leaves the lattice");
            rep.require(x.bar().in_A0(), "candidate basis leaves the conjugate lattice");
            auto o = x.origin();
            if (o.in_A0) origin[a][b] = RationalFn(Rational(o.value));
        }
    rep.require(mat_rank(origin) == n,
                "candidate basis does not descend to a basis at the origin");
}

void check_a_span(const GlobalBasisDatum& M, CheckReport& rep) {
    for (int i = 1; i <= M.module.r; ++i) {
        for (int n = 1; n <= M.module.dim; ++n) {
            Mat de = M.module.divided_e(i, n);
            Mat df = M.module.divided_f(i, n);
            bool ok = true;
            for (const Mat* m : {&de, &df})
                for (const auto& row : *m)
                    for (const auto& x : row) ok = ok && x.is_laurent();
            rep.require(ok, "divided power " + std::to_string(n) + " at index " +
                            std::to_string(i) + " leaves the integral span");
            if (mat_is_zero(de) && mat_is_zero(df)) break;
        }
    }
}

CheckReport check_global_basis(const GlobalBasisDatum& M) {
    CheckReport rep;
    check_psij(M, rep);
    rep.require(mat_mul(M.form1, M.up) == mat_identity(M.module.dim),
                "upper and lower bases are not dual under the first form");
    rep.require(M.form1[M.hw][M.hw] == RationalFn(1) &&
                    M.form2[M.hw][M.hw] == RationalFn(1),
                "forms are not normalized on the highest weight vector");
    check_lattice(M, rep);
    check_balanced(M, M.low, rep);
    check_a_span(M, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// classes and strings

ClassResult reduce_class(const Vec& coords) {
    ClassResult res;
    res.coords = coords;
    res.in_lattice = true;
    for (const auto& x : coords)
        if (!x.in_A0()) {
            res.in_lattice = false;
            return res;
        }
    int nonzero = 0;
    for (size_t b = 0; b < coords.size(); ++b) {
        Rational v = coords[b].origin().value;
        if (v == 0) continue;
        ++nonzero;
        res.cls = (int)b;
        res.coeff = v;
    }
    res.single = nonzero <= 1;
    if (nonzero == 0) res.cls = -1;
    return res;
}

std::optional<std::pair<Vec, int>> normalize_class(const Vec& v) {
    std::optional<std::pair<Vec, int>> out;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        Vec w = vec_scaled(v, RationalFn(1) / v[j]);
        ClassResult res = reduce_class(w);
        if (!res.in_lattice || !res.single || res.cls < 0 || res.coeff != 1) continue;
        if (out) {
            QS_CHECK(out->second == res.cls, "ambiguous class normalization");
            continue;
        }
        out = {std::move(w), res.cls};
    }
    return out;
}

namespace {

StringBasis string_decomposition_raw(const Mat& e, const Mat& f, int i) {
    const int n = mat_rows(e);
    StringBasis sb;
    sb.i = i;
    std::vector<Vec> heads = kernel_basis(e);
    std::vector<Vec> cols;
    for (size_t s = 0; s < heads.size(); ++s) {
        Vec cur = heads[s];
        int len = 0;
        Mat fp = mat_identity(n);
        while (!vec_is_zero(cur)) {
            cols.push_back(cur);
            sb.pos.push_back({(int)s, len});
            ++len;
            fp = mat_mul(f, fp);
            cur = mat_vec(mat_scaled(fp, RationalFn(1) / rf_qfact(len)), heads[s]);
        }
        sb.len.push_back(len);
    }
    QS_CHECK((int)cols.size() == n, "string decomposition does not fill the module");
    sb.basis = mat_zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) sb.basis[a][j] = cols[j][a];

    Mat up = mat_zero(n, n), down = mat_zero(n, n);
    std::map<std::pair<int, int>, int> at;
    for (int j = 0; j < n; ++j) at[sb.pos[j]] = j;
    for (int j = 0; j < n; ++j) {
        auto [s, m] = sb.pos[j];
        if (auto it = at.find({s, m + 1}); it != at.end()) down[it->second][j] = RationalFn(1);
        if (auto it = at.find({s, m - 1}); it != at.end()) up[it->second][j] = RationalFn(1);
    }
    Mat inv = mat_inverse(sb.basis);
    sb.ftil = mat_mul(sb.basis, mat_mul(down, inv));
    sb.etil = mat_mul(sb.basis, mat_mul(up, inv));
    return sb;
}

} // namespace

StringBasis string_decomposition(const UjModuleDatum& M, int i) {
    QS_CHECK(1 <= i && i <= M.r, "string index out of range");
    return string_decomposition_raw(M.emat[i - 1], M.fmat[i - 1], i);
}

namespace {

// applies a class map repeatedly and counts the steps until zero
int class_steps(const std::vector<int>& map, int b) {
    int steps = 0;
    while (b >= 0 && map[b] >= 0) {
        b = map[b];
        ++steps;
        QS_CHECK(steps <= (int)map.size(), "class map cycles");
    }
    return steps;
}

std::vector<int> class_map_of(const Mat& op, int dim, CheckReport& rep,
                              const std::string& name) {
    std::vector<int> map(dim, -1);
    for (int b = 0; b < dim; ++b) {
        ClassResult res = reduce_class(col_of(op, b));
        rep.require(res.in_lattice, name + " leaves the lattice on class " +
                                        std::to_string(b));
        rep.require(res.single, name + " is not class-valued on class " +
                                    std::to_string(b));
        if (!res.in_lattice || !res.single) continue;
        rep.require(res.cls < 0 || res.coeff == 1,
                    name + " distorts the class coefficient on class " +
                        std::to_string(b));
        map[b] = res.cls;
    }
    return map;
}

} // namespace

PlusOps build_plus_ops(const GlobalBasisDatum& M, CheckReport& rep);

CrystalOps crystal_operators(const GlobalBasisDatum& M, CheckReport& rep,
                             bool with_primed) {
    const int r = M.module.r, n = M.module.dim;
    CrystalOps ops;
    for (int i = 1; i <= r; ++i) {
        StringBasis sb = string_decomposition(M.module, i);
        ops.ftil.push_back(class_map_of(sb.ftil, n, rep, "ftil_" + std::to_string(i)));
        ops.etil.push_back(class_map_of(sb.etil, n, rep, "etil_" + std::to_string(i)));
        std::vector<int> eps(n), phi(n);
        for (int b = 0; b < n; ++b) {
            eps[b] = class_steps(ops.etil.back(), b);
            phi[b] = class_steps(ops.ftil.back(), b);
        }
        ops.eps.push_back(std::move(eps));
        ops.phi.push_back(std::move(phi));
    }
    if (with_primed && r >= 2) {
        ops.etilp.assign(r - 1, {});
        ops.ftilp.assign(r - 1, {});
        PlusOps po = build_plus_ops(M, rep);
        ops.etilp[r - 2] = po.ecls;
        ops.ftilp[r - 2] = po.fcls;
    }
    return ops;
}

// ---------------------------------------------------------------------------
// modified Kashiwara operators

Mat modified_kashiwara(const UjModuleDatum& M, int i, int n) {
    QS_CHECK(1 <= i && i <= M.r, "generator index out of range");
    const int dim = M.dim;
    Mat acc = mat_zero(dim, dim);
    for (int t = std::max(0, -n);; ++t) {
        Mat et = M.divided_e(i, t);
        if (t > 0 && mat_is_zero(et)) break;
        Mat fnt = M.divided_f(i, n + t);
        if (!mat_is_zero(fnt)) {
            // A_n(t;x) = (-1)^t q^{t(1-n)} x^t prod_{s<t} (1 - q^{n+2s}), with an
            // extra p^t q^{t(t-1)/2} for the first index
            LaurentPoly scalar = LaurentPoly::monomial(t % 2 == 0 ? 1 : -1,
                                                       i == 1 ? t : 0,
                                                       t * (1 - n) +
                                                           (i == 1 ? t * (t - 1) / 2 : 0));
            for (int s = 0; s < t; ++s)
                scalar *= LaurentPoly(1) - LaurentPoly::var_q(n + 2 * s);
            Mat diag = mat_zero(dim, dim);
            for (int v = 0; v < dim; ++v) {
                RationalFn x = RationalFn(1);
                for (int u = 0; u < t; ++u) x *= M.kdiag[i - 1][v];
                diag[v][v] = RationalFn(scalar) * x;
            }
            acc = mat_add(acc, mat_mul(fnt, mat_mul(et, diag)));
        }
        if (t > dim + std::abs(n) + 1) break;
    }
    return acc;
}

void check_modified_kashiwara(const GlobalBasisDatum& M, const CrystalOps& ops,
                              CheckReport& rep) {
    const int r = M.module.r, dim = M.module.dim;
    for (int i = 1; i <= r; ++i) {
        for (int n = 0; n <= 3; ++n) {
            Mat mk = modified_kashiwara(M.module, i, n);
            for (int b = 0; b < dim; ++b) {
                ClassResult res = reduce_class(mat_vec(mk, col_of(M.low, b)));
                rep.require(res.in_lattice,
                            "modified operator leaves the lattice at index " +
                                std::to_string(i) + " power " + std::to_string(n));
                if (!res.in_lattice) continue;
                int expect = b;
                for (int s = 0; s < n && expect >= 0; ++s)
                    expect = ops.ftil[i - 1][expect];
                if (expect < 0) {
                    rep.require(res.cls == -1,
                                "modified operator misses zero mod q at index " +
                                    std::to_string(i));
                } else {
                    rep.require(res.single && res.cls == expect && res.coeff == 1,
                                "modified operator disagrees with the crystal "
                                "operator at index " + std::to_string(i));
                }
            }
        }
    }

    if (r == 1) {
        // on a one-string module f~^(n) f^(m) hw = c f^(m+n) hw with
        // c in 1 + qA0 intersect the Laurent ring
        Vec u = col_of(M.low, M.hw);
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n + m <= 3; ++n) {
                Vec lhs = mat_vec(modified_kashiwara(M.module, 1, n),
                                  mat_vec(M.module.divided_f(1, m), u));
                Vec rhs = mat_vec(M.module.divided_f(1, m + n), u);
                if (vec_is_zero(rhs)) {
                    rep.require(vec_is_zero(lhs),
                                "modified operator escapes a finished string");
                    continue;
                }
                int k = 0;
                while (rhs[k].is_zero()) ++k;
                RationalFn c = lhs[k] / rhs[k];
                rep.require(lhs == vec_scaled(rhs, c),
                            "modified operator leaves the string line");
                rep.require(c.is_laurent() && (c - RationalFn(1)).in_qA0(),
                            "string coefficient is not in 1 + qA0 at powers (" +
                                std::to_string(m) + "," + std::to_string(n) + ")");
            }
    }
}

void check_leading_coefficients(const GlobalBasisDatum& M, const CrystalOps& ops,
                                CheckReport& rep) {
    const int r = M.module.r, dim = M.module.dim;
    for (int i = 1; i <= r; ++i) {
        for (int b = 0; b < dim; ++b) {
            Vec x = mat_vec(M.module.fmat[i - 1], col_of(M.low, b));
            int lead = ops.ftil[i - 1][b];
            int eb = ops.eps[i - 1][b];
            for (int c = 0; c < dim; ++c) {
                if (x[c].is_zero()) continue;
                if (c == lead) {
                    rep.require(x[c] == rf_qint(eb + 1),
                                "leading coefficient of f_" + std::to_string(i) +
                                    " is not the expected quantum integer");
                    continue;
                }
                int ec = ops.eps[i - 1][c];
                rep.require(ec > eb + 1,
                            "f-expansion hits a class with a short string");
                bool strict = x[c].is_laurent() && x[c].as_laurent().q_only() &&
                              x[c].as_laurent().min_b() >= 2 - ec;
                rep.require(strict, "f-expansion tail coefficient leaves q^{2-eps} Q[q] "
                                    "at (" + std::to_string(c) + "," +
                                    std::to_string(b) + "): " + x[c].str());
            }
        }
        if (i == 1) continue;
        for (int b = 0; b < dim; ++b) {
            Vec x = mat_vec(M.module.emat[i - 1], col_of(M.low, b));
            int lead = ops.etil[i - 1][b];
            int pb = ops.phi[i - 1][b];
            for (int c = 0; c < dim; ++c) {
                if (x[c].is_zero()) continue;
                if (c == lead) {
                    rep.require(x[c] == rf_qint(pb + 1),
                                "leading coefficient of e_" + std::to_string(i) +
                                    " is not the expected quantum integer");
                    continue;
                }
                int pc = ops.phi[i - 1][c];
                rep.require(pc > pb + 1,
                            "e-expansion hits a class with a short string");
                bool strict = x[c].is_laurent() && x[c].as_laurent().q_only() &&
                              x[c].as_laurent().min_b() >= 2 - pc;
                rep.require(strict, "e-expansion tail coefficient leaves q^{2-phi} Q[q]");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// branching and the plus operators

BranchDecomp branch_module(const GlobalBasisDatum& M, int level) {
    const int r = M.module.r, n = M.module.dim;
    QS_CHECK(2 <= level && level <= r, "branching level out of range");
    BranchDecomp bd;
    bd.level = level;
    QS_CHECK(level == r, "branching below the top index is not implemented");

    std::vector<Bipartition> types = branch_set(M.shape);
    Mat stacked;
    for (int j = 1; j < level; ++j)
        for (const Vec& row : M.module.emat[j - 1]) stacked.push_back(row);

    int total = 0;
    for (const Bipartition& mu : types) {
        WeightJ wmu = wtj(mu);
        Mat sys = stacked;
        for (int j = 1; j < level; ++j) {
            Mat k = M.module.kmat(j, 1);
            for (int a = 0; a < n; ++a) k[a][a] -= rf_q(wmu.coords[j - 1]);
            for (const Vec& row : k) sys.push_back(row);
        }
        std::vector<Vec> ker = kernel_basis(sys);
        QS_CHECK(!ker.empty(), "expected branching constituent is missing: " + mu.str());
        QS_CHECK(ker.size() == 1, "branching is not multiplicity-free at " + mu.str());

        SpanBuilder span(n);
        std::vector<Vec> cols = {ker[0]};
        span.add(ker[0]);
        for (size_t head = 0; head < cols.size(); ++head) {
            Vec cur = cols[head];
            for (int j = 1; j < level; ++j)
                for (const Mat* a : {&M.module.emat[j - 1], &M.module.fmat[j - 1]}) {
                    Vec next = mat_vec(*a, cur);
                    if (!vec_is_zero(next) && span.add(next)) cols.push_back(next);
                }
        }
        std::vector<WeightJ> have, want;
        for (const Vec& c : cols) {
            for (int b = 0; b < n; ++b)
                if (!c[b].is_zero()) {
                    WeightJ w;
                    w.coords.assign(M.module.wt[b].coords.begin(),
                                    M.module.wt[b].coords.begin() + level - 1);
                    have.push_back(w);
                    break;
                }
        }
        for (const Bitableau& t : enumerate_sst(mu)) want.push_back(wtj(t));
        std::sort(have.begin(), have.end());
        std::sort(want.begin(), want.end());
        QS_CHECK(have == want, "branching constituent has the wrong character: " + mu.str());

        bd.types.push_back(mu);
        bd.hwvec.push_back(ker[0]);
        bd.offset.push_back(total);
        Mat comp = mat_zero(n, (int)cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (int a = 0; a < n; ++a) comp[a][j] = cols[j][a];
        bd.comp.push_back(std::move(comp));
        total += (int)cols.size();
    }
    QS_CHECK(total == n, "branching constituents do not fill the module");

    bd.basis = mat_zero(n, n);
    for (size_t t = 0; t < bd.types.size(); ++t)
        for (int j = 0; j < mat_cols(bd.comp[t]); ++j)
            for (int a = 0; a < n; ++a) bd.basis[a][bd.offset[t] + j] = bd.comp[t][a][j];
    bd.basis_inv = mat_inverse(bd.basis);
    return bd;
}

PlusOps build_plus_ops(const GlobalBasisDatum& M, CheckReport& rep) {
    const int r = M.module.r, n = M.module.dim;
    QS_CHECK(r >= 2, "plus operators need rank at least two");
    PlusOps po;
    po.i = r;
    po.etil_plus = mat_zero(n, n);
    po.ftil_plus = mat_zero(n, n);
    po.ecls.assign(n, -1);
    po.fcls.assign(n, -1);

    BranchDecomp bd = branch_module(M, r);
    std::map<Bipartition, int> tindex;
    for (size_t t = 0; t < bd.types.size(); ++t) tindex[bd.types[t]] = (int)t;

    // projection onto the head line of one constituent along the rest of the
    // decomposition basis; this is the canonical weight projection inside the
    // constituent composed with the constituent projection
    auto head_proj = [&](int t) {
        Mat p = mat_zero(n, n);
        const Vec& h = bd.hwvec[t];
        const Vec& dual = bd.basis_inv[bd.offset[t]];
        for (int a = 0; a < n; ++a) {
            if (h[a].is_zero()) continue;
            for (int b = 0; b < n; ++b)
                if (!dual[b].is_zero()) p[a][b] = h[a] * dual[b];
        }
        return p;
    };

    std::vector<std::pair<int, int>> arrows;
    for (const Bipartition& mu : e_r_set(M.shape)) {
        auto it = tindex.find(mu);
        QS_CHECK(it != tindex.end(), "raising-set member is not a constituent");
        const int tmu = it->second;

        auto vn = normalize_class(bd.hwvec[tmu]);
        rep.require(vn.has_value(),
                    "constituent head is not a lattice class at " + mu.str());
        if (!vn) continue;
        const Vec& vhat = vn->first;
        const int bcls = vn->second;

        Vec w = mat_vec(M.module.emat[r - 1], vhat);
        // the raising operator kills this head line, so the summand is zero
        if (vec_is_zero(w)) continue;

        // candidate targets add one box to a plus row of mu; at the top index
        // the path to the target head line is empty, so the line is the
        // highest weight line of the enlarged constituent
        struct Cand {
            int target = -1;
            Vec uhat;
            int ucls = -1;
            RationalFn coeff; // head projection of e_r vhat is coeff * uhat
            int nq = 0;       // quantum integer with coeff/[nq] in 1 + qA0
        };
        std::vector<Cand> valid;
        bool lower_path = false;
        for (int j = 2; j <= r; ++j) {
            std::vector<int> plus = mu.plus;
            plus[j - 2] += 1;
            bool shaped = true;
            for (size_t k = 0; k + 1 < plus.size(); ++k)
                if (plus[k] < plus[k + 1]) shaped = false;
            if (!shaped) continue;
            Bipartition mup(mu.minus, plus);
            auto pit = tindex.find(mup);
            if (pit == tindex.end()) continue;
            if (j < r) {
                lower_path = true;
                continue;
            }
            auto un = normalize_class(bd.hwvec[pit->second]);
            if (!un) continue;
            Cand cand;
            cand.target = pit->second;
            cand.uhat = un->first;
            cand.ucls = un->second;
            Vec z = mat_vec(head_proj(cand.target), w);
            if (vec_is_zero(z)) continue;
            int jnz = 0;
            while (cand.uhat[jnz].is_zero()) ++jnz;
            cand.coeff = z[jnz] / cand.uhat[jnz];
            QS_CHECK(z == vec_scaled(cand.uhat, cand.coeff),
                     "head projection left the head line");
            // distinct quantum integers have distinct leading powers, so at
            // most one normalization can work
            for (int nq = 1; nq <= n + 1 && cand.nq == 0; ++nq)
                if ((cand.coeff / rf_qint(nq) - RationalFn(1)).in_qA0()) cand.nq = nq;
            if (cand.nq == 0) continue;
            valid.push_back(std::move(cand));
        }
        rep.require(!lower_path,
                    "raising path needs primed operators below the top index at " +
                        mu.str());
        if (lower_path) continue;
        // with no admissible target line the raising image has no leading
        // class, so this summand is zero as well
        if (valid.empty()) continue;
        rep.require(valid.size() == 1,
                    "raising target is not unique for constituent " + mu.str());
        if (valid.size() != 1) continue;
        const Cand& cand = valid[0];

        Mat piece = mat_mul(head_proj(cand.target),
                            mat_mul(M.module.emat[r - 1], head_proj(tmu)));
        po.etil_plus =
            mat_add(po.etil_plus, mat_scaled(piece, RationalFn(1) / rf_qint(cand.nq)));

        // the lowering piece inverts the head-line isomorphism
        RationalFn ct = cand.coeff / rf_qint(cand.nq);
        int jnz = 0;
        while (cand.uhat[jnz].is_zero()) ++jnz;
        RationalFn kappa = bd.hwvec[cand.target][jnz] / cand.uhat[jnz];
        const Vec& udual = bd.basis_inv[bd.offset[cand.target]];
        Mat back = mat_zero(n, n);
        for (int a = 0; a < n; ++a) {
            if (vhat[a].is_zero()) continue;
            for (int b = 0; b < n; ++b)
                if (!udual[b].is_zero()) back[a][b] = vhat[a] * udual[b] * kappa / ct;
        }
        po.ftil_plus = mat_add(po.ftil_plus, back);

        po.sources.push_back(bcls);
        arrows.push_back({bcls, cand.ucls});
        rep.require(M.module.wt[cand.ucls] == M.module.wt[bcls] + gamma_j(r, r),
                    "raising image has the wrong weight at " + mu.str());
    }

    std::map<int, int> exp_e, exp_f;
    for (auto [s, t] : arrows) {
        exp_e[s] = t;
        exp_f[t] = s;
    }
    rep.require(exp_f.size() == arrows.size(), "raising images collide");
    for (int b = 0; b < n; ++b) {
        ClassResult re = reduce_class(col_of(po.etil_plus, b));
        rep.require(re.in_lattice && re.single,
                    "primed raising is not class-valued on class " + std::to_string(b));
        int we = exp_e.count(b) ? exp_e[b] : -1;
        if (re.in_lattice && re.single)
            rep.require(re.cls == we && (we < 0 || re.coeff == 1),
                        "primed raising disagrees with the branching on class " +
                            std::to_string(b));
        po.ecls[b] = we;

        ClassResult rf = reduce_class(col_of(po.ftil_plus, b));
        rep.require(rf.in_lattice && rf.single,
                    "primed lowering is not class-valued on class " + std::to_string(b));
        int wf = exp_f.count(b) ? exp_f[b] : -1;
        if (rf.in_lattice && rf.single)
            rep.require(rf.cls == wf && (wf < 0 || rf.coeff == 1),
                        "primed lowering disagrees with the branching on class " +
                            std::to_string(b));
        po.fcls[b] = wf;
    }
    return po;
}

// ---------------------------------------------------------------------------
// labels

namespace {

int uf_find(std::vector<int>& up, int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
}

} // namespace

void assign_labels(GlobalBasisDatum& M, const CrystalOps& ops, CheckReport& rep) {
    const int r = M.module.r, n = M.module.dim;
    // chain[l-1][b] is the shape of the rank-l constituent containing class b
    std::vector<std::vector<Bipartition>> chain(
        (size_t)std::max(0, r - 1),
        std::vector<Bipartition>((size_t)n, Bipartition({0}, {})));

    for (int l = r - 1; l >= 1; --l) {
        std::vector<int> up(n);
        for (int b = 0; b < n; ++b) up[b] = b;
        auto unite = [&up](int a, int b) {
            a = uf_find(up, a);
            b = uf_find(up, b);
            if (a != b) up[std::max(a, b)] = std::min(a, b);
        };
        for (int i = 1; i <= l; ++i)
            for (int b = 0; b < n; ++b) {
                if (ops.ftil[i - 1][b] >= 0) unite(b, ops.ftil[i - 1][b]);
                if (ops.etil[i - 1][b] >= 0) unite(b, ops.etil[i - 1][b]);
            }
        for (int i = 2; i <= l; ++i) {
            bool have = (int)ops.ftilp.size() >= i - 1 && !ops.ftilp[i - 2].empty();
            rep.require(have, "labels need primed operators at index " +
                                  std::to_string(i) + " which are not available");
            if (!have) continue;
            for (int b = 0; b < n; ++b) {
                if (ops.ftilp[i - 2][b] >= 0) unite(b, ops.ftilp[i - 2][b]);
                if (ops.etilp[i - 2][b] >= 0) unite(b, ops.etilp[i - 2][b]);
            }
        }

        std::map<int, std::vector<int>> comps;
        for (int b = 0; b < n; ++b) comps[uf_find(up, b)].push_back(b);

        for (const auto& [root, members] : comps) {
            Bipartition parent = l == r - 1 ? M.shape : chain[l][(size_t)members[0]];
            bool consistent = true;
            if (l < r - 1)
                for (int b : members)
                    if (!(chain[l][(size_t)b] == parent)) consistent = false;
            rep.require(consistent, "restriction component straddles two constituents");

            std::vector<std::vector<int>> have;
            for (int b : members)
                have.emplace_back(M.module.wt[b].coords.begin(),
                                  M.module.wt[b].coords.begin() + l);
            std::sort(have.begin(), have.end());

            std::vector<Bipartition> matched;
            for (const Bipartition& mu : branch_set(parent)) {
                std::vector<std::vector<int>> want;
                for (const Bitableau& t : enumerate_sst(mu))
                    want.push_back(wtj(t).coords);
                std::sort(want.begin(), want.end());
                if (want == have) matched.push_back(mu);
            }
            rep.require(matched.size() == 1,
                        "restriction component does not match a unique constituent");
            if (matched.size() != 1) continue;
            for (int b : members) chain[l - 1][(size_t)b] = matched[0];
        }
    }

    std::vector<Bitableau> labels;
    const Bitableau fallback = t_lambda(M.shape);
    for (int b = 0; b < n; ++b) {
        Bipartition mu1 = r == 1 ? M.shape : chain[0][(size_t)b];
        const int a = mu1.minus[0], a2 = mu1.minus[1], c = mu1.plus[0];
        const int n1 = ops.eps[0][b];
        if (n1 > a - a2) {
            rep.require(false, "first-index string statistic exceeds the shape on class " +
                                   std::to_string(b));
            labels.push_back(fallback);
            continue;
        }
        std::vector<std::vector<int>> tm(r + 1), tp(r);
        tm[0].assign((size_t)(a - n1), 0);
        tm[0].insert(tm[0].end(), (size_t)n1, -1);
        tm[1].assign((size_t)a2, -1);
        tp[0].assign((size_t)c, 1);
        bool nested = true;
        for (int l = 2; l <= r && nested; ++l) {
            const Bipartition& cur = l == r ? M.shape : chain[l - 1][(size_t)b];
            const Bipartition& prev = chain[l - 2][(size_t)b];
            for (int i = 0; i <= l && nested; ++i) {
                int before = i < l ? prev.row(-i) : 0;
                if (cur.row(-i) < before)
                    nested = false;
                else
                    tm[i].insert(tm[i].end(), (size_t)(cur.row(-i) - before), -l);
            }
            for (int k = 1; k <= l && nested; ++k) {
                int before = k < l ? prev.row(k) : 0;
                if (cur.row(k) < before)
                    nested = false;
                else
                    tp[k - 1].insert(tp[k - 1].end(), (size_t)(cur.row(k) - before), l);
            }
        }
        if (!nested) {
            rep.require(false,
                        "constituent chain is not nested on class " + std::to_string(b));
            labels.push_back(fallback);
            continue;
        }
        try {
            labels.push_back(Bitableau(std::move(tm), std::move(tp)));
        } catch (const error& e) {
            rep.require(false, std::string("label filling is not semistandard: ") +
                                   e.what());
            labels.push_back(fallback);
        }
    }

    std::vector<Bitableau> got = labels, all = enumerate_sst(M.shape);
    std::sort(got.begin(), got.end());
    std::sort(all.begin(), all.end());
    rep.require(got == all, "labels are not a bijection with the tableaux");
    for (int b = 0; b < n; ++b)
        rep.require(wtj(labels[b]) == M.module.wt[b],
                    "label weight disagrees with the module weight on class " +
                        std::to_string(b));
    rep.require(labels[M.hw] == t_lambda(M.shape),
                "highest weight class is not the row filling");
    M.labels = std::move(labels);
}

// ---------------------------------------------------------------------------
// the tensor module: filtration and support conditions

namespace {

Vec densify_tv(const TensorBimodule& T, const TensorVec& v) {
    Vec x((size_t)T.dim());
    for (const auto& [w, c] : v) x[(size_t)T.word_index(w)] = c;
    return x;
}

template <class Act>
Mat word_matrix(const TensorBimodule& T, Act&& act) {
    const int N = T.dim();
    Mat m = mat_zero(N, N);
    for (int j = 0; j < N; ++j) {
        TensorVec u{{T.basis_words()[(size_t)j], RationalFn(1)}};
        Vec col = densify_tv(T, act(u));
        for (int i = 0; i < N; ++i) m[i][j] = col[i];
    }
    return m;
}

// cell basis columns of the tensor module in word coordinates
Mat cell_basis_matrix(const TensorBimodule& T) {
    const SchurAlgebra& S = T.schur();
    const int N = T.dim();
    const auto& tb = S.t_basis();
    QS_CHECK((int)tb.size() == N, "cell basis size must match the word basis");
    Mat g = mat_zero(N, N);
    for (int t = 0; t < N; ++t) {
        Vec col = densify_tv(T, T.iso_inv(S.c_elt(tb[(size_t)t].first,
                                                  tb[(size_t)t].second)));
        for (int i = 0; i < N; ++i) g[i][t] = col[i];
    }
    return g;
}

TensorVec sparsify_tv(const TensorBimodule& T, const Vec& x) {
    TensorVec v;
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) v[T.basis_words()[i]] = x[i];
    return v;
}

} // namespace

FiltrationReport filtration_check(const TensorBimodule& T) {
    const SchurAlgebra& S = T.schur();
    const int r = T.r(), d = T.d(), N = T.dim();
    FiltrationReport fr;
    fr.dim = N;
    auto req = [&fr](bool c, const std::string& what) {
        if (!c) {
            fr.ok = false;
            fr.failures.push_back(what);
        }
    };

    std::vector<Mat> em, fm, km;
    for (int i = 1; i <= r; ++i) {
        em.push_back(word_matrix(T, [&](const TensorVec& v) { return T.act_e(i, v); }));
        fm.push_back(word_matrix(T, [&](const TensorVec& v) { return T.act_f(i, v); }));
        km.push_back(word_matrix(T, [&](const TensorVec& v) { return T.act_k(i, 1, v); }));
    }

    Mat g = cell_basis_matrix(T);
    for (int t = 0; t < N; ++t)
        req(densify_tv(T, T.bar_vec(sparsify_tv(T, col_of(g, t)))) == col_of(g, t),
            "cell basis column " + std::to_string(t) + " is not bar-invariant");

    // isotypic components as sums of intertwiner images; highest weight
    // spaces cannot be used here because distinct shapes can share their
    // highest weight
    std::vector<Bipartition> types;
    std::vector<int> mults, ssts;
    std::vector<SpanBuilder> isotypic;
    for (const Bipartition& lam : enumerate_bipartitions(r, d)) {
        GlobalBasisDatum L;
        try {
            L = build_irreducible(T, lam);
        } catch (const error&) {
            continue; // shape does not occur in this module
        }
        const int dl = L.module.dim;
        const int unk = N * dl;

        // kernel of theta * a_L - a_M * theta over all generators, theta
        // flattened row-major
        Mat sys = {Vec((size_t)unk)};
        auto equations = [&](const Mat& am, const Mat& al) {
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < dl; ++b) {
                    Vec row((size_t)unk);
                    for (int j = 0; j < dl; ++j)
                        row[(size_t)(a * dl + j)] =
                            row[(size_t)(a * dl + j)] + al[(size_t)j][(size_t)b];
                    for (int c = 0; c < N; ++c)
                        row[(size_t)(c * dl + b)] =
                            row[(size_t)(c * dl + b)] - am[(size_t)a][(size_t)c];
                    sys.push_back(std::move(row));
                }
        };
        for (int i = 1; i <= r; ++i) {
            equations(em[(size_t)(i - 1)], L.module.emat[(size_t)(i - 1)]);
            equations(fm[(size_t)(i - 1)], L.module.fmat[(size_t)(i - 1)]);
            equations(km[(size_t)(i - 1)], L.module.kmat(i, 1));
        }
        std::vector<Vec> homs = kernel_basis(sys);
        if (homs.empty()) continue;

        SpanBuilder span(N);
        for (const Vec& h : homs) {
            Mat theta = mat_zero(N, dl);
            for (int a = 0; a < N; ++a)
                for (int j = 0; j < dl; ++j)
                    theta[(size_t)a][(size_t)j] = h[(size_t)(a * dl + j)];
            req(mat_rank(theta) == dl,
                "intertwiner image is not faithful at " + lam.str());
            for (int j = 0; j < dl; ++j) span.add(col_of(theta, j));
        }
        int sst = (int)enumerate_sst(lam).size();
        req(sst == dl,
            "irreducible dimension disagrees with its tableaux at " + lam.str());
        req(span.rank() == (int)homs.size() * sst,
            "isotypic dimension mismatch at " + lam.str());
        types.push_back(lam);
        mults.push_back((int)homs.size());
        ssts.push_back(sst);
        isotypic.push_back(std::move(span));
    }
    {
        int total = 0;
        for (size_t t = 0; t < types.size(); ++t) total += mults[t] * ssts[t];
        req(total == N, "isotypic components do not fill the module");
    }

    // each cone span must be spanned by the cell vectors it contains, and
    // every cell vector must sit in exactly one layer
    std::vector<int> layer(N, -1);
    for (size_t t = 0; t < types.size(); ++t) {
        SpanBuilder wge(N), wgt(N);
        for (size_t u = 0; u < types.size(); ++u) {
            if (!dominance_leq(types[t], types[u], DomOrder::bipar)) continue;
            for (const Vec& row : isotypic[u].rows()) {
                wge.add(row);
                if (!(types[u] == types[t])) wgt.add(row);
            }
        }
        int inge = 0, ingt = 0;
        for (int c = 0; c < N; ++c) {
            bool above = wge.contains(col_of(g, c));
            bool strict = wgt.contains(col_of(g, c));
            if (above) ++inge;
            if (strict) ++ingt;
            if (above && !strict) {
                req(layer[c] == -1, "cell basis vector sits in two layers");
                layer[c] = (int)t;
            }
        }
        req(inge == wge.rank(),
            "cone span exceeds the cell vectors it contains at " + types[t].str());
        req(ingt == wgt.rank(),
            "strict cone span exceeds the cell vectors it contains at " +
                types[t].str());
    }
    for (int c = 0; c < N; ++c)
        req(layer[c] >= 0, "cell basis vector " + std::to_string(c) +
                               " missed every layer");

    // subquotient action on the layer classes
    for (size_t t = 0; t < types.size(); ++t) {
        std::vector<int> below, mine;
        for (int c = 0; c < N; ++c) {
            if (layer[c] == (int)t) {
                mine.push_back(c);
            } else if (layer[c] >= 0 &&
                       dominance_leq(types[t], types[(size_t)layer[c]],
                                     DomOrder::bipar) &&
                       !(types[(size_t)layer[c]] == types[t])) {
                below.push_back(c);
            }
        }
        if ((int)mine.size() != mults[t] * ssts[t]) {
            req(false, "layer size disagrees with the multiplicity at " +
                           types[t].str());
            continue;
        }

        Mat cb = mat_zero(N, (int)(below.size() + mine.size()));
        for (size_t j = 0; j < below.size(); ++j)
            for (int i = 0; i < N; ++i) cb[i][j] = g[i][(size_t)below[j]];
        for (size_t j = 0; j < mine.size(); ++j)
            for (int i = 0; i < N; ++i)
                cb[i][below.size() + j] = g[i][(size_t)mine[j]];

        bool stable = true;
        auto quotient = [&](const Mat& a) {
            Mat q = mat_zero((int)mine.size(), (int)mine.size());
            for (size_t j = 0; j < mine.size() && stable; ++j) {
                auto sol = solve_any(cb, mat_vec(a, col_of(g, mine[j])));
                if (!sol) {
                    stable = false;
                    break;
                }
                for (size_t i = 0; i < mine.size(); ++i)
                    q[i][j] = (*sol)[below.size() + i];
            }
            return q;
        };
        std::vector<Mat> qe, qf;
        for (int i = 0; i < r; ++i) {
            qe.push_back(quotient(em[(size_t)i]));
            qf.push_back(quotient(fm[(size_t)i]));
        }
        if (!stable) {
            req(false, "cone span is not stable under the action at " +
                           types[t].str());
            continue;
        }

        Mat sys;
        for (const Mat& a : qe)
            for (const Vec& row : a) sys.push_back(row);
        std::vector<Vec> heads = kernel_basis(sys);
        req((int)heads.size() == mults[t],
            "subquotient highest weight multiplicity is wrong at " + types[t].str());

        std::vector<int> headcls;
        for (const Vec& v : heads) {
            int nz = -1, cnt = 0;
            for (size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) {
                    nz = (int)i;
                    ++cnt;
                }
            bool single = cnt == 1 && v[(size_t)nz] == RationalFn(1);
            req(single, "subquotient highest weight vector is not a single class at " +
                            types[t].str());
            if (single) headcls.push_back(nz);
        }

        if (r == 1 && (int)headcls.size() == mults[t]) {
            // one-string subquotients: divided powers of the head stay single
            // classes with coefficient one and exhaust the layer
            std::set<int> covered;
            bool fine = true;
            for (int h : headcls) {
                for (int nstep = 0; nstep < ssts[t]; ++nstep) {
                    Vec cur((size_t)mine.size());
                    cur[(size_t)h] = RationalFn(1);
                    cur = mat_vec(mat_scaled(mat_pow(qf[0], nstep),
                                             RationalFn(1) / rf_qfact(nstep)),
                                  cur);
                    int nz = -1, cnt = 0;
                    for (size_t i = 0; i < cur.size(); ++i)
                        if (!cur[i].is_zero()) {
                            nz = (int)i;
                            ++cnt;
                        }
                    if (cnt != 1 || cur[(size_t)nz] != RationalFn(1) ||
                        covered.count(nz))
                        fine = false;
                    else
                        covered.insert(nz);
                }
                Vec top((size_t)mine.size());
                top[(size_t)h] = RationalFn(1);
                top = mat_vec(mat_scaled(mat_pow(qf[0], ssts[t]),
                                         RationalFn(1) / rf_qfact(ssts[t])),
                              top);
                if (!vec_is_zero(top)) fine = false;
            }
            req(fine && (int)covered.size() == (int)mine.size(),
                "subquotient basis does not match the divided power strings at " +
                    types[t].str());
        }
    }

    for (size_t t = 0; t < types.size(); ++t) fr.mult.push_back({types[t], mults[t]});
    std::sort(fr.mult.begin(), fr.mult.end());
    fr.notes.push_back("cell basis columns are fixed by the bar involution");
    return fr;
}

CheckReport property_ast_check(const TensorBimodule& T) {
    CheckReport rep;
    const int r = T.r(), N = T.dim();
    if (r == 1) return rep; // the index range below the top is empty

    Mat g = cell_basis_matrix(T);
    Mat ginv = mat_inverse(g);
    const auto& tb = T.schur().t_basis();

    std::vector<Weight> s;
    for (const auto& [lam, x] : tb) s.push_back(T.weight(T.word_of_pair(lam, x)));

    std::map<int, std::vector<int>> etil, phi;
    for (int i = 1; i <= r; ++i)
        for (int a : {i, -i}) {
            Mat ea = word_matrix(T, [&](const TensorVec& v) { return T.act_E(a, v); });
            Mat fa = word_matrix(T, [&](const TensorVec& v) { return T.act_F(a, v); });
            StringBasis sb = string_decomposition_raw(ea, fa, a);
            Mat et = mat_mul(ginv, mat_mul(sb.etil, g));
            Mat ft = mat_mul(ginv, mat_mul(sb.ftil, g));
            etil[a] = class_map_of(et, N, rep,
                                   "ambient raising at code " + std::to_string(a));
            std::vector<int> fmap = class_map_of(
                ft, N, rep, "ambient lowering at code " + std::to_string(a));
            std::vector<int> ph(N);
            for (int b = 0; b < N; ++b) ph[b] = class_steps(fmap, b);
            phi[a] = std::move(ph);
        }

    // ambient raising shifts the ambient weight by one simple root
    for (int i = 2; i <= r; ++i)
        for (int code : {i, -i})
            for (int b = 0; b < N; ++b) {
                int to = etil[code][b];
                if (to < 0) continue;
                rep.require(s[(size_t)to] == s[(size_t)b] + alpha_root(r, code),
                            "ambient raising shifts the weight wrongly at code " +
                                std::to_string(code));
            }

    // expansions of the coideal generators against the cell basis
    for (int i = 2; i <= r; ++i) {
        Mat ei = mat_mul(
            ginv,
            mat_mul(word_matrix(T, [&](const TensorVec& v) { return T.act_e(i, v); }),
                    g));
        Mat fi = mat_mul(
            ginv,
            mat_mul(word_matrix(T, [&](const TensorVec& v) { return T.act_f(i, v); }),
                    g));
        for (int b = 0; b < N; ++b) {
            int lead = etil[i][b];
            for (int c = 0; c < N; ++c) {
                const RationalFn& x = ei[c][b];
                if (x.is_zero()) continue;
                if (c == lead) {
                    rep.require(x == rf_qint(phi[i][b] + 1),
                                "leading raising coefficient is wrong at index " +
                                    std::to_string(i));
                    continue;
                }
                rep.require(x.is_laurent(),
                            "raising expansion leaves the integral span at index " +
                                std::to_string(i));
                rep.require(project_j(s[(size_t)c]) ==
                                project_j(s[(size_t)b]) + gamma_j(r, i),
                            "raising expansion crosses coideal weights at index " +
                                std::to_string(i));
                rep.require(weight_leq(s[(size_t)c],
                                       s[(size_t)b] + alpha_root(r, i)),
                            "raising expansion escapes the weight cone at index " +
                                std::to_string(i));
            }
            int leadf = etil[-i][b];
            for (int c = 0; c < N; ++c) {
                const RationalFn& x = fi[c][b];
                if (x.is_zero()) continue;
                if (c == leadf) {
                    rep.require(x == rf_qint(phi[-i][b] + 1),
                                "leading lowering coefficient is wrong at index " +
                                    std::to_string(i));
                    continue;
                }
                rep.require(x.is_laurent(),
                            "lowering expansion leaves the integral span at index " +
                                std::to_string(i));
                rep.require(project_j(s[(size_t)c]) ==
                                project_j(s[(size_t)b]) - gamma_j(r, i),
                            "lowering expansion crosses coideal weights at index " +
                                std::to_string(i));
                rep.require(weight_leq(s[(size_t)c],
                                       s[(size_t)b] + alpha_root(r, -i)),
                            "lowering expansion escapes the weight cone at index " +
                                std::to_string(i));
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// exports

nlohmann::json irrep_json(const GlobalBasisDatum& M) {
    auto matj = [](const Mat& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : m) {
            nlohmann::json out = nlohmann::json::array();
            for (const auto& x : row) out.push_back(x.str());
            rows.push_back(out);
        }
        return rows;
    };
    nlohmann::json j;
    j["shape"] = M.shape.str();
    j["degree"] = M.shape.size();
    j["rank"] = M.module.r;
    j["cell"] = M.cell;
    j["cell_dual"] = M.cellD;
    j["dim"] = M.module.dim;
    j["hw"] = M.hw;
    nlohmann::json basis = nlohmann::json::array();
    for (int c = 0; c < M.module.dim; ++c) {
        nlohmann::json e;
        e["component"] = M.celems[(size_t)c].first;
        e["y"] = M.celems[(size_t)c].second;
        e["weight"] = M.module.wt[(size_t)c].str();
        if ((int)M.labels.size() == M.module.dim)
            e["label"] = M.labels[(size_t)c].str();
        basis.push_back(e);
    }
    j["basis"] = basis;
    nlohmann::json gens;
    for (int i = 1; i <= M.module.r; ++i) {
        gens["e" + std::to_string(i)] = matj(M.module.emat[(size_t)(i - 1)]);
        gens["f" + std::to_string(i)] = matj(M.module.fmat[(size_t)(i - 1)]);
        gens["k" + std::to_string(i)] = matj(M.module.kmat(i, 1));
    }
    j["generators"] = gens;
    j["upper"] = matj(M.up);
    j["form1"] = matj(M.form1);
    j["form2"] = matj(M.form2);
    return j;
}

std::string crystal_graph_dot(const GlobalBasisDatum& M, const CrystalOps& ops) {
    std::ostringstream os;
    os << "digraph crystal {\n  rankdir=TB;\n  node [shape=box];\n";
    for (int b = 0; b < M.module.dim; ++b) {
        std::string label = (int)M.labels.size() == M.module.dim
                                ? M.labels[(size_t)b].str()
                                : "b" + std::to_string(b);
        os << "  n" << b << " [label=\"" << label << "\"];\n";
    }
    for (size_t i = 0; i < ops.ftil.size(); ++i)
        for (int b = 0; b < M.module.dim; ++b)
            if (ops.ftil[i][(size_t)b] >= 0)
                os << "  n" << b << " -> n" << ops.ftil[i][(size_t)b]
                   << " [label=\"f~" << i + 1 << "\"];\n";
    for (size_t i = 0; i < ops.ftilp.size(); ++i) {
        if (ops.ftilp[i].empty()) continue;
        for (int b = 0; b < M.module.dim; ++b)
            if (ops.ftilp[i][(size_t)b] >= 0)
                os << "  n" << b << " -> n" << ops.ftilp[i][(size_t)b]
                   << " [label=\"f~" << i + 2 << "'\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace qsymb

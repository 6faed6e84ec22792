#include "qsymb/kl.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "kl_version.hpp"

namespace qsymb {

namespace {

// membership in the strictly positive / strictly negative half of the lattice
bool in_half_lattice(const LaurentPoly& c, KLKind kind) {
    auto sp = c.lattice_split();
    if (sp.constant != 0) return false;
    return kind == KLKind::C ? sp.minus.is_zero() : sp.plus.is_zero();
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

const char* kl_kind_name(KLKind k) { return k == KLKind::C ? "C" : "D"; }

std::string cache_dir_from_env() {
    const char* e = std::getenv("QSYMB_CACHE_DIR");
    return e ? std::string(e) : std::string();
}

KLContext::KLContext(const HeckeAlgebra& H, std::optional<std::string> cache_dir)
    : H_(H), W_(H.group()),
      cache_dir_(cache_dir ? *cache_dir : cache_dir_from_env()) {}

// Start from the standard basis element and cancel the bar-defect from the
// top index down. A defect coefficient gamma satisfies bar(gamma) = -gamma,
// so it splits as gamma = g - bar(g) with g in the chosen half of the
// lattice; adding g H_y removes the defect at y and only disturbs lower
// indices.
HeckeElt KLContext::build_column(int w, KLKind kind) const {
    HeckeElt X = HeckeAlgebra::basis(w);
    HeckeElt defect = H_.bar_basis(w);
    hecke_add_scaled(defect, X, LaurentPoly(-1));
    while (!defect.empty()) {
        auto top = std::prev(defect.end());
        int y = top->first;
        auto sp = top->second.lattice_split();
        QS_CHECK(sp.constant == 0, "bar defect has a constant part");
        QS_CHECK(sp.minus == -(sp.plus.bar()), "bar defect is not antisymmetric");
        LaurentPoly c = kind == KLKind::C ? sp.plus : sp.minus;
        hecke_add_scaled(X, HeckeAlgebra::basis(y), c);
        hecke_add_scaled(defect, H_.bar_basis(y), c.bar());
        hecke_add_scaled(defect, HeckeAlgebra::basis(y), -c);
        QS_CHECK(defect.empty() || std::prev(defect.end())->first < y,
                 "defect correction did not descend");
    }
    return X;
}

void KLContext::check_table(const KLTable& t) const {
    QS_CHECK((int)t.elt.size() == W_.size(), "basis table has wrong size");
    for (int w = 0; w < W_.size(); ++w) {
        for (const auto& [y, c] : t.elt[w]) {
            if (y == w) {
                QS_CHECK(c.is_one(), "diagonal coefficient is not 1");
                continue;
            }
            QS_CHECK(W_.bruhat_leq(y, w), "support above the diagonal");
            QS_CHECK(c.integral(), "non-integral coefficient");
            QS_CHECK(in_half_lattice(c, t.kind), "coefficient in the wrong half of the lattice");
        }
        QS_CHECK(t.elt[w].count(w) == 1, "missing diagonal coefficient");
    }
}

void KLContext::build_table(KLKind k) const {
    KLTable t;
    t.d = W_.d();
    t.kind = k;
    t.elt.resize(W_.size());
    // columns are independent; index order is length order
    for (int w = 0; w < W_.size(); ++w) t.elt[w] = build_column(w, k);
    check_table(t);
    tab_[k == KLKind::C ? 0 : 1] = std::move(t);
}

const KLTable& KLContext::table(KLKind k) const {
    int i = k == KLKind::C ? 0 : 1;
    if (!tab_[i]) {
        if (!load_cache(k)) {
            build_table(k);
            save_cache(k);
        }
    }
    return *tab_[i];
}

std::string KLContext::cache_path(KLKind k) const {
    return cache_dir_ + "/klcache/B" + std::to_string(W_.d()) + "-" +
           kl_kind_name(k) + ".json";
}

bool KLContext::load_cache(KLKind k) const {
    if (cache_dir_.empty()) return false;
    std::ifstream in(cache_path(k));
    if (!in) return false;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.value("schema", "") != "qsymb-kltable") return false;
        if (j.value("code_version", "") != kl_code_version) return false;
        if (j.value("d", -1) != W_.d()) return false;
        if (j.value("kind", "") != kl_kind_name(k)) return false;
        const auto& ent = j.at("entries");
        if ((int)ent.size() != W_.size()) return false;
        KLTable t;
        t.d = W_.d();
        t.kind = k;
        t.elt.resize(W_.size());
        for (const auto& col : ent) {
            int w = col.at(0).get<int>();
            QS_CHECK(w >= 0 && w < W_.size(), "cache index out of range");
            HeckeElt e;
            for (const auto& term : col.at(1)) {
                int y = term.at(0).get<int>();
                QS_CHECK(y >= 0 && y < W_.size(), "cache index out of range");
                e[y] = LaurentPoly::from_json(term.at(1));
            }
            t.elt[w] = std::move(e);
        }
        check_table(t);
        tab_[k == KLKind::C ? 0 : 1] = std::move(t);
        return true;
    } catch (...) {
        return false; // stale or corrupt cache; recompute
    }
}

void KLContext::save_cache(KLKind k) const {
    if (cache_dir_.empty()) return;
    namespace fs = std::filesystem;
    fs::path path(cache_path(k));
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        QS_CHECK(out.good(), "cannot write cache file");
        out << table_json(k).dump();
        QS_CHECK(out.good(), "cache write failed");
    }
    fs::rename(tmp, path);
}

nlohmann::json KLContext::table_json(KLKind k) const {
    const KLTable& t = table(k);
    nlohmann::json entries = nlohmann::json::array();
    for (int w = 0; w < W_.size(); ++w) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& [y, c] : t.elt[w]) col.push_back({y, c.to_json()});
        entries.push_back({w, std::move(col)});
    }
    return {{"schema", "qsymb-kltable"},
            {"code_version", kl_code_version},
            {"d", t.d},
            {"kind", kl_kind_name(k)},
            {"entries", std::move(entries)}};
}

void KLContext::export_csv(KLKind k, std::ostream& os) const {
    const KLTable& t = table(k);
    os << "w,y,w_window,y_window,coeff\n";
    for (int w = 0; w < W_.size(); ++w)
        for (const auto& [y, c] : t.elt[w])
            os << w << ',' << y << ',' << csv_quote(W_.perm(w).str()) << ','
               << csv_quote(W_.perm(y).str()) << ',' << csv_quote(c.str()) << '\n';
}

HeckeElt KLContext::to_basis(HeckeElt h, KLKind k) const {
    const KLTable& t = table(k);
    HeckeElt out;
    while (!h.empty()) {
        auto top = std::prev(h.end());
        int w = top->first;
        LaurentPoly a = top->second;
        out[w] = a;
        hecke_add_scaled(h, t.elt[w], -a);
        QS_CHECK(h.count(w) == 0, "triangular reduction failed");
    }
    return out;
}

HeckeElt KLContext::from_basis(const HeckeElt& coords, KLKind k) const {
    const KLTable& t = table(k);
    HeckeElt out;
    for (const auto& [w, a] : coords) hecke_add_scaled(out, t.elt[w], a);
    return out;
}

HeckeElt KLContext::parabolic_c(const std::vector<int>& J, int w) const {
    QS_CHECK(W_.is_min_rep(w, J), "not a minimal coset representative");
    return c_basis(W_.mul(W_.longest_in(J), w));
}

HeckeElt KLContext::parabolic_d(const std::vector<int>& J, int w) const {
    return H_.mul(H_.x_parabolic(J), d_basis(w));
}

std::map<int, LaurentPoly> KLContext::parabolic_coords(const std::vector<int>& J,
                                                       const HeckeElt& h) const {
    int wJ = W_.longest_in(J);
    HeckeElt xJ = H_.x_parabolic(J);
    std::map<int, LaurentPoly> coords;
    HeckeElt rec;
    for (int v : W_.min_coset_reps(J)) {
        auto it = h.find(W_.mul(wJ, v));
        if (it == h.end()) continue;
        coords[v] = it->second;
        hecke_add_scaled(rec, H_.mul(xJ, HeckeAlgebra::basis(v)), it->second);
    }
    QS_CHECK(rec == h, "element is not in the parabolic submodule");
    return coords;
}

LaurentPoly KLContext::form_J(const std::vector<int>& J, const HeckeElt& a,
                              const HeckeElt& b) const {
    parabolic_coords(J, a);
    parabolic_coords(J, b);
    LaurentPoly f = H_.form(a, b);
    if (f.is_zero()) return f;
    auto quot = LaurentPoly::try_divide(f, H_.poincare(J));
    QS_CHECK(quot.has_value(), "form value not divisible by the Poincare polynomial");
    return *quot;
}

const CellDatum& KLContext::cells() const {
    if (cells_) return *cells_;
    const KLTable& t = table(KLKind::C);
    int n = W_.size();

    // edge w -> y whenever C_y occurs in C_s C_w = (H_s + q_s) C_w
    std::vector<std::vector<int>> adj(n);
    for (int w = 0; w < n; ++w) {
        std::set<int> out;
        for (int s = 0; s < W_.d(); ++s) {
            HeckeElt prod = H_.lmul_gen(s, t.elt[w]);
            hecke_add_scaled(prod, t.elt[w], H_.q_gen(s));
            for (const auto& [y, c] : to_basis(std::move(prod), KLKind::C)) out.insert(y);
        }
        adj[w].assign(out.begin(), out.end());
    }

    boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS> g(n);
    for (int w = 0; w < n; ++w)
        for (int y : adj[w]) boost::add_edge(w, y, g);
    std::vector<int> comp(n);
    int nc = boost::strong_components(
        g, boost::make_iterator_property_map(comp.begin(),
                                             boost::get(boost::vertex_index, g)));

    // renumber components in order of their minimal element
    std::vector<int> renum(nc, -1);
    int next = 0;
    for (int w = 0; w < n; ++w)
        if (renum[comp[w]] < 0) renum[comp[w]] = next++;

    CellDatum cd;
    cd.cell_of.resize(n);
    cd.cells.resize(nc);
    for (int w = 0; w < n; ++w) {
        int c = renum[comp[w]];
        cd.cell_of[w] = c;
        cd.cells[c].push_back(w);
    }

    // reachability on the condensation: cell_leq[a][b] iff a is reachable
    // from b, i.e. the elements of a are <=_L those of b
    std::vector<std::set<int>> cadj(nc);
    for (int w = 0; w < n; ++w)
        for (int y : adj[w]) cadj[cd.cell_of[w]].insert(cd.cell_of[y]);
    cd.cell_leq.assign(nc, std::vector<char>(nc, 0));
    for (int c = 0; c < nc; ++c) {
        std::vector<int> stack{c};
        cd.cell_leq[c][c] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : cadj[u])
                if (!cd.cell_leq[v][c]) {
                    cd.cell_leq[v][c] = 1;
                    stack.push_back(v);
                }
        }
    }

    // right multiplication by w_0 permutes the cells
    for (const auto& X : cd.cells) {
        int c0 = cd.cell_of[W_.mul(X[0], W_.longest())];
        for (int x : X)
            QS_CHECK(cd.cell_of[W_.mul(x, W_.longest())] == c0,
                     "X w_0 is not a single cell");
        QS_CHECK(cd.cells[c0].size() == X.size(), "X w_0 has the wrong size");
    }

    cells_ = std::move(cd);
    return *cells_;
}

bool KLContext::leq_L(int y, int w) const {
    const CellDatum& cd = cells();
    return cd.cell_leq[cd.cell_of[y]][cd.cell_of[w]] != 0;
}

CellModule KLContext::cell_module(int cell, KLKind kind) const {
    const CellDatum& cd = cells();
    const KLTable& t = table(kind);
    const std::vector<int>& X = cd.cells.at(cell);
    int k = (int)X.size();
    std::map<int, int> pos;
    for (int i = 0; i < k; ++i) pos[X[i]] = i;

    CellModule m;
    m.kind = kind;
    m.elems = X;
    m.action.assign(W_.d(),
                    std::vector<std::vector<LaurentPoly>>(k, std::vector<LaurentPoly>(k)));
    for (int s = 0; s < W_.d(); ++s)
        for (int j = 0; j < k; ++j) {
            HeckeElt a = to_basis(H_.lmul_gen(s, t.elt[X[j]]), kind);
            for (const auto& [y, c] : a) {
                if (cd.cell_of[y] == cell)
                    m.action[s][pos.at(y)][j] = c;
                else
                    QS_CHECK(cd.cell_leq[cd.cell_of[y]][cell],
                             "cell module action escaped the ideal");
            }
        }

    // the C-basis of the cell and the D-basis of the w_0-translate pair to
    // the identity matrix
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            LaurentPoly v = H_.form(c_basis(X[i]), d_basis(W_.mul(X[j], W_.longest())));
            QS_CHECK(v == LaurentPoly(i == j ? 1 : 0), "cell bases do not pair to identity");
        }
    return m;
}

} // namespace qsymb

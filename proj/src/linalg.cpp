#include "qsymb/linalg.hpp"

#include "qsymb/common.hpp"

namespace qsymb {

Mat mat_zero(int rows, int cols) {
    return Mat(rows, Vec(cols));
}

Mat mat_identity(int n) {
    Mat a = mat_zero(n, n);
    for (int i = 0; i < n; ++i) a[i][i] = RationalFn(1);
    return a;
}

int mat_rows(const Mat& a) { return (int)a.size(); }

int mat_cols(const Mat& a) { return a.empty() ? 0 : (int)a[0].size(); }

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

bool mat_is_zero(const Mat& a) {
    for (const auto& row : a)
        if (!vec_is_zero(row)) return false;
    return true;
}

Mat mat_transpose(const Mat& a) {
    Mat t = mat_zero(mat_cols(a), mat_rows(a));
    for (int i = 0; i < mat_rows(a); ++i)
        for (int j = 0; j < mat_cols(a); ++j) t[j][i] = a[i][j];
    return t;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    QS_CHECK(mat_cols(a) == mat_rows(b), "matrix product shape mismatch");
    Mat c = mat_zero(mat_rows(a), mat_cols(b));
    for (int i = 0; i < mat_rows(a); ++i)
        for (int k = 0; k < mat_cols(a); ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < mat_cols(b); ++j) {
                if (b[k][j].is_zero()) continue;
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    return c;
}

Vec mat_vec(const Mat& a, const Vec& v) {
    QS_CHECK(mat_cols(a) == (int)v.size(), "matrix-vector shape mismatch");
    Vec w(mat_rows(a));
    for (int i = 0; i < mat_rows(a); ++i)
        for (int j = 0; j < (int)v.size(); ++j) {
            if (a[i][j].is_zero() || v[j].is_zero()) continue;
            w[i] += a[i][j] * v[j];
        }
    return w;
}

Mat mat_add(const Mat& a, const Mat& b) {
    QS_CHECK(mat_rows(a) == mat_rows(b) && mat_cols(a) == mat_cols(b),
             "matrix sum shape mismatch");
    Mat c = a;
    for (int i = 0; i < mat_rows(a); ++i)
        for (int j = 0; j < mat_cols(a); ++j) c[i][j] += b[i][j];
    return c;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    QS_CHECK(mat_rows(a) == mat_rows(b) && mat_cols(a) == mat_cols(b),
             "matrix difference shape mismatch");
    Mat c = a;
    for (int i = 0; i < mat_rows(a); ++i)
        for (int j = 0; j < mat_cols(a); ++j) c[i][j] -= b[i][j];
    return c;
}

Mat mat_scaled(const Mat& a, const RationalFn& c) {
    Mat b = a;
    for (auto& row : b)
        for (auto& x : row) x *= c;
    return b;
}

Vec vec_scaled(const Vec& v, const RationalFn& c) {
    Vec w = v;
    for (auto& x : w) x *= c;
    return w;
}

void vec_add_scaled(Vec& acc, const Vec& v, const RationalFn& c) {
    QS_CHECK(acc.size() == v.size(), "vector sum shape mismatch");
    if (c.is_zero()) return;
    for (size_t i = 0; i < v.size(); ++i) acc[i] += v[i] * c;
}

Mat mat_pow(const Mat& a, int n) {
    QS_CHECK(mat_rows(a) == mat_cols(a) && n >= 0, "mat_pow needs a square base");
    Mat r = mat_identity(mat_rows(a));
    for (int i = 0; i < n; ++i) r = mat_mul(r, a);
    return r;
}

Mat mat_bar(const Mat& a) {
    Mat b = a;
    for (auto& row : b)
        for (auto& x : row) x = x.bar();
    return b;
}

Vec vec_bar(const Vec& v) {
    Vec w = v;
    for (auto& x : w) x = x.bar();
    return w;
}

Mat mat_col(const Vec& v) {
    Mat a = mat_zero((int)v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) a[i][0] = v[i];
    return a;
}

Vec col_of(const Mat& a, int j) {
    Vec v(mat_rows(a));
    for (int i = 0; i < mat_rows(a); ++i) v[i] = a[i][j];
    return v;
}

std::vector<int> rref(Mat& a) {
    const int rows = mat_rows(a), cols = mat_cols(a);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        RationalFn inv = RationalFn(1) / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            RationalFn f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int mat_rank(Mat a) { return (int)rref(a).size(); }

std::vector<Vec> kernel_basis(const Mat& a) {
    Mat m = a;
    const int cols = mat_cols(a);
    std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<Vec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec x(cols);
        x[c] = RationalFn(1);
        for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][c];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Vec> solve_any(const Mat& a, const Vec& b) {
    QS_CHECK(mat_rows(a) == (int)b.size(), "solve shape mismatch");
    const int cols = mat_cols(a);
    Mat aug = a;
    for (int i = 0; i < mat_rows(a); ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

Vec solve_unique(const Mat& a, const Vec& b) {
    auto x = solve_any(a, b);
    QS_CHECK(x.has_value(), "inconsistent linear system");
    QS_CHECK(mat_rank(a) == mat_cols(a), "linear system is underdetermined");
    return *x;
}

Mat mat_inverse(const Mat& a) {
    const int n = mat_rows(a);
    QS_CHECK(n == mat_cols(a), "inverse needs a square matrix");
    Mat aug = a;
    for (int i = 0; i < n; ++i) {
        aug[i].resize(2 * n);
        aug[i][n + i] = RationalFn(1);
    }
    std::vector<int> pivots = rref(aug);
    QS_CHECK((int)pivots.size() == n && (pivots.empty() || pivots.back() == n - 1),
             "matrix is singular");
    Mat inv = mat_zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

Vec SpanBuilder::reduce(Vec v) const {
    QS_CHECK((int)v.size() == dim_, "span vector has wrong dimension");
    for (size_t r = 0; r < rows_.size(); ++r) {
        const RationalFn& c = v[pivots_[r]];
        if (c.is_zero()) continue;
        RationalFn f = c;
        for (int j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
    }
    return v;
}

bool SpanBuilder::add(Vec v) {
    v = reduce(std::move(v));
    int piv = -1;
    for (int j = 0; j < dim_; ++j)
        if (!v[j].is_zero()) {
            piv = j;
            break;
        }
    if (piv < 0) return false;
    RationalFn inv = RationalFn(1) / v[piv];
    for (auto& x : v) x *= inv;
    for (size_t r = 0; r < rows_.size(); ++r) {
        RationalFn f = rows_[r][piv];
        if (f.is_zero()) continue;
        for (int j = 0; j < dim_; ++j) rows_[r][j] -= f * v[j];
    }
    size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < piv) ++at;
    rows_.insert(rows_.begin() + at, std::move(v));
    pivots_.insert(pivots_.begin() + at, piv);
    return true;
}

} // namespace qsymb

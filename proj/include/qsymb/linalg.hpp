#pragma once

#include <optional>
#include <vector>

#include "qsymb/ratfn.hpp"

namespace qsymb {

// Dense exact linear algebra over the rational function field. Matrices are
// row-major vectors of rows and act on column vectors from the left.
using Vec = std::vector<RationalFn>;
using Mat = std::vector<Vec>;

Mat mat_zero(int rows, int cols);
Mat mat_identity(int n);
int mat_rows(const Mat& a);
int mat_cols(const Mat& a);
bool vec_is_zero(const Vec& v);
bool mat_is_zero(const Mat& a);

Mat mat_transpose(const Mat& a);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scaled(const Mat& a, const RationalFn& c);
Vec vec_scaled(const Vec& v, const RationalFn& c);
void vec_add_scaled(Vec& acc, const Vec& v, const RationalFn& c);
Mat mat_pow(const Mat& a, int n);
// entrywise bar involution p -> p^{-1}, q -> q^{-1}
Mat mat_bar(const Mat& a);
Vec vec_bar(const Vec& v);
Mat mat_col(const Vec& v);
Vec col_of(const Mat& a, int j);

// Reduced row echelon form in place; pivots are chosen as the first column
// with a nonzero entry, scanning rows top to bottom, so the result is
// deterministic. Returns the pivot columns in order.
std::vector<int> rref(Mat& a);
int mat_rank(Mat a);

// basis of the right kernel { x : a x = 0 }, ordered by free column
std::vector<Vec> kernel_basis(const Mat& a);

// unique solution of a x = b; throws unless the system is consistent and a
// has full column rank
Vec solve_unique(const Mat& a, const Vec& b);
// a particular solution with free variables set to zero, or nullopt when
// inconsistent
std::optional<Vec> solve_any(const Mat& a, const Vec& b);
Mat mat_inverse(const Mat& a);

// Incrementally maintained row space in reduced echelon form, used for
// span membership and closure computations.
class SpanBuilder {
public:
    explicit SpanBuilder(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return (int)rows_.size(); }
    const std::vector<Vec>& rows() const { return rows_; }

    // residual of v after eliminating against the current rows
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
    // inserts v when independent; returns whether the span grew
    bool add(Vec v);

private:
    int dim_;
    std::vector<Vec> rows_;   // reduced, sorted by pivot column
    std::vector<int> pivots_;
};

} // namespace qsymb

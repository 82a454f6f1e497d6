#include "measalg/lattice.hpp"

#include "measalg/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace measalg {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw IntegerOverflow("int64 overflow in lattice arithmetic");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw IntegerOverflow("int64 overflow in lattice arithmetic");
    return out;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void axpy(IntVector& dst, const IntVector& src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = checked_add(dst[i], checked_mul(k, src[i]));
}

bool is_zero_vector(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = checked_add(out(i, j), checked_mul(aik, b(k, j)));
        }
    return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: vector length mismatch");
    IntVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] = checked_add(out[r], checked_mul((*this)(r, c), v[c]));
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) = checked_add((*this)(dst, c), checked_mul(k, (*this)(src, c)));
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) = checked_add((*this)(r, dst), checked_mul(k, (*this)(r, src)));
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::vector<IntVector> hermite_normal_form(const std::vector<IntVector>& input, std::size_t dim) {
    std::vector<IntVector> rows;
    for (const auto& r : input) {
        if (r.size() != dim) throw std::invalid_argument("hermite_normal_form: wrong vector length");
        if (!is_zero_vector(r)) rows.push_back(r);
    }
    std::size_t cur = 0;
    for (std::size_t col = 0; col < dim && cur < rows.size(); ++col) {
        // Euclid on column `col` among rows[cur..].
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = cur; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                if (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col])) best = r;
            }
            if (best == rows.size()) break;
            std::swap(rows[cur], rows[best]);
            bool reduced = true;
            for (std::size_t r = cur + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                axpy(rows[r], rows[cur], -(rows[r][col] / rows[cur][col]));
                if (rows[r][col] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (cur >= rows.size() || rows[cur][col] == 0) continue;
        if (rows[cur][col] < 0) for (auto& x : rows[cur]) x = -x;
        const std::int64_t pivot = rows[cur][col];
        for (std::size_t r = 0; r < cur; ++r) axpy(rows[r], rows[cur], -floor_div(rows[r][col], pivot));
        ++cur;
    }
    rows.resize(cur);
    return rows;
}

std::size_t integer_rank(const std::vector<IntVector>& rows, std::size_t dim) {
    return hermite_normal_form(rows, dim).size();
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix work = a;
    IntMatrix u = IntMatrix::identity(n);
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < m && pivot_col < n; ++r) {
        // Column Euclid so that row r has a single nonzero in columns >= pivot_col.
        while (true) {
            std::size_t best = n;
            for (std::size_t c = pivot_col; c < n; ++c) {
                if (work(r, c) == 0) continue;
                if (best == n || std::llabs(work(r, c)) < std::llabs(work(r, best))) best = c;
            }
            if (best == n) break;
            work.swap_cols(pivot_col, best);
            u.swap_cols(pivot_col, best);
            bool reduced = true;
            for (std::size_t c = pivot_col + 1; c < n; ++c) {
                if (work(r, c) == 0) continue;
                const std::int64_t q = work(r, c) / work(r, pivot_col);
                work.add_col_multiple(c, pivot_col, -q);
                u.add_col_multiple(c, pivot_col, -q);
                if (work(r, c) != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (work(r, pivot_col) != 0) ++pivot_col;
    }
    std::vector<IntVector> kernel;
    for (std::size_t c = pivot_col; c < n; ++c) kernel.push_back(u.col(c));
    return hermite_normal_form(kernel, n);
}

SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix work = a;
    IntMatrix left = IntMatrix::identity(m);
    IntMatrix right = IntMatrix::identity(n);
    IntVector diag;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pr = m, pc = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (work(i, j) != 0 && (pr == m || std::llabs(work(i, j)) < std::llabs(work(pr, pc)))) { pr = i; pc = j; }
        if (pr == m) break;
        work.swap_rows(t, pr); left.swap_rows(t, pr);
        work.swap_cols(t, pc); right.swap_cols(t, pc);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (work(i, t) == 0) continue;
                const std::int64_t q = work(i, t) / work(t, t);
                work.add_row_multiple(i, t, -q); left.add_row_multiple(i, t, -q);
                if (work(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (work(t, j) == 0) continue;
                const std::int64_t q = work(t, j) / work(t, t);
                work.add_col_multiple(j, t, -q); right.add_col_multiple(j, t, -q);
                if (work(t, j) != 0) clean = false;
            }
            if (!clean) {
                // Move the smallest remainder in row/column t into the pivot.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (work(i, t) != 0 && std::llabs(work(i, t)) < std::llabs(work(bi, bj))) { bi = i; bj = t; }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (work(t, j) != 0 && std::llabs(work(t, j)) < std::llabs(work(bi, bj))) { bi = t; bj = j; }
                work.swap_rows(t, bi); left.swap_rows(t, bi);
                work.swap_cols(t, bj); right.swap_cols(t, bj);
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (work(i, j) % work(t, t) != 0) { bad = i; break; }
            if (bad == m) break;
            work.add_row_multiple(t, bad, 1); left.add_row_multiple(t, bad, 1);
        }
        if (work(t, t) < 0) { work.negate_row(t); left.negate_row(t); }
        diag.push_back(work(t, t));
    }
    return SmithForm{std::move(diag), std::move(left), std::move(right)};
}

bool lattice_contains(const std::vector<IntVector>& basis, const IntVector& v) {
    const std::size_t dim = v.size();
    const auto hnf = hermite_normal_form(basis, dim);
    IntVector rest = v;
    for (const auto& row : hnf) {
        std::size_t p = 0;
        while (p < dim && row[p] == 0) ++p;
        if (rest[p] % row[p] != 0) return false;
        axpy(rest, row, -(rest[p] / row[p]));
    }
    return is_zero_vector(rest);
}

}  // namespace measalg

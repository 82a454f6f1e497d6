#pragma once

/**
 * @file lattice.hpp
 * @brief Small dense integer matrices and lattice normal forms.
 *
 * All arithmetic is on int64 with overflow detection (IntegerOverflow).
 * Matrices here are tiny (atom counts, generator counts), so the classical
 * elimination algorithms are used directly.
 */

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace measalg {

using IntVector = std::vector<std::int64_t>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);
    /// Matrix whose rows are the given vectors (all of length `cols`).
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector col(std::size_t c) const;
    std::vector<IntVector> row_vectors() const;

    IntMatrix transposed() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    IntVector operator*(const IntVector& v) const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    // Elementary unimodular operations.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, std::int64_t k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t k);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Basis (as rows) of {x ∈ ℤ^n : A x = 0}, returned in Hermite normal form.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by `rows`:
/// echelon form with positive pivots, entries above each pivot reduced into
/// [0, pivot), zero rows dropped. Unique for a given lattice.
std::vector<IntVector> hermite_normal_form(const std::vector<IntVector>& rows, std::size_t dim);

/// Rank over ℚ.
std::size_t integer_rank(const std::vector<IntVector>& rows, std::size_t dim);

struct SmithForm {
    /// Nonzero invariant factors s_1 | s_2 | ... (all positive).
    IntVector diagonal;
    /// U (rows×rows) and V (cols×cols) unimodular with U·A·V = diag(s) padded by zeros.
    IntMatrix left;
    IntMatrix right;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// True iff v lies in the lattice spanned by `basis` (rows).
bool lattice_contains(const std::vector<IntVector>& basis, const IntVector& v);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace measalg

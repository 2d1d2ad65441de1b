// sparse.hpp
//
// Compressed sparse row matrix storage and matrix-vector kernels.
// Matrices are canonical CSR: rows in order, column indices strictly
// increasing within each row, duplicates merged at construction.

#pragma once

#include <cstddef>
#include <vector>

#include "scamp/vec.hpp"

namespace scamp {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

class SparseMatrix {
public:
    SparseMatrix() = default;

    // Builds canonical CSR from an arbitrary triplet list: entries are
    // sorted by (row, col) and duplicates are summed.
    SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<Triplet> entries);

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix diagonal(const Vector& d);
    // Dense row-major values stored as a (structurally full) sparse matrix.
    static SparseMatrix from_dense(std::size_t nrows, std::size_t ncols,
                                   const std::vector<double>& row_major);

    std::size_t rows() const { return nrows_; }
    std::size_t cols() const { return ncols_; }
    std::size_t nnz() const { return values_.size(); }

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

    double frobenius_norm() const;
    double max_abs() const;

    SparseMatrix transposed() const;

    // A + alpha * B, both canonical.
    friend SparseMatrix add_scaled(const SparseMatrix& a, double alpha, const SparseMatrix& b);

    // Scales every stored value.
    void scale_values(double alpha);

private:
    std::size_t nrows_ = 0;
    std::size_t ncols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

// y = A * x
Vector spmv(const SparseMatrix& a, const Vector& x);

// y = A^T * x, computed from the CSR of A without forming the transpose.
Vector spmv_t(const SparseMatrix& a, const Vector& x);

} // namespace scamp

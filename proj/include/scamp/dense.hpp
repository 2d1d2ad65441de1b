// dense.hpp
//
// Small dense matrices and the factorizations the iterative solvers run on
// their projected systems each step. Everything here is O(k^3) on matrices
// of iteration-count size; factorizations are recomputed from scratch
// rather than updated.

#pragma once

#include <cstddef>
#include <vector>

#include "scamp/vec.hpp"

namespace scamp {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t nrows, std::size_t ncols)
        : nrows_(nrows), ncols_(ncols), values_(nrows * ncols, 0.0) {}
    DenseMatrix(std::size_t nrows, std::size_t ncols, std::vector<double> row_major);

    std::size_t rows() const { return nrows_; }
    std::size_t cols() const { return ncols_; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * ncols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * ncols_ + j]; }

    const std::vector<double>& values() const { return values_; }

    double max_abs() const;

    Vector multiply(const Vector& x) const;
    Vector multiply_transpose(const Vector& x) const;

private:
    std::size_t nrows_ = 0;
    std::size_t ncols_ = 0;
    std::vector<double> values_;
};

// Solves the square system T * out = rhs by LU with partial pivoting.
// Throws SingularError when a pivot falls below 1e-14 * max|T|.
Vector dense_solve(const DenseMatrix& t, const Vector& rhs);

// Returns argmin_c ||rhs - T c||_2 for T with full column rank (rows >= cols),
// via Householder QR. Throws RankError when a diagonal of R is negligible.
Vector dense_lstsq(const DenseMatrix& t, const Vector& rhs);

} // namespace scamp

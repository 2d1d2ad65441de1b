// sparse.cpp

#include "scamp/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "scamp/errors.hpp"

namespace scamp {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<Triplet> entries)
    : nrows_(nrows), ncols_(ncols) {
    for (const Triplet& t : entries) {
        if (t.row >= nrows || t.col >= ncols) {
            throw DimensionError("SparseMatrix: triplet index out of range");
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    row_ptr_.assign(nrows + 1, 0);
    col_idx_.reserve(entries.size());
    values_.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Triplet& t = entries[k];
        if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
            values_.back() += t.value; // duplicate entry: merge by summation
        } else {
            col_idx_.push_back(t.col);
            values_.push_back(t.value);
            ++row_ptr_[t.row + 1];
        }
    }
    for (std::size_t i = 0; i < nrows; ++i) {
        row_ptr_[i + 1] += row_ptr_[i];
    }
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, 1.0});
    }
    return SparseMatrix(n, n, std::move(t));
}

SparseMatrix SparseMatrix::diagonal(const Vector& d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        t.push_back({i, i, d[i]});
    }
    return SparseMatrix(d.size(), d.size(), std::move(t));
}

SparseMatrix SparseMatrix::from_dense(std::size_t nrows, std::size_t ncols,
                                      const std::vector<double>& row_major) {
    if (row_major.size() != nrows * ncols) {
        throw DimensionError("from_dense: value count does not match shape");
    }
    std::vector<Triplet> t;
    t.reserve(row_major.size());
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) {
            t.push_back({i, j, row_major[i * ncols + j]});
        }
    }
    return SparseMatrix(nrows, ncols, std::move(t));
}

double SparseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : values_) {
        s += v * v;
    }
    return std::sqrt(s);
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

SparseMatrix SparseMatrix::transposed() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t i = 0; i < nrows_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            t.push_back({col_idx_[k], i, values_[k]});
        }
    }
    return SparseMatrix(ncols_, nrows_, std::move(t));
}

SparseMatrix add_scaled(const SparseMatrix& a, double alpha, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("add_scaled: shapes differ");
    }
    std::vector<Triplet> t;
    t.reserve(a.nnz() + b.nnz());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = a.row_ptr_[i]; k < a.row_ptr_[i + 1]; ++k) {
            t.push_back({i, a.col_idx_[k], a.values_[k]});
        }
        for (std::size_t k = b.row_ptr_[i]; k < b.row_ptr_[i + 1]; ++k) {
            t.push_back({i, b.col_idx_[k], alpha * b.values_[k]});
        }
    }
    return SparseMatrix(a.rows(), a.cols(), std::move(t));
}

void SparseMatrix::scale_values(double alpha) {
    for (double& v : values_) {
        v *= alpha;
    }
}

Vector spmv(const SparseMatrix& a, const Vector& x) {
    if (a.cols() != x.size()) {
        throw DimensionError("spmv: A.cols != x.length");
    }
    Vector y(a.rows(), 0.0);
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            s += v[k] * x[ci[k]];
        }
        y[i] = s;
    }
    return y;
}

Vector spmv_t(const SparseMatrix& a, const Vector& x) {
    if (a.rows() != x.size()) {
        throw DimensionError("spmv_t: A.rows != x.length");
    }
    Vector y(a.cols(), 0.0);
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            y[ci[k]] += v[k] * xi;
        }
    }
    return y;
}

} // namespace scamp

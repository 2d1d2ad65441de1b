// dense.cpp

#include "scamp/dense.hpp"

#include <algorithm>
#include <cmath>

#include "scamp/errors.hpp"

namespace scamp {

DenseMatrix::DenseMatrix(std::size_t nrows, std::size_t ncols, std::vector<double> row_major)
    : nrows_(nrows), ncols_(ncols), values_(std::move(row_major)) {
    if (values_.size() != nrows * ncols) {
        throw DimensionError("DenseMatrix: value count does not match shape");
    }
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Vector DenseMatrix::multiply(const Vector& x) const {
    if (x.size() != ncols_) {
        throw DimensionError("DenseMatrix::multiply: length mismatch");
    }
    Vector y(nrows_, 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < ncols_; ++j) {
            s += values_[i * ncols_ + j] * x[j];
        }
        y[i] = s;
    }
    return y;
}

Vector DenseMatrix::multiply_transpose(const Vector& x) const {
    if (x.size() != nrows_) {
        throw DimensionError("DenseMatrix::multiply_transpose: length mismatch");
    }
    Vector y(ncols_, 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) {
        for (std::size_t j = 0; j < ncols_; ++j) {
            y[j] += values_[i * ncols_ + j] * x[i];
        }
    }
    return y;
}

Vector dense_solve(const DenseMatrix& t, const Vector& rhs) {
    const std::size_t n = t.rows();
    if (t.cols() != n) {
        throw DimensionError("dense_solve: matrix not square");
    }
    if (rhs.size() != n) {
        throw DimensionError("dense_solve: rhs length mismatch");
    }
    const double pivot_floor = 1e-14 * t.max_abs();

    DenseMatrix a = t;
    Vector x = rhs;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) {
                piv = i;
            }
        }
        if (std::abs(a(piv, k)) <= pivot_floor) {
            throw SingularError("dense_solve: numerically singular pivot");
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
            }
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            a(i, k) = 0.0;
            if (m != 0.0) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    a(i, j) -= m * a(k, j);
                }
                x[i] -= m * x[k];
            }
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= a(k, j) * x[j];
        }
        x[k] = s / a(k, k);
    }
    return x;
}

Vector dense_lstsq(const DenseMatrix& t, const Vector& rhs) {
    const std::size_t m = t.rows();
    const std::size_t n = t.cols();
    if (m < n) {
        throw DimensionError("dense_lstsq: fewer rows than columns");
    }
    if (rhs.size() != m) {
        throw DimensionError("dense_lstsq: rhs length mismatch");
    }

    // Householder QR applied to [T | rhs]; R overwrites the upper triangle.
    DenseMatrix a = t;
    Vector b = rhs;
    const double rank_floor = 1e-14 * a.max_abs() * static_cast<double>(m);

    for (std::size_t k = 0; k < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            colnorm += a(i, k) * a(i, k);
        }
        colnorm = std::sqrt(colnorm);
        if (colnorm <= rank_floor) {
            throw RankError("dense_lstsq: rank-deficient matrix");
        }
        const double alpha = a(k, k) >= 0.0 ? -colnorm : colnorm;
        // Householder vector v = x - alpha*e_k, stored in-place below the diagonal.
        Vector v(m - k, 0.0);
        v[0] = a(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) {
            v[i - k] = a(i, k);
        }
        double vtv = 0.0;
        for (double w : v) {
            vtv += w * w;
        }
        a(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) {
            a(i, k) = 0.0;
        }
        if (vtv == 0.0) {
            continue;
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) {
                s += v[i - k] * a(i, j);
            }
            const double f = 2.0 * s / vtv;
            for (std::size_t i = k; i < m; ++i) {
                a(i, j) -= f * v[i - k];
            }
        }
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            s += v[i - k] * b[i];
        }
        const double f = 2.0 * s / vtv;
        for (std::size_t i = k; i < m; ++i) {
            b[i] -= f * v[i - k];
        }
    }

    Vector x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= a(k, j) * x[j];
        }
        x[k] = s / a(k, k);
    }
    return x;
}

} // namespace scamp

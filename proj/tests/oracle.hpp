// oracle.hpp
//
// Eigen-backed reference computations for the tests. Everything here is
// deliberately independent of the library's own kernels: conversions go
// through dense Eigen objects and all reference results come from Eigen's
// factorizations (or, for the extended-precision solve, long double
// elimination written out below).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "scamp/dense.hpp"
#include "scamp/rng.hpp"
#include "scamp/saddle.hpp"
#include "scamp/sparse.hpp"
#include "scamp/vec.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const scamp::SparseMatrix& a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                              static_cast<Eigen::Index>(a.cols()));
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ci[k])) += v[k];
        }
    }
    return m;
}

inline Eigen::MatrixXd to_eigen(const scamp::DenseMatrix& a) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
        }
    }
    return m;
}

inline Eigen::VectorXd to_eigen(const scamp::Vector& v) {
    Eigen::VectorXd e(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        e(static_cast<Eigen::Index>(i)) = v[i];
    }
    return e;
}

inline scamp::Vector from_eigen(const Eigen::VectorXd& v) {
    scamp::Vector out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(i)] = v(i);
    }
    return out;
}

// Dense saddle blocks assembled directly from A and the weight, not via
// the library's operators.
inline Eigen::MatrixXd assemble_m(const Eigen::MatrixXd& a, const Eigen::MatrixXd& w) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a.transpose() * w * a;
    m.topRightCorner(n, n) = a.transpose();
    m.bottomLeftCorner(n, n) = -a;
    return m;
}

inline Eigen::MatrixXd assemble_m_gamma(const Eigen::MatrixXd& a, const Eigen::MatrixXd& w,
                                        double gamma) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) =
        a.transpose() * w * a - gamma * Eigen::MatrixXd::Identity(n, n);
    m.topRightCorner(n, n) = a.transpose();
    m.bottomLeftCorner(n, n) = a;
    m.bottomRightCorner(n, n) = gamma * Eigen::MatrixXd::Identity(n, n);
    return m;
}

inline double sigma_max(const Eigen::MatrixXd& a) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues().maxCoeff();
}

inline double sigma_min(const Eigen::MatrixXd& a) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues().minCoeff();
}

inline Eigen::VectorXd solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    return a.fullPivLu().solve(b);
}

// Normal-equations least squares, the stated independent route for
// checking the QR-based implementation.
inline Eigen::VectorXd lstsq_normal_equations(const Eigen::MatrixXd& t,
                                              const Eigen::VectorXd& rhs) {
    return (t.transpose() * t).ldlt().solve(t.transpose() * rhs);
}

inline std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out.push_back(es.eigenvalues()(i));
    }
    return out;
}

// Extended-precision Gaussian elimination with partial pivoting, for the
// ill-conditioned small-solve checks.
inline scamp::Vector solve_long_double(const scamp::DenseMatrix& t, const scamp::Vector& rhs) {
    const std::size_t n = t.rows();
    std::vector<long double> a(n * n);
    std::vector<long double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = t(i, j);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (fabsl(a[i * n + k]) > fabsl(a[piv * n + k])) {
                piv = i;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a[k * n + j], a[piv * n + j]);
        }
        std::swap(x[k], x[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double m = a[i * n + k] / a[k * n + k];
            for (std::size_t j = k; j < n; ++j) {
                a[i * n + j] -= m * a[k * n + j];
            }
            x[i] -= m * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        long double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= a[k * n + j] * x[j];
        }
        x[k] = s / a[k * n + k];
    }
    scamp::Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<double>(x[i]);
    }
    return out;
}

// Seeded dense random matrices for oracle-checked cases.
inline scamp::SparseMatrix random_sparse(std::size_t rows, std::size_t cols, double density,
                                         std::uint64_t seed) {
    scamp::Rng rng(seed);
    std::vector<scamp::Triplet> t;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (rng.uniform() < density) {
                t.push_back({i, j, rng.uniform() * 2.0 - 1.0});
            }
        }
    }
    return scamp::SparseMatrix(rows, cols, std::move(t));
}

inline scamp::Vector random_vector(std::size_t n, std::uint64_t seed) {
    scamp::Rng rng(seed);
    scamp::Vector v(n);
    for (double& x : v) {
        x = rng.normal();
    }
    return v;
}

inline scamp::SaddleVector random_saddle_vector(std::size_t n, std::uint64_t seed) {
    scamp::Rng rng(seed);
    scamp::SaddleVector v = scamp::SaddleVector::zero(n);
    for (double& x : v.top) {
        x = rng.normal();
    }
    for (double& x : v.bottom) {
        x = rng.normal();
    }
    return v;
}

} // namespace oracle

// spectral.cpp

#include "scamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scamp/dense.hpp"
#include "scamp/errors.hpp"

namespace scamp {

namespace {

// Deterministic start: normalized all-ones, falling back to the first
// coordinate vector the operator does not annihilate.
Vector start_vector(const LinearOperator& op, std::size_t dim) {
    Vector v = ones(dim);
    scale(v, 1.0 / norm2(v));
    if (norm2(op.apply(v)) > 0.0) {
        return v;
    }
    for (std::size_t j = 0; j < dim; ++j) {
        Vector e = unit_vector(dim, j);
        if (norm2(op.apply(e)) > 0.0) {
            return e;
        }
    }
    return v;
}

// Smallest eigenvalue of the symmetric tridiagonal (alpha, beta) by Sturm
// bisection. beta[i] couples alpha[i] and alpha[i+1].
double tridiag_smallest_eig(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const std::size_t k = alpha.size();
    double lo = alpha[0];
    double hi = alpha[0];
    for (std::size_t i = 0; i < k; ++i) {
        const double r = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i + 1 < k ? std::abs(beta[i]) : 0.0);
        lo = std::min(lo, alpha[i] - r);
        hi = std::max(hi, alpha[i] + r);
    }
    const double span = std::max(hi - lo, 1e-300);

    auto count_below = [&](double x) {
        std::size_t count = 0;
        double d = alpha[0] - x;
        if (d < 0.0) {
            ++count;
        }
        for (std::size_t i = 1; i < k; ++i) {
            const double denom = (d == 0.0) ? 1e-300 : d;
            d = alpha[i] - x - beta[i - 1] * beta[i - 1] / denom;
            if (d < 0.0) {
                ++count;
            }
        }
        return count;
    };

    double a = lo - 1e-12 * span;
    double b = hi + 1e-12 * span;
    for (int iter = 0; iter < 200 && (b - a) > 1e-15 * span; ++iter) {
        const double mid = 0.5 * (a + b);
        if (count_below(mid) >= 1) {
            b = mid;
        } else {
            a = mid;
        }
    }
    return 0.5 * (a + b);
}

// |last component| of the unit eigenvector for the smallest eigenvalue,
// via inverse iteration on the shifted tridiagonal. Feeds the Lanczos
// residual bound beta_{k+1} * |s_k|.
double tridiag_smallest_eigvec_last(const std::vector<double>& alpha,
                                    const std::vector<double>& beta, double theta) {
    const std::size_t k = alpha.size();
    if (k == 1) {
        return 1.0;
    }
    double span = std::abs(alpha[0]);
    for (std::size_t i = 0; i < k; ++i) {
        span = std::max(span, std::abs(alpha[i]) + (i > 0 ? std::abs(beta[i - 1]) : 0.0) +
                                  (i + 1 < k ? std::abs(beta[i]) : 0.0));
    }
    const double shift = theta - 1e-12 * std::max(span, 1e-300);

    DenseMatrix t(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        t(i, i) = alpha[i] - shift;
        if (i + 1 < k) {
            t(i, i + 1) = beta[i];
            t(i + 1, i) = beta[i];
        }
    }
    Vector s = ones(k);
    scale(s, 1.0 / norm2(s));
    for (int it = 0; it < 3; ++it) {
        try {
            s = dense_solve(t, s);
        } catch (const SingularError&) {
            break; // shift landed on the eigenvalue: s is already converged
        }
        const double n = norm2(s);
        if (n == 0.0) {
            break;
        }
        scale(s, 1.0 / n);
    }
    return std::abs(s[k - 1]);
}

// Symmetric Lanczos with full reorthogonalization (two MGS passes). The
// smallest Ritz value is accepted once its residual bound
// beta_{k+1} |s_k(last)| drops below tol * |theta|.
EstimateResult lanczos_smallest(const LinearOperator& op, std::size_t dim, double tol,
                                std::size_t maxit, bool spd_check) {
    if (maxit == 0) {
        maxit = 5 * dim;
    }
    std::vector<Vector> basis;
    std::vector<double> alpha;
    std::vector<double> beta;

    Vector q = start_vector(op, dim);
    basis.push_back(q);

    EstimateResult result;
    double op_scale = 0.0; // max |alpha|, beta seen: running estimate of ||op||

    for (std::size_t k = 0; k < maxit && k < dim; ++k) {
        Vector w = op.apply(basis[k]);
        const double a = dot(basis[k], w);
        if (spd_check && a <= 0.0) {
            throw NotSPDError("estimate_lambda_min_spd: probe with nonpositive Rayleigh quotient");
        }
        alpha.push_back(a);
        op_scale = std::max(op_scale, std::abs(a));
        axpy(-a, basis[k], w);
        if (k > 0) {
            axpy(-beta[k - 1], basis[k - 1], w);
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& b : basis) {
                axpy(-dot(b, w), b, w);
            }
        }

        const double ritz = tridiag_smallest_eig(alpha, beta);
        result.value = ritz;
        result.iterations = k + 1;
        if (spd_check && ritz <= 0.0) {
            // The Ritz vector is an explicit probe with v^T (op v) <= 0.
            throw NotSPDError("estimate_lambda_min_spd: nonpositive Ritz value");
        }

        const double b = norm2(w);
        op_scale = std::max(op_scale, b);
        if (b <= 1e-14 * std::max(op_scale, 1e-300)) {
            // Krylov space exhausted: Ritz values are exact in it.
            result.converged = true;
            return result;
        }
        const double s_last = tridiag_smallest_eigvec_last(alpha, beta, ritz);
        if (b * s_last <= tol * std::max(std::abs(ritz), 1e-300)) {
            result.converged = true;
            return result;
        }

        if (k + 1 < maxit && k + 1 < dim) {
            beta.push_back(b);
            scale(w, 1.0 / b);
            basis.push_back(std::move(w));
        }
    }
    return result;
}

class NormalOperator final : public LinearOperator {
public:
    explicit NormalOperator(const SparseMatrix& a) : a_(&a) {}
    std::size_t rows() const override { return a_->cols(); }
    std::size_t cols() const override { return a_->cols(); }
    Vector apply(const Vector& x) const override { return spmv_t(*a_, spmv(*a_, x)); }

private:
    const SparseMatrix* a_;
};

} // namespace

EstimateResult estimate_sigma_max(const SparseMatrix& a, double tol, std::size_t maxit) {
    if (a.max_abs() == 0.0) {
        throw ZeroMatrixError("estimate_sigma_max: matrix is all zero");
    }
    if (maxit == 0) {
        maxit = 5 * std::max(a.rows(), a.cols());
    }
    NormalOperator ata(a);
    Vector v = start_vector(ata, a.cols());

    EstimateResult result;
    for (std::size_t k = 0; k < maxit; ++k) {
        Vector w = ata.apply(v);
        const double rayleigh = dot(v, w);
        const double sigma = std::sqrt(std::max(rayleigh, 0.0));
        result.value = sigma;
        result.iterations = k + 1;
        const double wn = norm2(w);
        if (wn == 0.0) {
            result.converged = true; // start vector lies in the null space of A^T A
            return result;
        }
        // ||A^T A v - rayleigh v|| bounds the distance to the nearest
        // eigenvalue of A^T A.
        Vector res = w;
        axpy(-rayleigh, v, res);
        if (norm2(res) <= 2.0 * tol * std::max(rayleigh, 1e-300)) {
            result.converged = true;
            return result;
        }
        scale(w, 1.0 / wn);
        v = std::move(w);
    }
    return result;
}

EstimateResult estimate_sigma_min(const SparseMatrix& a, double tol, std::size_t maxit) {
    if (a.rows() != a.cols()) {
        throw DimensionError("estimate_sigma_min: matrix must be square");
    }
    if (a.max_abs() == 0.0) {
        throw ZeroMatrixError("estimate_sigma_min: matrix is all zero");
    }
    NormalOperator ata(a);
    EstimateResult r = lanczos_smallest(ata, a.cols(), tol, maxit, /*spd_check=*/false);
    r.value = std::sqrt(std::max(r.value, 0.0));
    return r;
}

SpectralEstimate estimate_spectrum(const SparseMatrix& a, double tol, std::size_t maxit) {
    const EstimateResult hi = estimate_sigma_max(a, tol, maxit);
    const EstimateResult lo = estimate_sigma_min(a, tol, maxit);
    SpectralEstimate est;
    est.sigma_max = hi.value;
    est.sigma_min = lo.value;
    est.kappa2 = hi.value / lo.value;
    est.iterations_used = hi.iterations + lo.iterations;
    est.converged = hi.converged && lo.converged;
    return est;
}

EstimateResult estimate_lambda_min_spd(const LinearOperator& op, std::size_t dim, double tol,
                                       std::size_t maxit) {
    return lanczos_smallest(op, dim, tol, maxit, /*spd_check=*/true);
}

WeightChoice choose_w(const SparseMatrix& a, WeightMode mode, double safety, double tol,
                      std::size_t maxit) {
    if (safety <= 1.0) {
        throw std::invalid_argument("choose_w: safety factor must exceed 1");
    }
    WeightChoice choice;
    choice.mode = mode;
    choice.safety = safety;
    if (mode == WeightMode::strict) {
        const SpectralEstimate est = estimate_spectrum(a, tol, maxit);
        choice.bound = 2.0 * est.kappa2 / est.sigma_min;
    } else {
        const EstimateResult lo = estimate_sigma_min(a, tol, maxit);
        choice.bound = 2.0 / lo.value;
    }
    choice.w = safety * choice.bound;
    return choice;
}

GammaChoice choose_gamma(const SparseMatrix& a, double w, double tol, std::size_t maxit) {
    if (w <= 0.0) {
        throw std::invalid_argument("choose_gamma: w must be positive");
    }
    FunctionOperator atwa(a.cols(), a.cols(), [&a, w](const Vector& v) {
        Vector t = spmv(a, v);
        scale(t, w);
        return spmv_t(a, t);
    });
    const EstimateResult lam = estimate_lambda_min_spd(atwa, a.cols(), tol, maxit);
    GammaChoice choice;
    choice.lambda_min_est = lam.value;
    choice.gamma = 0.5 * lam.value;
    return choice;
}

} // namespace scamp

// spectral.hpp
//
// Extreme singular value and eigenvalue estimation, and the derived
// choices of the weight w and shift gamma that make the saddle operator
// suitable for conjugate-gradient iteration.
//
// sigma_max comes from power iteration on A^T A; sigma_min and lambda_min
// come from symmetric Lanczos with full reorthogonalization. Ritz values
// approach sigma_min from above, so consumers apply a safety factor.

#pragma once

#include <cstddef>

#include "scamp/operator.hpp"
#include "scamp/sparse.hpp"

namespace scamp {

struct EstimateResult {
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct SpectralEstimate {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    double kappa2 = 0.0; // sigma_max / sigma_min
    std::size_t iterations_used = 0;
    bool converged = false;
};

enum class WeightMode { strict, weak };

struct WeightChoice {
    double w = 0.0;
    WeightMode mode = WeightMode::weak;
    double bound = 0.0;  // theoretical lower bound w must exceed
    double safety = 1.0; // w = safety * bound
};

struct GammaChoice {
    double gamma = 0.0;
    double lambda_min_est = 0.0; // estimate of lambda_min(A^T W A); gamma is half of it
};

EstimateResult estimate_sigma_max(const SparseMatrix& a, double tol = 1e-6, std::size_t maxit = 0);

EstimateResult estimate_sigma_min(const SparseMatrix& a, double tol = 1e-6, std::size_t maxit = 0);

SpectralEstimate estimate_spectrum(const SparseMatrix& a, double tol = 1e-6, std::size_t maxit = 0);

// Smallest Ritz value of a symmetric positive definite operator. Throws
// NotSPDError if any probe vector v has v^T (op v) <= 0.
EstimateResult estimate_lambda_min_spd(const LinearOperator& op, std::size_t dim,
                                       double tol = 1e-6, std::size_t maxit = 0);

// strict: w = safety * 2*kappa2(A) / sigma_min(A), which keeps the shifted
// saddle operator positive definite for any right-hand side coupling.
// weak:   w = safety * 2 / sigma_min(A), enough for a real positive
// spectrum when the weight is a multiple of the identity.
WeightChoice choose_w(const SparseMatrix& a, WeightMode mode, double safety = 1.1,
                      double tol = 1e-6, std::size_t maxit = 0);

// gamma = lambda_min(A^T (wI) A) / 2, the midpoint choice that centers the
// shift inside the admissible interval.
GammaChoice choose_gamma(const SparseMatrix& a, double w, double tol = 1e-6,
                         std::size_t maxit = 0);

} // namespace scamp

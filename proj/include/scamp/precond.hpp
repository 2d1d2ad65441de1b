// precond.hpp
//
// Structured preconditioning for the saddle operator. With W = G G^T
// (Cholesky) and G^T A = Q R (exact or threshold-incomplete QR), M factors
// as L U with triangular-times-orthogonal blocks, and the inverse factors
//
//     L~^-1 = [ R^-T        0     ]      U~^-1 = [ R^-1   -R^-1   ]
//             [ R^-T    Q^T G^T   ],             [  0     G Q^-T  ]
//
// apply with triangular solves only. The preconditioned operator
// L~^-1 M U~^-1 collapses to the identity when the QR is exact.

#pragma once

#include <cstddef>

#include "scamp/dense.hpp"
#include "scamp/nspcg.hpp"
#include "scamp/saddle.hpp"
#include "scamp/sparse.hpp"

namespace scamp {

// Cholesky W = G G^T, lower-triangular G. The scalar overload represents
// sqrt(w) * I without storing it.
WeightFactor cholesky_spd(const SparseMatrix& w);
WeightFactor cholesky_spd(double w, std::size_t dim);

struct QrFactors {
    DenseMatrix q;          // n x n, column-orthonormal up to the drops
    SparseMatrix r;         // upper triangular
    double droptol = 0.0;
    bool exact = false;     // droptol == 0 path
    double fit_residual = 0.0; // ||B - Q R||_F, zero in exact mode
    double orth_defect = 0.0;  // ||Q^T Q - I||_max, diagnostic for Q^-T ~= Q
};

// Thresholded modified Gram-Schmidt QR of B. droptol = 0 gives an exact
// (reorthogonalized) factorization. R entries below droptol * ||column||
// and Q entries below droptol are dropped; a column left with no mass
// raises SingularError.
QrFactors incomplete_qr(const SparseMatrix& b, double droptol);

struct SaddlePreconditioner {
    WeightFactor g;
    QrFactors qr;
};

SaddlePreconditioner make_saddle_preconditioner(const SaddleSystem& sys, double droptol);

// [R^-T v_top; R^-T v_top + Q^T G^T v_bottom]
SaddleVector apply_l_inv(const SaddlePreconditioner& p, const SaddleVector& v);

// [R^-1 (v_top - v_bottom); G Q v_bottom]  (Q applied for Q^-T; exact when
// Q is orthogonal, and the recorded orth_defect bounds the error otherwise)
SaddleVector apply_u_inv(const SaddlePreconditioner& p, const SaddleVector& v);

// Transposed applies, needed when running transpose-based solvers on the
// preconditioned system.
SaddleVector apply_l_inv_transpose(const SaddlePreconditioner& p, const SaddleVector& v);
SaddleVector apply_u_inv_transpose(const SaddlePreconditioner& p, const SaddleVector& v);

// v -> L~^-1 (M (U~^-1 v)), by composition.
SaddleVector apply_preconditioned(const SaddleSystem& sys, const SaddlePreconditioner& p,
                                  const SaddleVector& v);

// C = G^T A R^-1 and its transpose, the operator whose Gram matrix C^T C is
// the (1,1) block of the preconditioned system.
Vector apply_c(const SaddleSystem& sys, const SaddlePreconditioner& p, const Vector& v);
Vector apply_c_transpose(const SaddleSystem& sys, const SaddlePreconditioner& p, const Vector& v);

// gamma for the preconditioned operator: half the smallest eigenvalue of
// C^T C (about 1/2 when the factorization is exact and the system is near
// the identity).
double choose_gamma_preconditioned(const SaddleSystem& sys, const SaddlePreconditioner& p);

// Solves M z = b by running the solver on (L~^-1 M U~^-1) zhat = L~^-1 b
// and mapping back z = U~^-1 zhat. History rows record the transformed
// saddle residual together with forward/adjoint residuals of the original
// system.
SolveResult preconditioned_nspcg_solve(const SaddleSystem& sys, const SaddlePreconditioner& p,
                                       const SaddleVector& b, const NspcgConfig& cfg);

} // namespace scamp

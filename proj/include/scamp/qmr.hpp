// qmr.hpp
//
// QMR on the unsymmetric Lanczos biorthogonalization. Two bases V, W with
// V^T W = I reduce A and A^T to tridiagonal form,
//
//     A V_k = V_{k+1} T_{k+1,k},     A^T W_k = W_{k+1} That_{k+1,k},
//
// and each step minimizes the projected quasi-residuals
// || ||r_0|| e_1 - T c || and || sigma e_1 - That d || for the forward and
// adjoint iterates. Scaling convention: v unit 2-norm, w scaled so that
// w^T v = 1. A vanishing coupling w~^T v~ with nonvanishing vectors is a
// serious breakdown and aborts the solve (no look-ahead).

#pragma once

#include <cstddef>
#include <vector>

#include "scamp/dense.hpp"
#include "scamp/history.hpp"
#include "scamp/operator.hpp"
#include "scamp/sparse.hpp"

namespace scamp {

struct LanczosPair {
    std::vector<Vector> vs; // unit 2-norm
    std::vector<Vector> ws; // scaled so ws[i] . vs[i] = 1
    std::vector<double> alpha, beta, gamma;          // T_{k+1,k} bands
    std::vector<double> alpha_hat, beta_hat, gamma_hat; // That_{k+1,k} bands
    bool serious_breakdown = false;
    bool exhausted = false; // lucky: Krylov space closed
    double breakdown_floor = 0.0;
};

LanczosPair unsym_lanczos_init(const LinearOperator& a, const Vector& v1, const Vector& w1,
                               double norm_hint);
LanczosPair unsym_lanczos_init(const SparseMatrix& a, const Vector& v1, const Vector& w1);

void unsym_lanczos_extend(const LinearOperator& a, LanczosPair& state);
void unsym_lanczos_extend(const SparseMatrix& a, LanczosPair& state);

// T_{k+1,k} and That_{k+1,k} after k completed steps.
DenseMatrix lanczos_t(const LanczosPair& state, std::size_t k);
DenseMatrix lanczos_t_hat(const LanczosPair& state, std::size_t k);

DualSolveResult qmr_solve_operator(const LinearOperator& a, const Vector& b, const Vector& g,
                                   const Vector& x0, const Vector& y0, double tol,
                                   std::size_t maxit, double norm_hint = 1.0);
DualSolveResult qmr_solve(const SparseMatrix& a, const Vector& b, const Vector& g,
                          const Vector& x0, const Vector& y0, double tol, std::size_t maxit);

} // namespace scamp

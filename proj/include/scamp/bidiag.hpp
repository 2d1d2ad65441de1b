// bidiag.hpp
//
// Bidiagonalization-based pairs of forward/adjoint solvers.
//
// LSQR runs Golub-Kahan bidiagonalization A V_k = U_{k+1} B_k seeded by
// u_1 = r_0/||r_0|| (v_1 is then forced to A^T u_1 / alpha_1); the forward
// iterate minimizes the residual over span(V_k) and the adjoint iterate
// comes from the transposed projected system on U.
//
// GLSQR frees both start vectors: u_1 = r_0/||r_0||, v_1 = s_0/||s_0||,
// with banded projected matrices T (for A) and S (for A^T) and Galerkin
// updates through T_{k,k} and S_{k,k} solves. Both bases are kept
// orthonormal by two-pass reorthogonalization.
//
// Everything also runs matrix-free on a LinearOperator, which is how the
// benchmark harness applies the saddle preconditioner to these methods.

#pragma once

#include <cstddef>
#include <vector>

#include "scamp/dense.hpp"
#include "scamp/history.hpp"
#include "scamp/operator.hpp"
#include "scamp/sparse.hpp"

namespace scamp {

struct GolubKahanState {
    std::vector<Vector> us; // u_1 .. u_m, orthonormal
    std::vector<Vector> vs; // v_1 .. v_p, orthonormal
    // alphas[i] normalized v_{i+1} (alpha_1 comes from initialization);
    // betas[i] is beta_{i+2}, normalizing u_{i+2}. A vanishing trailing
    // entry is recorded when the corresponding side exhausts.
    std::vector<double> alphas;
    std::vector<double> betas;
    bool exhausted = false;       // Krylov space exhausted (lucky breakdown)
    double breakdown_floor = 0.0; // 1e-14 * ||A||, fixed at init
};

GolubKahanState golub_kahan_init(const LinearOperator& a, const Vector& u1, double norm_hint);
GolubKahanState golub_kahan_init(const SparseMatrix& a, const Vector& u1);

// One recurrence step: appends one column to each of U and V (with two-pass
// reorthogonalization) unless the space is exhausted, in which case the
// vanishing coefficient is recorded and `exhausted` is set.
void golub_kahan_extend(const LinearOperator& a, GolubKahanState& state);
void golub_kahan_extend(const SparseMatrix& a, GolubKahanState& state);

// Lower bidiagonal B_k of size (k+1) x k; requires k completed steps.
DenseMatrix golub_kahan_b(const GolubKahanState& state, std::size_t k);

struct GlsqrState {
    std::vector<Vector> us; // orthonormal
    std::vector<Vector> vs; // orthonormal
    // Expansion coefficients, one column per consumed basis vector:
    // t_cols[j][i] = u_{i+1} . A v_{j+1} with the normalization beta as the
    // trailing entry; s_cols[j][i] likewise for A^T u_{j+1} over the v
    // basis with eta trailing. In a breakdown-free run these are exactly
    // the banded alpha/beta/gamma and delta/eta/theta recurrences; when a
    // side loses a vector (||c_k|| or ||d_k|| below the floor) the column
    // closes with a zero normalizer and production continues on whatever
    // directions remain, so a one-sided lucky breakdown does not stall the
    // other sequence.
    std::vector<std::vector<double>> t_cols;
    std::vector<std::vector<double>> s_cols;
    bool exhausted = false;       // no production possible and bases stopped growing
    double breakdown_floor = 0.0;
};

GlsqrState glsqr_init(const LinearOperator& a, const Vector& u1, const Vector& v1,
                      double norm_hint);
GlsqrState glsqr_init(const SparseMatrix& a, const Vector& u1, const Vector& v1);

void glsqr_extend(const LinearOperator& a, GlsqrState& state);
void glsqr_extend(const SparseMatrix& a, GlsqrState& state);

// T_{k+1,k} (projection of A) and S_{k+1,k} (projection of A^T).
DenseMatrix glsqr_t(const GlsqrState& state, std::size_t k);
DenseMatrix glsqr_s(const GlsqrState& state, std::size_t k);

DualSolveResult lsqr_solve_operator(const LinearOperator& a, const Vector& b, const Vector& g,
                                    const Vector& x0, const Vector& y0, double tol,
                                    std::size_t maxit, double norm_hint = 1.0);
DualSolveResult lsqr_solve(const SparseMatrix& a, const Vector& b, const Vector& g,
                           const Vector& x0, const Vector& y0, double tol, std::size_t maxit);

DualSolveResult glsqr_solve_operator(const LinearOperator& a, const Vector& b, const Vector& g,
                                     const Vector& x0, const Vector& y0, double tol,
                                     std::size_t maxit, double norm_hint = 1.0);
DualSolveResult glsqr_solve(const SparseMatrix& a, const Vector& b, const Vector& g,
                            const Vector& x0, const Vector& y0, double tol, std::size_t maxit);

} // namespace scamp

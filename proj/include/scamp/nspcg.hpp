// nspcg.hpp
//
// Conjugate gradient iteration on the saddle operator M in the inner
// product induced by G = M(gamma) M. M is G-symmetric and G-definite when
// w and gamma satisfy the spectral conditions, so the short CG recurrence
// applies even though M itself is nonsymmetric. Each iteration costs one
// M product and two M(gamma) products; successive residuals come out
// M(gamma)-orthogonal, which residual_orthogonality_report verifies.

#pragma once

#include <cstddef>
#include <functional>

#include "scamp/history.hpp"
#include "scamp/saddle.hpp"

namespace scamp {

// Both coefficient forms are exposed: the standard CG ratio
// <r,r>/<r_prev,r_prev> (default), and the variant with denominator
// <M r, r> that appears in some statements of the method. The latter
// breaks residual orthogonality on SPD special cases and exists for
// comparison only.
enum class BetaFormula { residual_ratio, m_residual_denominator };

struct NspcgConfig {
    double tol = 1e-8; // relative 2-norm residual target
    std::size_t maxit = 1000;
    bool record_residual_vectors = false;
    bool indefiniteness_check = true;
    BetaFormula beta = BetaFormula::residual_ratio;
};

// Generic core: operators given as callables (the preconditioned pipeline
// reuses it). extras, when set, fills the forward/adjoint/amplitude
// columns of each history record from the current iterate.
using SaddleApply = std::function<SaddleVector(const SaddleVector&)>;
using RecordExtras = std::function<void(const SaddleVector& z, HistoryRecord& rec)>;

SolveResult nspcg_solve_operator(const SaddleApply& m, const SaddleApply& m_gamma,
                                 const SaddleVector& b, const SaddleVector& z0,
                                 const NspcgConfig& cfg, const RecordExtras& extras = {});

// Standard entry point on a SaddleSystem. Recovers c and d from b
// (c = -b.bottom, d = b.top - A^T W c) to record per-iteration forward and
// adjoint residuals and the amplitude estimate.
SolveResult nspcg_solve(const SaddleSystem& sys, const SaddleVector& b, const SaddleVector& z0,
                        const NspcgConfig& cfg);

// max over i != j of |<r_i, r_j>_{M(gamma)}| normalized by the induced
// norms. Requires record_residual_vectors to have been set.
double residual_orthogonality_report(const SaddleSystem& sys, const ConvergenceHistory& history);

} // namespace scamp

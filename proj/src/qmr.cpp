// qmr.cpp

#include "scamp/qmr.hpp"

#include <cmath>
#include <utility>

#include "scamp/errors.hpp"

namespace scamp {

namespace {

HistoryRecord make_record(std::size_t iter, const LinearOperator& a, const Vector& b,
                          const Vector& g, const Vector& x, const Vector& y) {
    HistoryRecord rec;
    rec.iter = iter;
    rec.forward_resnorm = norm2(sub(b, a.apply(x)));
    rec.adjoint_resnorm = norm2(sub(g, a.apply_transpose(y)));
    rec.amplitude = dot(g, x);
    return rec;
}

} // namespace

LanczosPair unsym_lanczos_init(const LinearOperator& a, const Vector& v1, const Vector& w1,
                               double norm_hint) {
    if (a.rows() != a.cols()) {
        throw DimensionError("unsym_lanczos_init: operator must be square");
    }
    if (v1.size() != a.rows() || w1.size() != a.rows()) {
        throw DimensionError("unsym_lanczos_init: start vector length mismatch");
    }
    LanczosPair s;
    s.breakdown_floor = 1e-14 * norm_hint;
    s.vs.push_back(v1);
    s.ws.push_back(w1);
    return s;
}

LanczosPair unsym_lanczos_init(const SparseMatrix& a, const Vector& v1, const Vector& w1) {
    const SparseOperator op(a);
    return unsym_lanczos_init(op, v1, w1, a.frobenius_norm());
}

void unsym_lanczos_extend(const LinearOperator& a, LanczosPair& state) {
    if (state.serious_breakdown || state.exhausted) {
        return;
    }
    const std::size_t k = state.alpha.size() + 1; // step index

    // Coefficients by direct projection; biorthogonality makes w_j pick out
    // the v_j component and vice versa.
    const Vector av = a.apply(state.vs[k - 1]);
    const double alpha = dot(state.ws[k - 1], av);
    state.alpha.push_back(alpha);
    Vector v = av;
    axpy(-alpha, state.vs[k - 1], v);
    if (k >= 2) {
        const double gamma = dot(state.ws[k - 2], av);
        state.gamma.push_back(gamma);
        axpy(-gamma, state.vs[k - 2], v);
    }

    const Vector atw = a.apply_transpose(state.ws[k - 1]);
    const double alpha_hat = dot(state.vs[k - 1], atw);
    state.alpha_hat.push_back(alpha_hat);
    Vector w = atw;
    axpy(-alpha_hat, state.ws[k - 1], w);
    if (k >= 2) {
        const double gamma_hat = dot(state.vs[k - 2], atw);
        state.gamma_hat.push_back(gamma_hat);
        axpy(-gamma_hat, state.ws[k - 2], w);
    }

    // Two-sided rebiorthogonalization against all previous columns.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < state.vs.size(); ++j) {
            axpy(-dot(state.ws[j], v), state.vs[j], v);
            axpy(-dot(state.vs[j], w), state.ws[j], w);
        }
    }

    const double vn = norm2(v);
    const double wn = norm2(w);
    if (vn <= state.breakdown_floor || wn <= state.breakdown_floor) {
        state.beta.push_back(0.0);
        state.beta_hat.push_back(0.0);
        state.exhausted = true;
        return;
    }
    const double coupling = dot(w, v);
    if (std::abs(coupling) < 1e-12 * vn * wn) {
        state.serious_breakdown = true;
        return;
    }

    const double beta = vn;
    scale(v, 1.0 / beta);
    // w_{k+1}^T v_{k+1} = 1; the subdiagonal of That follows from the
    // coupling: A^T w_k has component (coupling / beta) along w_{k+1}.
    const double beta_hat = coupling / beta;
    scale(w, beta / coupling);

    state.beta.push_back(beta);
    state.beta_hat.push_back(beta_hat);
    state.vs.push_back(std::move(v));
    state.ws.push_back(std::move(w));
}

void unsym_lanczos_extend(const SparseMatrix& a, LanczosPair& state) {
    const SparseOperator op(a);
    unsym_lanczos_extend(op, state);
}

namespace {

DenseMatrix tridiagonal(const std::vector<double>& diag, const std::vector<double>& sub,
                        const std::vector<double>& super, std::size_t k) {
    DenseMatrix t(k + 1, k);
    for (std::size_t i = 0; i < k; ++i) {
        t(i, i) = diag[i];
        t(i + 1, i) = sub[i];
        if (i + 1 < k) {
            t(i, i + 1) = super[i];
        }
    }
    return t;
}

} // namespace

DenseMatrix lanczos_t(const LanczosPair& state, std::size_t k) {
    if (k == 0 || k > state.alpha.size() || k > state.beta.size()) {
        throw DimensionError("lanczos_t: not enough completed steps");
    }
    return tridiagonal(state.alpha, state.beta, state.gamma, k);
}

DenseMatrix lanczos_t_hat(const LanczosPair& state, std::size_t k) {
    if (k == 0 || k > state.alpha_hat.size() || k > state.beta_hat.size()) {
        throw DimensionError("lanczos_t_hat: not enough completed steps");
    }
    return tridiagonal(state.alpha_hat, state.beta_hat, state.gamma_hat, k);
}

DualSolveResult qmr_solve_operator(const LinearOperator& a, const Vector& b, const Vector& g,
                                   const Vector& x0, const Vector& y0, double tol,
                                   std::size_t maxit, double norm_hint) {
    DualSolveResult result;
    result.x = x0;
    result.y = y0;

    const Vector r0 = sub(b, a.apply(x0));
    const Vector s0 = sub(g, a.apply_transpose(y0));
    const double r0_norm = norm2(r0);
    const double s0_norm = norm2(s0);

    result.history.records.push_back(make_record(0, a, b, g, result.x, result.y));
    result.forward_converged = r0_norm == 0.0;
    result.adjoint_converged = s0_norm == 0.0;
    if (result.forward_converged && result.adjoint_converged) {
        result.status = SolveStatus::converged;
        return result;
    }

    Vector v1 = r0_norm > 0.0 ? r0 : s0;
    scale(v1, 1.0 / norm2(v1));
    Vector w1_dir = s0_norm > 0.0 ? s0 : r0;
    const double sigma = dot(w1_dir, v1);
    if (std::abs(sigma) <= 1e-12 * norm2(w1_dir)) {
        // Start vectors (bi)orthogonal: no valid w_1 with w_1^T v_1 = 1.
        result.status = SolveStatus::breakdown;
        return result;
    }
    Vector w1 = w1_dir;
    scale(w1, 1.0 / sigma);
    LanczosPair state = unsym_lanczos_init(a, v1, w1, norm_hint);

    for (std::size_t k = 1; k <= maxit; ++k) {
        if (!state.serious_breakdown && !state.exhausted) {
            unsym_lanczos_extend(a, state);
        }
        if (state.serious_breakdown) {
            result.status = SolveStatus::breakdown;
            return result;
        }
        const std::size_t kk = std::min(k, state.alpha.size());
        if (kk == 0) {
            result.status = SolveStatus::breakdown;
            return result;
        }

        // Forward quasi-residual: min || ||r0|| e_1 - T_{k+1,k} c ||.
        if (!result.forward_converged && r0_norm > 0.0) {
            const DenseMatrix t = lanczos_t(state, kk);
            Vector rhs(kk + 1, 0.0);
            rhs[0] = r0_norm;
            const Vector c = dense_lstsq(t, rhs);
            result.x = x0;
            for (std::size_t j = 0; j < kk; ++j) {
                axpy(c[j], state.vs[j], result.x);
            }
            const Vector tc = t.multiply(c);
            double q2 = 0.0;
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                const double diff = rhs[i] - tc[i];
                q2 += diff * diff;
            }
            result.forward_quasi_norms.push_back(std::sqrt(q2));
        }

        // Adjoint quasi-residual against sigma e_1: s0 = sigma * w_1 in the
        // w-basis under the w^T v = 1 scaling.
        if (!result.adjoint_converged && s0_norm > 0.0) {
            const DenseMatrix t_hat = lanczos_t_hat(state, kk);
            Vector rhs(kk + 1, 0.0);
            rhs[0] = sigma;
            const Vector d = dense_lstsq(t_hat, rhs);
            result.y = y0;
            for (std::size_t j = 0; j < kk; ++j) {
                axpy(d[j], state.ws[j], result.y);
            }
            const Vector td = t_hat.multiply(d);
            double q2 = 0.0;
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                const double diff = rhs[i] - td[i];
                q2 += diff * diff;
            }
            result.adjoint_quasi_norms.push_back(std::sqrt(q2));
        }

        result.iterations = k;
        HistoryRecord rec = make_record(k, a, b, g, result.x, result.y);
        result.history.records.push_back(rec);
        result.forward_converged = r0_norm == 0.0 || rec.forward_resnorm <= tol * r0_norm;
        result.adjoint_converged = s0_norm == 0.0 || rec.adjoint_resnorm <= tol * s0_norm;
        if (result.forward_converged && result.adjoint_converged) {
            result.status = SolveStatus::converged;
            return result;
        }
        if (state.exhausted && k >= state.alpha.size()) {
            result.status = SolveStatus::breakdown;
            return result;
        }
    }
    result.status = SolveStatus::maxit;
    return result;
}

DualSolveResult qmr_solve(const SparseMatrix& a, const Vector& b, const Vector& g,
                          const Vector& x0, const Vector& y0, double tol, std::size_t maxit) {
    const SparseOperator op(a);
    return qmr_solve_operator(op, b, g, x0, y0, tol, maxit, a.frobenius_norm());
}

} // namespace scamp

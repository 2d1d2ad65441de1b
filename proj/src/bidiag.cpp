// bidiag.cpp

#include "scamp/bidiag.hpp"

#include <cmath>
#include <utility>

#include "scamp/errors.hpp"

namespace scamp {

namespace {

// Two-pass modified Gram-Schmidt of w against an orthonormal basis.
void reorthogonalize(Vector& w, const std::vector<Vector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : basis) {
            axpy(-dot(q, w), q, w);
        }
    }
}

// Amplitude column for the shared history format: g . x estimates the
// functional of interest for a forward/adjoint pair.
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

GolubKahanState golub_kahan_init(const LinearOperator& a, const Vector& u1, double norm_hint) {
    if (a.rows() != a.cols()) {
        throw DimensionError("golub_kahan_init: operator must be square");
    }
    if (u1.size() != a.rows()) {
        throw DimensionError("golub_kahan_init: start vector length mismatch");
    }
    GolubKahanState s;
    s.breakdown_floor = 1e-14 * norm_hint;
    s.us.push_back(u1);
    Vector v = a.apply_transpose(u1);
    const double alpha = norm2(v);
    s.alphas.push_back(alpha);
    if (alpha <= s.breakdown_floor) {
        s.exhausted = true;
        return s;
    }
    scale(v, 1.0 / alpha);
    s.vs.push_back(std::move(v));
    return s;
}

GolubKahanState golub_kahan_init(const SparseMatrix& a, const Vector& u1) {
    const SparseOperator op(a);
    return golub_kahan_init(op, u1, a.frobenius_norm());
}

void golub_kahan_extend(const LinearOperator& a, GolubKahanState& state) {
    if (state.exhausted) {
        return;
    }
    const std::size_t m = state.us.size(); // == vs.size()
    // beta_{m+1} u_{m+1} = A v_m - alpha_m u_m
    Vector u = a.apply(state.vs[m - 1]);
    axpy(-state.alphas[m - 1], state.us[m - 1], u);
    reorthogonalize(u, state.us);
    const double beta = norm2(u);
    if (beta <= state.breakdown_floor) {
        state.betas.push_back(0.0);
        state.exhausted = true;
        return;
    }
    state.betas.push_back(beta);
    scale(u, 1.0 / beta);
    state.us.push_back(std::move(u));

    // alpha_{m+1} v_{m+1} = A^T u_{m+1} - beta_{m+1} v_m
    Vector v = a.apply_transpose(state.us[m]);
    axpy(-beta, state.vs[m - 1], v);
    reorthogonalize(v, state.vs);
    const double alpha = norm2(v);
    if (alpha <= state.breakdown_floor) {
        state.alphas.push_back(0.0);
        state.exhausted = true;
        return;
    }
    state.alphas.push_back(alpha);
    scale(v, 1.0 / alpha);
    state.vs.push_back(std::move(v));
}

void golub_kahan_extend(const SparseMatrix& a, GolubKahanState& state) {
    const SparseOperator op(a);
    golub_kahan_extend(op, state);
}

DenseMatrix golub_kahan_b(const GolubKahanState& state, std::size_t k) {
    if (k == 0 || k > state.alphas.size() || k > state.betas.size()) {
        throw DimensionError("golub_kahan_b: not enough completed steps");
    }
    DenseMatrix b(k + 1, k);
    for (std::size_t i = 0; i < k; ++i) {
        b(i, i) = state.alphas[i];
        b(i + 1, i) = state.betas[i];
    }
    return b;
}

DualSolveResult lsqr_solve_operator(const LinearOperator& a, const Vector& b, const Vector& g,
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

    // The forward residual seeds the process; a zero forward residual with
    // outstanding adjoint work falls back to the adjoint direction.
    Vector u1 = r0_norm > 0.0 ? r0 : s0;
    scale(u1, 1.0 / norm2(u1));
    GolubKahanState state = golub_kahan_init(a, u1, norm_hint);

    for (std::size_t k = 1; k <= maxit; ++k) {
        if (!state.exhausted) {
            golub_kahan_extend(a, state);
        }
        const std::size_t usable = std::min(state.alphas.size(), state.betas.size());
        const std::size_t kk = std::min(k, usable);
        if (kk == 0) {
            // alpha_1 vanished at init: A^T annihilates the seed
            result.status = SolveStatus::breakdown;
            return result;
        }

        // Forward: least squares on B_kk.
        if (!result.forward_converged && r0_norm > 0.0) {
            const DenseMatrix bk = golub_kahan_b(state, kk);
            Vector rhs(kk + 1, 0.0);
            rhs[0] = r0_norm;
            const Vector z = dense_lstsq(bk, rhs);
            result.x = x0;
            for (std::size_t j = 0; j < kk; ++j) {
                axpy(z[j], state.vs[j], result.x);
            }
        }

        // Adjoint: square projected system. With v_{kk+1} available the
        // system is [B_kk^T; alpha_{kk+1} e^T] over U_{kk+1}; at exhaustion
        // it reduces to the kk x kk upper-bidiagonal block over U_kk.
        if (!result.adjoint_converged && s0_norm > 0.0) {
            const bool full = state.alphas.size() >= kk + 1 && state.vs.size() >= kk + 1 &&
                              state.us.size() >= kk + 1;
            const std::size_t dim = full ? kk + 1 : std::min(kk, state.us.size());
            DenseMatrix bt(dim, dim);
            for (std::size_t i = 0; i < dim; ++i) {
                bt(i, i) = state.alphas[i];
                if (i + 1 < dim) {
                    bt(i, i + 1) = state.betas[i];
                }
            }
            Vector rhs(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                rhs[i] = dot(state.vs[i], s0);
            }
            bool skipped = false;
            try {
                const Vector w = dense_solve(bt, rhs);
                result.y = y0;
                for (std::size_t j = 0; j < dim; ++j) {
                    axpy(w[j], state.us[j], result.y);
                }
            } catch (const SingularError&) {
                skipped = true;
            }
            result.history.update_skipped.push_back(skipped);
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
        if (state.exhausted && k >= usable) {
            // Lucky breakdown: the space cannot grow further.
            result.status = SolveStatus::breakdown;
            return result;
        }
    }
    result.status = SolveStatus::maxit;
    return result;
}

DualSolveResult lsqr_solve(const SparseMatrix& a, const Vector& b, const Vector& g,
                           const Vector& x0, const Vector& y0, double tol, std::size_t maxit) {
    const SparseOperator op(a);
    return lsqr_solve_operator(op, b, g, x0, y0, tol, maxit, a.frobenius_norm());
}

GlsqrState glsqr_init(const LinearOperator& a, const Vector& u1, const Vector& v1,
                      double norm_hint) {
    if (a.rows() != a.cols()) {
        throw DimensionError("glsqr_init: operator must be square");
    }
    if (u1.size() != a.rows() || v1.size() != a.rows()) {
        throw DimensionError("glsqr_init: start vector length mismatch");
    }
    GlsqrState s;
    s.breakdown_floor = 1e-14 * norm_hint;
    s.us.push_back(u1);
    s.vs.push_back(v1);
    return s;
}

GlsqrState glsqr_init(const SparseMatrix& a, const Vector& u1, const Vector& v1) {
    const SparseOperator op(a);
    return glsqr_init(op, u1, v1, a.frobenius_norm());
}

void glsqr_extend(const LinearOperator& a, GlsqrState& state) {
    if (state.exhausted) {
        return;
    }
    const std::size_t us_before = state.us.size();
    const std::size_t vs_before = state.vs.size();

    // One new u from the next unconsumed v.
    if (state.t_cols.size() < state.vs.size()) {
        const std::size_t j = state.t_cols.size();
        Vector w = a.apply(state.vs[j]);
        std::vector<double> col(state.us.size() + 1, 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < state.us.size(); ++i) {
                const double cij = dot(state.us[i], w);
                col[i] += cij;
                axpy(-cij, state.us[i], w);
            }
        }
        const double beta = norm2(w);
        if (beta > state.breakdown_floor) {
            col[state.us.size()] = beta;
            scale(w, 1.0 / beta);
            state.us.push_back(std::move(w));
        }
        state.t_cols.push_back(std::move(col));
    }

    // One new v from the next unconsumed u.
    if (state.s_cols.size() < state.us.size()) {
        const std::size_t j = state.s_cols.size();
        Vector w = a.apply_transpose(state.us[j]);
        std::vector<double> col(state.vs.size() + 1, 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < state.vs.size(); ++i) {
                const double cij = dot(state.vs[i], w);
                col[i] += cij;
                axpy(-cij, state.vs[i], w);
            }
        }
        const double eta = norm2(w);
        if (eta > state.breakdown_floor) {
            col[state.vs.size()] = eta;
            scale(w, 1.0 / eta);
            state.vs.push_back(std::move(w));
        }
        state.s_cols.push_back(std::move(col));
    }

    if (state.us.size() == us_before && state.vs.size() == vs_before) {
        state.exhausted = true; // both sequences closed
    }
}

void glsqr_extend(const SparseMatrix& a, GlsqrState& state) {
    const SparseOperator op(a);
    glsqr_extend(op, state);
}

namespace {

DenseMatrix projection_matrix(const std::vector<std::vector<double>>& cols, std::size_t rows,
                              std::size_t k) {
    DenseMatrix t(rows, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < cols[j].size() && i < rows; ++i) {
            t(i, j) = cols[j][i];
        }
    }
    return t;
}

} // namespace

DenseMatrix glsqr_t(const GlsqrState& state, std::size_t k) {
    if (k == 0 || k > state.t_cols.size()) {
        throw DimensionError("glsqr_t: not enough completed steps");
    }
    return projection_matrix(state.t_cols, k + 1, k);
}

DenseMatrix glsqr_s(const GlsqrState& state, std::size_t k) {
    if (k == 0 || k > state.s_cols.size()) {
        throw DimensionError("glsqr_s: not enough completed steps");
    }
    return projection_matrix(state.s_cols, k + 1, k);
}

DualSolveResult glsqr_solve_operator(const LinearOperator& a, const Vector& b, const Vector& g,
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

    // Independent start vectors; a solved side borrows the other direction.
    Vector u1 = r0_norm > 0.0 ? r0 : s0;
    Vector v1 = s0_norm > 0.0 ? s0 : r0;
    scale(u1, 1.0 / norm2(u1));
    scale(v1, 1.0 / norm2(v1));
    GlsqrState state = glsqr_init(a, u1, v1, norm_hint);

    for (std::size_t k = 1; k <= maxit; ++k) {
        glsqr_extend(a, state);

        // Galerkin updates through the leading square blocks. Columns
        // produced after a basis vector stopped growing pad with zeros, so
        // the square block is always U_m^T A V_m for the vectors that
        // exist.
        bool forward_skipped = false;
        const std::size_t mx = std::min({k, state.t_cols.size(), state.us.size()});
        if (!result.forward_converged && r0_norm > 0.0 && mx > 0) {
            DenseMatrix tkk(mx, mx);
            for (std::size_t j = 0; j < mx; ++j) {
                for (std::size_t i = 0; i < mx && i < state.t_cols[j].size(); ++i) {
                    tkk(i, j) = state.t_cols[j][i];
                }
            }
            Vector rhs(mx, 0.0);
            rhs[0] = r0_norm;
            try {
                const Vector cvec = dense_solve(tkk, rhs);
                result.x = x0;
                for (std::size_t j = 0; j < mx; ++j) {
                    axpy(cvec[j], state.vs[j], result.x);
                }
            } catch (const SingularError&) {
                forward_skipped = true; // Galerkin iterate does not exist at this k
            }
        }

        bool adjoint_skipped = false;
        const std::size_t my = std::min({k, state.s_cols.size(), state.vs.size()});
        if (!result.adjoint_converged && s0_norm > 0.0 && my > 0) {
            DenseMatrix skk(my, my);
            for (std::size_t j = 0; j < my; ++j) {
                for (std::size_t i = 0; i < my && i < state.s_cols[j].size(); ++i) {
                    skk(i, j) = state.s_cols[j][i];
                }
            }
            Vector rhs(my, 0.0);
            rhs[0] = s0_norm;
            try {
                const Vector dvec = dense_solve(skk, rhs);
                result.y = y0;
                for (std::size_t j = 0; j < my; ++j) {
                    axpy(dvec[j], state.us[j], result.y);
                }
            } catch (const SingularError&) {
                adjoint_skipped = true;
            }
        }
        result.history.update_skipped.push_back(forward_skipped || adjoint_skipped);

        result.iterations = k;
        HistoryRecord rec = make_record(k, a, b, g, result.x, result.y);
        result.history.records.push_back(rec);
        result.forward_converged = r0_norm == 0.0 || rec.forward_resnorm <= tol * r0_norm;
        result.adjoint_converged = s0_norm == 0.0 || rec.adjoint_resnorm <= tol * s0_norm;
        if (result.forward_converged && result.adjoint_converged) {
            result.status = SolveStatus::converged;
            return result;
        }
        if (state.exhausted && k >= std::max(state.t_cols.size(), state.s_cols.size())) {
            result.status = SolveStatus::breakdown;
            return result;
        }
    }
    result.status = SolveStatus::maxit;
    return result;
}

DualSolveResult glsqr_solve(const SparseMatrix& a, const Vector& b, const Vector& g,
                            const Vector& x0, const Vector& y0, double tol, std::size_t maxit) {
    const SparseOperator op(a);
    return glsqr_solve_operator(op, b, g, x0, y0, tol, maxit, a.frobenius_norm());
}

} // namespace scamp

// precond.cpp

#include "scamp/precond.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scamp/errors.hpp"
#include "scamp/spectral.hpp"

namespace scamp {

WeightFactor cholesky_spd(double w, std::size_t dim) {
    if (w <= 0.0) {
        throw NotSPDError("cholesky_spd: scalar weight must be positive");
    }
    return WeightFactor{std::sqrt(w), dim};
}

WeightFactor cholesky_spd(const SparseMatrix& w) {
    const std::size_t n = w.rows();
    if (w.cols() != n) {
        throw DimensionError("cholesky_spd: matrix must be square");
    }
    // Gather to dense; weight matrices are desk-scale here. Symmetry is
    // validated entrywise before factorizing.
    std::vector<double> a(n * n, 0.0);
    const auto& rp = w.row_ptr();
    const auto& ci = w.col_idx();
    const auto& vals = w.values();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            a[i * n + ci[k]] = vals[k];
        }
    }
    const double scale = w.max_abs();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-12 * std::max(scale, 1.0)) {
                throw NotSPDError("cholesky_spd: matrix is not symmetric");
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) {
            d -= a[j * n + k] * a[j * n + k];
        }
        if (d <= 0.0) {
            throw NotSPDError("cholesky_spd: nonpositive pivot");
        }
        a[j * n + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / a[j * n + j];
        }
    }

    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (a[i * n + j] != 0.0) {
                t.push_back({i, j, a[i * n + j]});
            }
        }
    }
    return WeightFactor{SparseMatrix(n, n, std::move(t)), n};
}

namespace {

// x solving R x = v for upper-triangular CSR R (back substitution).
Vector upper_solve(const SparseMatrix& r, const Vector& v) {
    const std::size_t n = r.rows();
    if (v.size() != n) {
        throw DimensionError("upper_solve: length mismatch");
    }
    Vector x = v;
    const auto& rp = r.row_ptr();
    const auto& ci = r.col_idx();
    const auto& vals = r.values();
    for (std::size_t i = n; i-- > 0;) {
        double diag = 0.0;
        double s = x[i];
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            if (ci[k] == i) {
                diag = vals[k];
            } else if (ci[k] > i) {
                s -= vals[k] * x[ci[k]];
            }
        }
        if (diag == 0.0) {
            throw SingularError("upper_solve: zero diagonal");
        }
        x[i] = s / diag;
    }
    return x;
}

// x solving R^T x = v; forward substitution driven by the rows of R.
Vector upper_transpose_solve(const SparseMatrix& r, const Vector& v) {
    const std::size_t n = r.rows();
    if (v.size() != n) {
        throw DimensionError("upper_transpose_solve: length mismatch");
    }
    Vector x = v;
    const auto& rp = r.row_ptr();
    const auto& ci = r.col_idx();
    const auto& vals = r.values();
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            if (ci[k] == i) {
                diag = vals[k];
                break;
            }
        }
        if (diag == 0.0) {
            throw SingularError("upper_transpose_solve: zero diagonal");
        }
        x[i] /= diag;
        const double xi = x[i];
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            if (ci[k] > i) {
                x[ci[k]] -= vals[k] * xi;
            }
        }
    }
    return x;
}

Vector q_apply(const DenseMatrix& q, const Vector& v) {
    return q.multiply(v);
}

Vector q_apply_transpose(const DenseMatrix& q, const Vector& v) {
    return q.multiply_transpose(v);
}

} // namespace

QrFactors incomplete_qr(const SparseMatrix& b, double droptol) {
    const std::size_t n = b.rows();
    if (b.cols() != n) {
        throw DimensionError("incomplete_qr: matrix must be square");
    }
    if (droptol < 0.0) {
        throw std::invalid_argument("incomplete_qr: droptol must be nonnegative");
    }
    const bool exact = droptol == 0.0;

    // Column access: gather B into dense columns once.
    std::vector<Vector> cols(n, Vector(n, 0.0));
    {
        const auto& rp = b.row_ptr();
        const auto& ci = b.col_idx();
        const auto& vals = b.values();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
                cols[ci[k]][i] = vals[k];
            }
        }
    }

    QrFactors out;
    out.droptol = droptol;
    out.exact = exact;
    out.q = DenseMatrix(n, n);
    std::vector<Triplet> r_entries;

    std::vector<Vector> q_cols;
    q_cols.reserve(n);

    for (std::size_t j = 0; j < n; ++j) {
        Vector v = cols[j];
        const double colnorm = norm2(v);
        Vector r_col(j, 0.0);
        for (std::size_t i = 0; i < j; ++i) {
            const double rij = dot(q_cols[i], v);
            r_col[i] = rij;
            axpy(-rij, q_cols[i], v);
        }
        if (exact) {
            // Second MGS pass for near-machine orthogonality.
            for (std::size_t i = 0; i < j; ++i) {
                const double rij = dot(q_cols[i], v);
                r_col[i] += rij;
                axpy(-rij, q_cols[i], v);
            }
        } else {
            for (double& rij : r_col) {
                if (std::abs(rij) < droptol * colnorm) {
                    rij = 0.0;
                }
            }
            for (double& qv : v) {
                if (std::abs(qv) < droptol) {
                    qv = 0.0;
                }
            }
        }
        const double rjj = norm2(v);
        if (rjj <= 1e-14 * std::max(colnorm, 1e-300)) {
            throw SingularError("incomplete_qr: column vanished (structural breakdown)");
        }
        scale(v, 1.0 / rjj);

        for (std::size_t i = 0; i < j; ++i) {
            if (r_col[i] != 0.0) {
                r_entries.push_back({i, j, r_col[i]});
            }
        }
        r_entries.push_back({j, j, rjj});
        for (std::size_t i = 0; i < n; ++i) {
            out.q(i, j) = v[i];
        }
        q_cols.push_back(std::move(v));
    }
    out.r = SparseMatrix(n, n, std::move(r_entries));

    // Diagnostics: factorization misfit and Q orthogonality defect.
    double fit2 = 0.0;
    double defect = 0.0;
    if (!exact) {
        for (std::size_t j = 0; j < n; ++j) {
            // residual column: B e_j - Q (R e_j)
            Vector rcol(n, 0.0);
            const auto& rp = out.r.row_ptr();
            const auto& ci = out.r.col_idx();
            const auto& vals = out.r.values();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
                    if (ci[k] == j) {
                        rcol[i] = vals[k];
                    }
                }
            }
            Vector qr = q_apply(out.q, rcol);
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = cols[j][i] - qr[i];
                fit2 += diff * diff;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double qq = dot(q_cols[i], q_cols[j]) - (i == j ? 1.0 : 0.0);
                defect = std::max(defect, std::abs(qq));
            }
        }
    }
    out.fit_residual = std::sqrt(fit2);
    out.orth_defect = defect;
    return out;
}

SaddlePreconditioner make_saddle_preconditioner(const SaddleSystem& sys, double droptol) {
    SaddlePreconditioner p;
    if (sys.scalar_weight()) {
        p.g = cholesky_spd(sys.weight_scalar(), sys.n());
    } else {
        p.g = sys.weight_factor();
    }
    // G^T A, built sparse: scalar weights just scale A.
    SparseMatrix gta = sys.a();
    if (sys.scalar_weight()) {
        gta.scale_values(std::get<double>(p.g.g));
    } else {
        // Row i of G^T A = sum_k G(k,i) * row_k(A); gather via triplets.
        const SparseMatrix& gl = std::get<SparseMatrix>(p.g.g);
        const SparseMatrix gt = gl.transposed();
        std::vector<Triplet> t;
        const auto& grp = gt.row_ptr();
        const auto& gci = gt.col_idx();
        const auto& gv = gt.values();
        const auto& arp = sys.a().row_ptr();
        const auto& aci = sys.a().col_idx();
        const auto& av = sys.a().values();
        for (std::size_t i = 0; i < gt.rows(); ++i) {
            for (std::size_t k = grp[i]; k < grp[i + 1]; ++k) {
                const std::size_t row_a = gci[k];
                for (std::size_t l = arp[row_a]; l < arp[row_a + 1]; ++l) {
                    t.push_back({i, aci[l], gv[k] * av[l]});
                }
            }
        }
        gta = SparseMatrix(sys.n(), sys.n(), std::move(t));
    }
    p.qr = incomplete_qr(gta, droptol);
    return p;
}

SaddleVector apply_l_inv(const SaddlePreconditioner& p, const SaddleVector& v) {
    Vector top = upper_transpose_solve(p.qr.r, v.top);
    Vector bottom = q_apply_transpose(p.qr.q, p.g.apply_transpose(v.bottom));
    for (std::size_t i = 0; i < bottom.size(); ++i) {
        bottom[i] += top[i];
    }
    return {std::move(top), std::move(bottom)};
}

SaddleVector apply_u_inv(const SaddlePreconditioner& p, const SaddleVector& v) {
    Vector top = upper_solve(p.qr.r, sub(v.top, v.bottom));
    Vector bottom = p.g.apply(q_apply(p.qr.q, v.bottom));
    return {std::move(top), std::move(bottom)};
}

SaddleVector apply_l_inv_transpose(const SaddlePreconditioner& p, const SaddleVector& v) {
    // L~^-T = [ R^-1  R^-1 ; 0  G Q ]
    Vector top = upper_solve(p.qr.r, add(v.top, v.bottom));
    Vector bottom = p.g.apply(q_apply(p.qr.q, v.bottom));
    return {std::move(top), std::move(bottom)};
}

SaddleVector apply_u_inv_transpose(const SaddlePreconditioner& p, const SaddleVector& v) {
    // U~^-T = [ R^-T  0 ; -R^-T  Q^T G^T ]
    Vector top = upper_transpose_solve(p.qr.r, v.top);
    Vector bottom = q_apply_transpose(p.qr.q, p.g.apply_transpose(v.bottom));
    for (std::size_t i = 0; i < bottom.size(); ++i) {
        bottom[i] -= top[i];
    }
    return {std::move(top), std::move(bottom)};
}

SaddleVector apply_preconditioned(const SaddleSystem& sys, const SaddlePreconditioner& p,
                                  const SaddleVector& v) {
    return apply_l_inv(p, apply_m(sys, apply_u_inv(p, v)));
}

Vector apply_c(const SaddleSystem& sys, const SaddlePreconditioner& p, const Vector& v) {
    return p.g.apply_transpose(spmv(sys.a(), upper_solve(p.qr.r, v)));
}

Vector apply_c_transpose(const SaddleSystem& sys, const SaddlePreconditioner& p, const Vector& v) {
    return upper_transpose_solve(p.qr.r, spmv_t(sys.a(), p.g.apply(v)));
}

double choose_gamma_preconditioned(const SaddleSystem& sys, const SaddlePreconditioner& p) {
    FunctionOperator ctc(sys.n(), sys.n(), [&sys, &p](const Vector& v) {
        return apply_c_transpose(sys, p, apply_c(sys, p, v));
    });
    const EstimateResult lam = estimate_lambda_min_spd(ctc, sys.n());
    return 0.5 * lam.value;
}

SolveResult preconditioned_nspcg_solve(const SaddleSystem& sys, const SaddlePreconditioner& p,
                                       const SaddleVector& b, const NspcgConfig& cfg) {
    const SaddleVector b_hat = apply_l_inv(p, b);

    // The transformed system sits near the identity, where the shifted-J
    // construction J(M_hat - gamma I) is indefinite for every gamma (at
    // M_hat = I it is (1 - gamma) J), so the original inner-product
    // machinery has no admissible shift here. The iteration instead runs
    // plain conjugate gradient on the normal equations of the transformed
    // system: M_hat^T M_hat is SPD with condition number kappa(M_hat)^2,
    // which is about 1 for a good factorization, so the squaring that
    // rules the normal equations out for A itself is harmless.
    SaddleApply m_hat = [&sys, &p](const SaddleVector& v) {
        return apply_u_inv_transpose(
            p, apply_m_transpose(sys, apply_l_inv_transpose(
                                          p, apply_preconditioned(sys, p, v))));
    };
    SaddleApply m_hat_gamma = [](const SaddleVector& v) { return v; };
    SaddleVector b_normal = apply_u_inv_transpose(
        p, apply_m_transpose(sys, apply_l_inv_transpose(p, b_hat)));

    // Recover c, d for the history columns of the original system.
    Vector c = b.bottom;
    scale(c, -1.0);
    const Vector atwc = spmv_t(sys.a(), sys.apply_weight(c));
    Vector d = b.top;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] -= atwc[i];
    }

    RecordExtras extras = [&sys, &p, &c, &d](const SaddleVector& z_hat, HistoryRecord& rec) {
        const SaddleVector z = apply_u_inv(p, z_hat);
        rec.forward_resnorm = norm2(sub(c, spmv(sys.a(), z.top)));
        rec.adjoint_resnorm = norm2(sub(d, spmv_t(sys.a(), z.bottom)));
        rec.amplitude = dot(d, z.top);
    };

    SolveResult result = nspcg_solve_operator(m_hat, m_hat_gamma, b_normal,
                                               SaddleVector::zero(sys.n()), cfg, extras);
    result.z = apply_u_inv(p, result.z);
    return result;
}

} // namespace scamp

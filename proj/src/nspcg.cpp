// nspcg.cpp

#include "scamp/nspcg.hpp"

#include <cmath>

#include "scamp/errors.hpp"

namespace scamp {

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::maxit: return "maxit";
    case SolveStatus::breakdown: return "breakdown";
    case SolveStatus::indefinite: return "indefinite";
    }
    return "unknown";
}

SolveResult nspcg_solve_operator(const SaddleApply& m, const SaddleApply& m_gamma,
                                 const SaddleVector& b, const SaddleVector& z0,
                                 const NspcgConfig& cfg, const RecordExtras& extras) {
    SolveResult result;
    result.z = z0;

    SaddleVector r = sub(b, m(result.z));
    const double r0_norm = norm2(r);

    auto record = [&](std::size_t iter, double resnorm) {
        HistoryRecord rec;
        rec.iter = iter;
        rec.saddle_resnorm = resnorm;
        if (extras) {
            extras(result.z, rec);
        }
        result.history.records.push_back(rec);
        if (cfg.record_residual_vectors) {
            result.history.residual_vectors.push_back(r);
        }
    };

    record(0, r0_norm);
    if (r0_norm == 0.0) {
        result.status = SolveStatus::converged;
        return result;
    }

    SaddleVector p = r;
    SaddleVector mg_r = m_gamma(r);
    double rho = dot(mg_r, r); // <r, r>_{M(gamma)}

    for (std::size_t i = 0; i < cfg.maxit; ++i) {
        if (cfg.indefiniteness_check && rho <= 0.0) {
            result.status = SolveStatus::indefinite;
            return result;
        }
        const SaddleVector mp = m(p);
        const SaddleVector mg_p = m_gamma(p);
        const double denom = dot(mg_p, mp); // <M p, p>_{M(gamma)}
        if (cfg.indefiniteness_check && denom <= 0.0) {
            result.status = SolveStatus::indefinite;
            return result;
        }
        if (std::abs(denom) < 1e-300) {
            result.status = SolveStatus::breakdown;
            return result;
        }

        double beta_denominator = rho;
        if (cfg.beta == BetaFormula::m_residual_denominator) {
            // <M r_i, r_i>_{M(gamma)} on the residual before the update;
            // costs an extra pair of products, comparison mode only.
            beta_denominator = dot(m_gamma(m(r)), r);
        }

        const double alpha = rho / denom;
        axpy(alpha, p, result.z);
        axpy(-alpha, mp, r);

        mg_r = m_gamma(r);
        const double rho_next = dot(mg_r, r);

        result.iterations = i + 1;
        record(i + 1, norm2(r));

        if (norm2(r) <= cfg.tol * r0_norm) {
            result.status = SolveStatus::converged;
            return result;
        }

        const double beta = rho_next / beta_denominator;
        SaddleVector p_next = r;
        axpy(beta, p, p_next);
        p = std::move(p_next);
        rho = rho_next;
    }
    result.status = SolveStatus::maxit;
    return result;
}

SolveResult nspcg_solve(const SaddleSystem& sys, const SaddleVector& b, const SaddleVector& z0,
                        const NspcgConfig& cfg) {
    // c and d are implicit in b; recover them once for the history columns.
    Vector c = b.bottom;
    scale(c, -1.0);
    const Vector atwc = spmv_t(sys.a(), sys.apply_weight(c));
    Vector d = b.top;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] -= atwc[i];
    }

    RecordExtras extras = [&sys, &c, &d](const SaddleVector& z, HistoryRecord& rec) {
        rec.forward_resnorm = norm2(sub(c, spmv(sys.a(), z.top)));
        rec.adjoint_resnorm = norm2(sub(d, spmv_t(sys.a(), z.bottom)));
        rec.amplitude = dot(d, z.top);
    };

    return nspcg_solve_operator([&sys](const SaddleVector& v) { return apply_m(sys, v); },
                                [&sys](const SaddleVector& v) { return apply_m_gamma(sys, v); },
                                b, z0, cfg, extras);
}

double residual_orthogonality_report(const SaddleSystem& sys, const ConvergenceHistory& history) {
    const auto& rs = history.residual_vectors;
    if (rs.empty()) {
        throw MissingDataError(
            "residual_orthogonality_report: residual vectors were not recorded");
    }
    // Residuals at the rounding floor (a converged final iterate) carry no
    // directional information and are excluded from the pairing.
    const double floor = 1e-13 * norm2(rs.front());
    std::vector<const SaddleVector*> live;
    std::vector<SaddleVector> mg;
    std::vector<double> norms;
    for (const SaddleVector& r : rs) {
        if (norm2(r) <= floor) {
            continue;
        }
        SaddleVector g = apply_m_gamma(sys, r);
        const double n2 = dot(g, r);
        live.push_back(&r);
        mg.push_back(std::move(g));
        norms.push_back(std::sqrt(std::max(n2, 0.0)));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < live.size(); ++i) {
        for (std::size_t j = i + 1; j < live.size(); ++j) {
            const double denom = norms[i] * norms[j];
            if (denom == 0.0) {
                continue;
            }
            worst = std::max(worst, std::abs(dot(mg[i], *live[j])) / denom);
        }
    }
    return worst;
}

} // namespace scamp

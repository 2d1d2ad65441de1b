// bench.cpp

#include "scamp/bench.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scamp/bidiag.hpp"
#include "scamp/errors.hpp"
#include "scamp/mmio.hpp"
#include "scamp/nspcg.hpp"
#include "scamp/precond.hpp"
#include "scamp/qmr.hpp"
#include "scamp/rng.hpp"
#include "scamp/saddle.hpp"

namespace scamp {

SparseMatrix gen_example1(std::size_t n, double density, std::uint64_t seed) {
    if (density <= 0.0 || density > 1.0) {
        throw std::invalid_argument("gen_example1: density must be in (0, 1]");
    }
    Rng rng(seed);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(density * static_cast<double>(n * n)) + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rng.uniform() < density) {
                t.push_back({i, j, rng.uniform()});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, 1.0}); // identity added on top of the random part
    }
    return SparseMatrix(n, n, std::move(t));
}

SparseMatrix gen_example3(std::size_t n, double scale, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("gen_example3: n must be at least 2");
    }
    constexpr double kDensity = 0.2;
    Rng rng(seed);
    std::vector<Triplet> t;
    if (scale != 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (rng.uniform() < kDensity) {
                    t.push_back({i, j, scale * rng.uniform()});
                }
            }
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        t.push_back({i, i + 1, 1.0});
    }
    t.push_back({n - 1, 0, 1.0});
    return SparseMatrix(n, n, std::move(t));
}

namespace {

// Columns of a random orthogonal matrix: two-pass MGS of a Gaussian
// matrix. MGS diagonals are norms, so R has a positive diagonal and the
// factor is unique given the Gaussian draw.
std::vector<Vector> random_orthogonal_columns(std::size_t n, Rng& rng) {
    std::vector<Vector> cols(n, Vector(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            cols[j][i] = rng.normal();
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                axpy(-dot(cols[i], cols[j]), cols[i], cols[j]);
            }
        }
        const double nrm = norm2(cols[j]);
        if (nrm == 0.0) {
            throw std::runtime_error("random_orthogonal_columns: degenerate draw");
        }
        scale(cols[j], 1.0 / nrm);
    }
    return cols;
}

} // namespace

SparseMatrix gen_example456(std::size_t n, std::size_t p, std::uint64_t seed, bool identity_uv) {
    if (p == 0 || p >= n) {
        throw std::invalid_argument("gen_example456: need 0 < p < n");
    }
    Vector sigma(n, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        sigma[i] = 1000.0;
    }
    for (std::size_t i = p; i < n; ++i) {
        sigma[i] = static_cast<double>(i - p + 1);
    }
    if (identity_uv) {
        return SparseMatrix::diagonal(sigma);
    }

    Rng rng(seed);
    const std::vector<Vector> u = random_orthogonal_columns(n, rng);
    const std::vector<Vector> v = random_orthogonal_columns(n, rng);

    // A = sum_j sigma_j u_j v_j^T, accumulated densely in row-major order.
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = sigma[j];
        for (std::size_t r = 0; r < n; ++r) {
            const double su = s * u[j][r];
            for (std::size_t c = 0; c < n; ++c) {
                dense[r * n + c] += su * v[j][c];
            }
        }
    }
    return SparseMatrix::from_dense(n, n, dense);
}

SparseMatrix build_problem(const ProblemSpec& spec) {
    switch (spec.kind) {
    case ProblemKind::example1:
        return gen_example1(spec.n, spec.density, spec.seed);
    case ProblemKind::example2:
    case ProblemKind::file:
        if (spec.path.empty()) {
            throw std::invalid_argument("build_problem: file-based problem needs a path");
        }
        return read_matrix_market_file(spec.path);
    case ProblemKind::example3:
        return gen_example3(spec.n, spec.scale, spec.seed);
    case ProblemKind::example4:
        return gen_example456(spec.n, spec.p != 0 ? spec.p : spec.n * 9 / 10, spec.seed);
    case ProblemKind::example5:
        return gen_example456(spec.n, spec.p != 0 ? spec.p : spec.n / 2, spec.seed);
    case ProblemKind::example6:
        return gen_example456(spec.n, spec.p != 0 ? spec.p : spec.n * 6 / 10, spec.seed);
    }
    throw std::invalid_argument("build_problem: unknown problem kind");
}

std::string problem_name(const ProblemSpec& spec) {
    switch (spec.kind) {
    case ProblemKind::example1: return "example1";
    case ProblemKind::example2: return "example2";
    case ProblemKind::example3: return "example3";
    case ProblemKind::example4: return "example4";
    case ProblemKind::example5: return "example5";
    case ProblemKind::example6: return "example6";
    case ProblemKind::file: return "file";
    }
    return "unknown";
}

std::string solver_name(SolverKind s) {
    switch (s) {
    case SolverKind::nspcg: return "nspcg";
    case SolverKind::glsqr: return "glsqr";
    case SolverKind::qmr: return "qmr";
    case SolverKind::lsqr: return "lsqr";
    }
    return "unknown";
}

namespace {

void make_rhs(const RunConfig& cfg, std::size_t n, Vector& c, Vector& d) {
    if (cfg.rhs == RhsKind::ones) {
        const double s = 1.0 / std::sqrt(static_cast<double>(n));
        c.assign(n, s);
        d.assign(n, s);
        return;
    }
    // Distinct stream from the matrix generator so rhs and matrix draws
    // do not interleave.
    Rng rng(cfg.problem.seed ^ 0x9e3779b97f4a7c15ull);
    c.resize(n);
    d.resize(n);
    for (double& v : c) {
        v = rng.normal();
    }
    for (double& v : d) {
        v = rng.normal();
    }
    scale(c, 1.0 / norm2(c));
    scale(d, 1.0 / norm2(d));
}

// Baselines on the preconditioned saddle system: solve
// (L~^-1 M U~^-1) zhat = L~^-1 b as a generic nonsymmetric system of
// dimension 2n, with adjoint right-hand side U~^-T p (p = [d; 0]), then
// map back z = U~^-1 zhat. Residual columns are packed/unpacked around
// the solvers' vector interface.
Vector pack(const SaddleVector& v) {
    Vector out;
    out.reserve(2 * v.top.size());
    out.insert(out.end(), v.top.begin(), v.top.end());
    out.insert(out.end(), v.bottom.begin(), v.bottom.end());
    return out;
}

SaddleVector unpack(const Vector& v) {
    const std::size_t n = v.size() / 2;
    SaddleVector out;
    out.top.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    out.bottom.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
    return out;
}

} // namespace

RunOutput run_benchmark(const RunConfig& cfg) {
    const SparseMatrix a = build_problem(cfg.problem);
    const std::size_t n = a.rows();
    Vector c;
    Vector d;
    make_rhs(cfg, n, c, d);

    RunOutput out;
    out.n = n;

    if (cfg.solver != SolverKind::nspcg && cfg.precond == PrecondKind::none) {
        const Vector x0(n, 0.0);
        const Vector y0(n, 0.0);
        DualSolveResult r;
        switch (cfg.solver) {
        case SolverKind::glsqr: r = glsqr_solve(a, c, d, x0, y0, cfg.tol, cfg.maxit); break;
        case SolverKind::qmr: r = qmr_solve(a, c, d, x0, y0, cfg.tol, cfg.maxit); break;
        case SolverKind::lsqr: r = lsqr_solve(a, c, d, x0, y0, cfg.tol, cfg.maxit); break;
        default: break;
        }
        out.status = r.status;
        out.iterations = r.iterations;
        out.history = std::move(r.history);
        const HistoryRecord& last = out.history.records.back();
        out.amplitude = last.amplitude;
        out.final_forward_resnorm = last.forward_resnorm;
        out.final_adjoint_resnorm = last.adjoint_resnorm;
        out.final_saddle_resnorm = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    // Saddle route: weight and shift from the spectral estimates. The
    // Lanczos iteration cap keeps the setup cost subordinate to the solve
    // at file-problem scale; the safety factor absorbs the estimate slack.
    const std::size_t est_maxit = std::min<std::size_t>(5 * n, 600);
    const WeightChoice wc = choose_w(a, cfg.w_mode, 1.1, 1e-6, est_maxit);
    const GammaChoice gc = choose_gamma(a, wc.w, 1e-6, est_maxit);
    const SaddleSystem sys(a, wc.w, gc.gamma);
    const SaddleVector b = build_rhs(sys, c, d);
    out.w = wc.w;
    out.gamma = gc.gamma;

    NspcgConfig ncfg;
    ncfg.tol = cfg.tol;
    ncfg.maxit = cfg.maxit;

    SolveResult sr;
    if (cfg.precond == PrecondKind::none) {
        sr = nspcg_solve(sys, b, SaddleVector::zero(n), ncfg);
    } else {
        const double droptol = cfg.precond == PrecondKind::exact_qr ? 0.0 : cfg.droptol;
        out.droptol = droptol;
        const SaddlePreconditioner p = make_saddle_preconditioner(sys, droptol);
        if (cfg.solver == SolverKind::nspcg) {
            sr = preconditioned_nspcg_solve(sys, p, b, ncfg);
        } else {
            // Transformed-system pipeline for the baselines.
            const SaddleVector b_hat = apply_l_inv(p, b);
            SaddleVector p_vec = SaddleVector::zero(n);
            p_vec.top = d;
            const SaddleVector g_hat = apply_u_inv_transpose(p, p_vec);

            FunctionOperator m_hat(
                2 * n, 2 * n,
                [&sys, &p](const Vector& v) {
                    return pack(apply_preconditioned(sys, p, unpack(v)));
                },
                [&sys, &p](const Vector& v) {
                    return pack(apply_u_inv_transpose(
                        p, apply_m_transpose(sys, apply_l_inv_transpose(p, unpack(v)))));
                });
            const Vector bh = pack(b_hat);
            const Vector gh = pack(g_hat);
            const Vector zero(2 * n, 0.0);
            DualSolveResult r;
            switch (cfg.solver) {
            case SolverKind::glsqr:
                r = glsqr_solve_operator(m_hat, bh, gh, zero, zero, cfg.tol, cfg.maxit);
                break;
            case SolverKind::qmr:
                r = qmr_solve_operator(m_hat, bh, gh, zero, zero, cfg.tol, cfg.maxit);
                break;
            case SolverKind::lsqr:
                r = lsqr_solve_operator(m_hat, bh, gh, zero, zero, cfg.tol, cfg.maxit);
                break;
            default: break;
            }
            const SaddleVector z = apply_u_inv(p, unpack(r.x));
            const AmplitudeResult amp = extract_amplitude(sys, z, c, d);
            out.status = r.status;
            out.iterations = r.iterations;
            out.history = std::move(r.history);
            out.amplitude = amp.amplitude;
            out.final_forward_resnorm = amp.forward_residual;
            out.final_adjoint_resnorm = amp.adjoint_residual;
            out.final_saddle_resnorm =
                out.history.records.empty() ? 0.0 : out.history.records.back().forward_resnorm;
            return out;
        }
    }

    out.status = sr.status;
    out.iterations = sr.iterations;
    out.history = std::move(sr.history);
    const AmplitudeResult amp = extract_amplitude(sys, sr.z, c, d);
    out.amplitude = amp.amplitude;
    out.final_forward_resnorm = amp.forward_residual;
    out.final_adjoint_resnorm = amp.adjoint_residual;
    out.final_saddle_resnorm = out.history.records.back().saddle_resnorm;
    return out;
}

std::string summary_json(const RunConfig& cfg, const RunOutput& out, double wall_ms) {
    nlohmann::json j;
    j["solver"] = solver_name(cfg.solver);
    j["problem"] = problem_name(cfg.problem);
    j["n"] = out.n;
    j["w"] = nullptr;
    j["gamma"] = nullptr;
    j["droptol"] = nullptr;
    if (out.w) {
        j["w"] = *out.w;
    }
    if (out.gamma) {
        j["gamma"] = *out.gamma;
    }
    if (out.droptol) {
        j["droptol"] = *out.droptol;
    }
    j["status"] = to_string(out.status);
    j["iterations"] = out.iterations;
    j["final_saddle_resnorm"] = out.final_saddle_resnorm;
    j["final_forward_resnorm"] = out.final_forward_resnorm;
    j["final_adjoint_resnorm"] = out.final_adjoint_resnorm;
    j["amplitude"] = out.amplitude;
    j["wall_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

int exit_code_for(SolveStatus status) {
    switch (status) {
    case SolveStatus::converged: return 0;
    case SolveStatus::maxit: return 2;
    case SolveStatus::breakdown: return 3;
    case SolveStatus::indefinite: return 4;
    }
    return 1;
}

void run_sweep(const SweepOptions& opts) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);

    const SolverKind solvers[] = {SolverKind::nspcg, SolverKind::glsqr, SolverKind::qmr,
                                  SolverKind::lsqr};

    std::vector<ProblemSpec> problems;
    problems.push_back({ProblemKind::example1, 100, 1, 0.2, 1e-3, 0, ""});
    if (!opts.orsirr_path.empty()) {
        problems.push_back({ProblemKind::example2, 0, 1, 0.2, 1e-3, 0, opts.orsirr_path});
    }
    problems.push_back({ProblemKind::example3, 100, 1, 0.2, 1e-3, 0, ""});
    problems.push_back({ProblemKind::example4, 100, 1, 0.2, 1e-3, 90, ""});
    problems.push_back({ProblemKind::example5, 100, 1, 0.2, 1e-3, 50, ""});
    if (opts.include_large) {
        problems.push_back({ProblemKind::example6, 1000, 1, 0.2, 1e-3, 600, ""});
    }

    auto emit = [&](const RunConfig& cfg, const std::string& stem) {
        const RunOutput out = run_benchmark(cfg);
        write_history_csv_file(opts.out_dir + "/" + stem + ".csv", out.history);
        std::ofstream js(opts.out_dir + "/" + stem + ".json", std::ios::binary);
        if (!js) {
            throw IoError("run_sweep: cannot open summary file");
        }
        js << summary_json(cfg, out, 0.0);
    };

    for (const ProblemSpec& prob : problems) {
        for (SolverKind solver : solvers) {
            RunConfig cfg;
            cfg.problem = prob;
            cfg.solver = solver;
            cfg.tol = opts.tol;
            cfg.maxit = opts.maxit;
            emit(cfg, problem_name(prob) + "_" + solver_name(solver));
        }
    }
    // Preconditioned comparison runs on the first example (and the file
    // example when present).
    for (const ProblemSpec& prob : problems) {
        if (prob.kind != ProblemKind::example1 && prob.kind != ProblemKind::example2) {
            continue;
        }
        for (SolverKind solver : solvers) {
            RunConfig cfg;
            cfg.problem = prob;
            cfg.solver = solver;
            cfg.precond = PrecondKind::iqr;
            cfg.droptol = 0.01;
            cfg.tol = opts.tol;
            cfg.maxit = opts.maxit;
            emit(cfg, problem_name(prob) + "_" + solver_name(solver) + "_iqr");
        }
    }
}

} // namespace scamp

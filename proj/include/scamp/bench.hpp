// bench.hpp
//
// Benchmark problem generators and the run harness behind the CLI: builds
// one of the six generated problems (or loads a matrix file), runs the
// chosen solver/preconditioner combination, and emits a convergence
// history CSV plus a JSON run summary. Everything is seeded; identical
// configurations produce byte-identical output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "scamp/history.hpp"
#include "scamp/sparse.hpp"
#include "scamp/spectral.hpp"

namespace scamp {

// Uniform sparse matrix plus identity: each entry present independently
// with probability `density`, values uniform on (0,1).
SparseMatrix gen_example1(std::size_t n, double density, std::uint64_t seed);

// Circulant single shift (superdiagonal ones, corner one) plus
// scale * random sparse of density 0.2.
SparseMatrix gen_example3(std::size_t n, double scale, std::uint64_t seed);

// A = U Sigma V^T with p singular values of 1000 and q = n - p values
// 1..q; U, V random orthogonal (QR of seeded Gaussians) or the identity
// when identity_uv is set (test hook). Returned dense-as-sparse.
SparseMatrix gen_example456(std::size_t n, std::size_t p, std::uint64_t seed,
                            bool identity_uv = false);

enum class ProblemKind { example1, example2, example3, example4, example5, example6, file };
enum class SolverKind { nspcg, glsqr, qmr, lsqr };
enum class PrecondKind { none, iqr, exact_qr };
enum class RhsKind { ones, seeded_random };

struct ProblemSpec {
    ProblemKind kind = ProblemKind::example1;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    double density = 0.2;      // example 1
    double scale = 1e-3;       // example 3
    std::size_t p = 0;         // examples 4-6; 0 means the per-example default
    std::string path;          // example2 / file
};

struct RunConfig {
    ProblemSpec problem;
    SolverKind solver = SolverKind::nspcg;
    PrecondKind precond = PrecondKind::none;
    double droptol = 0.01;
    WeightMode w_mode = WeightMode::weak;
    double tol = 1e-8;
    std::size_t maxit = 500;
    RhsKind rhs = RhsKind::ones;
};

struct RunOutput {
    SolveStatus status = SolveStatus::maxit;
    std::size_t n = 0;
    std::size_t iterations = 0;
    ConvergenceHistory history;
    double amplitude = 0.0;
    double final_saddle_resnorm = 0.0;
    double final_forward_resnorm = 0.0;
    double final_adjoint_resnorm = 0.0;
    // Saddle construction parameters; unset for plain baseline runs.
    std::optional<double> w;
    std::optional<double> gamma;
    std::optional<double> droptol;
};

SparseMatrix build_problem(const ProblemSpec& spec);

RunOutput run_benchmark(const RunConfig& cfg);

std::string problem_name(const ProblemSpec& spec);
std::string solver_name(SolverKind s);

// JSON run summary (single object; keys in sorted order for stable bytes).
std::string summary_json(const RunConfig& cfg, const RunOutput& out, double wall_ms);

// Exit code contract: 0 converged, 2 maxit, 3 breakdown, 4 indefinite.
int exit_code_for(SolveStatus status);

struct SweepOptions {
    std::string out_dir;
    std::string orsirr_path; // empty: the file-based example is skipped
    bool include_large = false;
    double tol = 1e-8;
    std::size_t maxit = 500;
};

// Runs the example/solver grid (generated examples for every solver,
// plus preconditioned runs) writing one CSV and one JSON per pair.
void run_sweep(const SweepOptions& opts);

} // namespace scamp

// bench_main.cpp
//
// Benchmark CLI. `bench run` executes one solver/problem combination and
// writes a convergence-history CSV and a JSON run summary; `bench sweep`
// runs the whole example/solver grid into a directory.
//
// Exit codes: 0 converged, 1 usage or I/O error, 2 maxit, 3 breakdown,
// 4 indefinite.

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scamp/bench.hpp"
#include "scamp/errors.hpp"
#include "scamp/mmio.hpp"

namespace {

bool parse_precond(const std::string& text, scamp::PrecondKind& kind, double& droptol) {
    if (text == "none") {
        kind = scamp::PrecondKind::none;
        return true;
    }
    if (text == "exact") {
        kind = scamp::PrecondKind::exact_qr;
        return true;
    }
    if (text.rfind("iqr", 0) == 0) {
        kind = scamp::PrecondKind::iqr;
        if (text.size() > 4 && text[3] == ':') {
            try {
                droptol = std::stod(text.substr(4));
            } catch (const std::exception&) {
                return false;
            }
        }
        return true;
    }
    return false;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forward/adjoint sparse solver benchmark"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "Run one solver on one problem");
    int example = 0;
    std::string matrix_path;
    std::string solver_text = "nspcg";
    std::string precond_text = "none";
    std::string w_mode_text = "weak";
    std::string rhs_text = "ones";
    double tol = 1e-8;
    std::size_t maxit = 500;
    std::uint64_t seed = 1;
    std::size_t n = 100;
    std::string out_csv;
    std::string out_json;
    run->add_option("--example", example, "Generated example number (1..6)")
        ->check(CLI::Range(1, 6));
    run->add_option("--matrix", matrix_path, "Matrix Market file to solve instead");
    run->add_option("--solver", solver_text, "nspcg|glsqr|qmr|lsqr");
    run->add_option("--precond", precond_text, "none|iqr:DROPTOL|exact");
    run->add_option("--w-mode", w_mode_text, "strict|weak");
    run->add_option("--tol", tol, "Relative residual target");
    run->add_option("--maxit", maxit, "Iteration cap");
    run->add_option("--seed", seed, "Generator seed");
    run->add_option("--n", n, "Problem size for generated examples");
    run->add_option("--rhs", rhs_text, "ones|random");
    run->add_option("--out-csv", out_csv, "Convergence history CSV path");
    run->add_option("--out-json", out_json, "Run summary JSON path");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "Run the full example/solver grid");
    std::string sweep_dir = "sweep-out";
    std::string orsirr_path;
    bool include_large = false;
    double sweep_tol = 1e-8;
    std::size_t sweep_maxit = 500;
    sweep->add_option("--out-dir", sweep_dir, "Output directory");
    sweep->add_option("--orsirr", orsirr_path, "Path to orsirr_1.mtx (enables the file example)");
    sweep->add_flag("--include-large", include_large, "Include the n=1000 example");
    sweep->add_option("--tol", sweep_tol, "Relative residual target");
    sweep->add_option("--maxit", sweep_maxit, "Iteration cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            scamp::RunConfig cfg;
            if (!matrix_path.empty()) {
                cfg.problem.kind = scamp::ProblemKind::file;
                cfg.problem.path = matrix_path;
            } else if (example >= 1 && example <= 6) {
                cfg.problem.kind = static_cast<scamp::ProblemKind>(example - 1);
                if (example == 2) {
                    std::cerr << "example 2 is the ORSIRR_1 matrix; pass it via --matrix\n";
                    return 1;
                }
                if (example == 6 && n == 100) {
                    n = 1000;
                }
            } else {
                std::cerr << "either --example or --matrix is required\n";
                return 1;
            }
            cfg.problem.n = n;
            cfg.problem.seed = seed;

            if (solver_text == "nspcg") {
                cfg.solver = scamp::SolverKind::nspcg;
            } else if (solver_text == "glsqr") {
                cfg.solver = scamp::SolverKind::glsqr;
            } else if (solver_text == "qmr") {
                cfg.solver = scamp::SolverKind::qmr;
            } else if (solver_text == "lsqr") {
                cfg.solver = scamp::SolverKind::lsqr;
            } else {
                std::cerr << "unknown solver: " << solver_text << "\n";
                return 1;
            }
            if (!parse_precond(precond_text, cfg.precond, cfg.droptol)) {
                std::cerr << "unknown preconditioner spec: " << precond_text << "\n";
                return 1;
            }
            if (w_mode_text == "strict") {
                cfg.w_mode = scamp::WeightMode::strict;
            } else if (w_mode_text == "weak") {
                cfg.w_mode = scamp::WeightMode::weak;
            } else {
                std::cerr << "unknown w-mode: " << w_mode_text << "\n";
                return 1;
            }
            if (rhs_text == "random") {
                cfg.rhs = scamp::RhsKind::seeded_random;
            } else if (rhs_text != "ones") {
                std::cerr << "unknown rhs kind: " << rhs_text << "\n";
                return 1;
            }
            cfg.tol = tol;
            cfg.maxit = maxit;

            const auto t0 = std::chrono::steady_clock::now();
            const scamp::RunOutput out = scamp::run_benchmark(cfg);
            const auto t1 = std::chrono::steady_clock::now();
            const double wall_ms =
                std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                    .count();

            if (!out_csv.empty()) {
                scamp::write_history_csv_file(out_csv, out.history);
            }
            const std::string summary = scamp::summary_json(cfg, out, wall_ms);
            if (!out_json.empty()) {
                std::ofstream js(out_json, std::ios::binary);
                if (!js) {
                    std::cerr << "cannot open " << out_json << "\n";
                    return 1;
                }
                js << summary;
            }
            std::cout << summary;
            return scamp::exit_code_for(out.status);
        }

        scamp::SweepOptions opts;
        opts.out_dir = sweep_dir;
        opts.orsirr_path = orsirr_path;
        opts.include_large = include_large;
        opts.tol = sweep_tol;
        opts.maxit = sweep_maxit;
        scamp::run_sweep(opts);
        std::cout << "sweep written to " << sweep_dir << "\n";
        return 0;
    } catch (const scamp::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

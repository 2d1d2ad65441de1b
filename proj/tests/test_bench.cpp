#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "scamp/bench.hpp"
#include "scamp/errors.hpp"
#include "scamp/mmio.hpp"
#include "scamp/spectral.hpp"

using namespace scamp;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("example1 generator structure") {
    // Vanishing density: no off-diagonal draws, identity remains.
    const SparseMatrix tiny = gen_example1(20, 1e-12, 1);
    CHECK(tiny.nnz() == 20);
    const Eigen::MatrixXd te = oracle::to_eigen(tiny);
    CHECK((te - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() == 0.0);

    // nnz concentrates around density * n^2 + n.
    const SparseMatrix a = gen_example1(100, 0.2, 1);
    const double expected = 0.2 * 100.0 * 100.0 + 100.0;
    CHECK(static_cast<double>(a.nnz()) >= 0.9 * expected);
    CHECK(static_cast<double>(a.nnz()) <= 1.1 * expected);

    // identity contributes to every diagonal entry
    const Eigen::MatrixXd ae = oracle::to_eigen(a);
    for (int i = 0; i < 100; ++i) {
        CHECK(ae(i, i) >= 1.0);
    }
}

TEST_CASE("example3 generator structure") {
    // scale 0 gives exactly the circulant shift, an orthogonal matrix.
    const SparseMatrix j = gen_example3(30, 0.0, 1);
    CHECK(j.nnz() == 30);
    const Vector je1 = spmv(j, unit_vector(30, 0));
    CHECK(je1[29] == 1.0); // corner entry maps e_1 to e_n
    CHECK(norm2(je1) == 1.0);
    CHECK(estimate_sigma_min(j).value == doctest::Approx(1.0).epsilon(1e-6));

    const SparseMatrix a = gen_example3(100, 1e-3, 1);
    const SparseMatrix jj = gen_example3(100, 0.0, 1);
    const Eigen::MatrixXd diff = oracle::to_eigen(a) - oracle::to_eigen(jj);
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("example456 generator spectra") {
    // p = n-1, n = 2: singular values 1000 and 1.
    const SparseMatrix a2 = gen_example456(2, 1, 7);
    const Eigen::MatrixXd a2e = oracle::to_eigen(a2);
    CHECK(oracle::sigma_max(a2e) == doctest::Approx(1000.0).epsilon(1e-8));
    CHECK(oracle::sigma_max(a2e) / oracle::sigma_min(a2e) ==
          doctest::Approx(1000.0).epsilon(1e-8));

    // identity U/V test hook gives Sigma itself.
    const SparseMatrix s = gen_example456(6, 3, 1, true);
    const Eigen::MatrixXd se = oracle::to_eigen(s);
    CHECK(se(0, 0) == 1000.0);
    CHECK(se(3, 3) == 1.0);
    CHECK(se(5, 5) == 3.0);

    // paper-scale instance: extreme singular values 1 and 1000.
    const SparseMatrix a = gen_example456(100, 90, 1);
    const Eigen::MatrixXd ae = oracle::to_eigen(a);
    CHECK(oracle::sigma_max(ae) == doctest::Approx(1000.0).epsilon(1e-6));
    CHECK(oracle::sigma_min(ae) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("generators produce invertible matrices at benchmark parameters") {
    CHECK(estimate_sigma_min(gen_example1(100, 0.2, 1)).value > 1e-6);
    CHECK(estimate_sigma_min(gen_example3(100, 1e-3, 1)).value > 1e-3);
    CHECK(estimate_sigma_min(gen_example456(100, 90, 1)).value > 0.5);
    CHECK(estimate_sigma_min(gen_example456(100, 50, 1)).value > 0.5);
}

TEST_CASE("run_benchmark on a generated problem emits a full history") {
    RunConfig cfg;
    cfg.problem = {ProblemKind::example1, 100, 1, 0.2, 1e-3, 0, ""};
    cfg.solver = SolverKind::nspcg;
    cfg.tol = 1e-8;
    cfg.maxit = 500;
    const RunOutput out = run_benchmark(cfg);
    CHECK((out.status == SolveStatus::converged || out.status == SolveStatus::maxit));
    CHECK(out.history.records.size() == out.iterations + 1);
    CHECK(out.w.has_value());
    CHECK(out.gamma.has_value());

    std::ostringstream csv;
    write_history_csv(csv, out.history);
    std::size_t lines = 0;
    for (char c : csv.str()) {
        lines += c == '\n';
    }
    CHECK(lines == out.iterations + 2);
}

TEST_CASE("every solver dispatches the identity file problem") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "scamp_test_io";
    fs::create_directories(dir);
    const std::string path = (dir / "identity10.mtx").string();
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n10 10 10\n";
        for (int i = 1; i <= 10; ++i) {
            out << i << " " << i << " 1.0\n";
        }
    }
    for (SolverKind solver :
         {SolverKind::nspcg, SolverKind::glsqr, SolverKind::qmr, SolverKind::lsqr}) {
        RunConfig cfg;
        cfg.problem.kind = ProblemKind::file;
        cfg.problem.path = path;
        cfg.solver = solver;
        cfg.tol = 1e-10;
        cfg.maxit = 10;
        const RunOutput out = run_benchmark(cfg);
        CHECK(out.status == SolveStatus::converged);
        CHECK(out.iterations <= 2);
        CHECK(out.n == 10);
    }
}

TEST_CASE("identical configurations produce byte-identical outputs") {
    RunConfig cfg;
    cfg.problem = {ProblemKind::example3, 60, 3, 0.2, 1e-3, 0, ""};
    cfg.solver = SolverKind::glsqr;
    cfg.tol = 1e-8;
    cfg.maxit = 120;

    const RunOutput a = run_benchmark(cfg);
    const RunOutput b = run_benchmark(cfg);
    std::ostringstream csv_a;
    std::ostringstream csv_b;
    write_history_csv(csv_a, a.history);
    write_history_csv(csv_b, b.history);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(summary_json(cfg, a, 0.0) == summary_json(cfg, b, 0.0));

    // and a different seed changes the history
    cfg.problem.seed = 4;
    const RunOutput c = run_benchmark(cfg);
    std::ostringstream csv_c;
    write_history_csv(csv_c, c.history);
    CHECK(csv_a.str() != csv_c.str());
}

TEST_CASE("summary JSON carries the run parameters") {
    RunConfig cfg;
    cfg.problem = {ProblemKind::example1, 30, 2, 0.2, 1e-3, 0, ""};
    cfg.solver = SolverKind::nspcg;
    cfg.tol = 1e-6;
    cfg.maxit = 300;
    const RunOutput out = run_benchmark(cfg);
    const std::string json = summary_json(cfg, out, 12.5);
    CHECK(json.find("\"solver\": \"nspcg\"") != std::string::npos);
    CHECK(json.find("\"problem\": \"example1\"") != std::string::npos);
    CHECK(json.find("\"wall_ms\": 12.5") != std::string::npos);
    CHECK(json.find("\"n\": 30") != std::string::npos);
}

TEST_CASE("sweep writes one CSV and JSON per problem/solver pair") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "scamp_test_sweep";
    fs::remove_all(dir);

    SweepOptions opts;
    opts.out_dir = dir.string();
    opts.tol = 1e-6;
    opts.maxit = 40; // kept small: this test checks plumbing, not convergence
    run_sweep(opts);

    const char* solvers[] = {"nspcg", "glsqr", "qmr", "lsqr"};
    const char* examples[] = {"example1", "example3", "example4", "example5"};
    for (const char* ex : examples) {
        for (const char* sv : solvers) {
            const fs::path csv = dir / (std::string(ex) + "_" + sv + ".csv");
            const fs::path json = dir / (std::string(ex) + "_" + sv + ".json");
            CHECK(fs::exists(csv));
            CHECK(fs::exists(json));
        }
    }
    // preconditioned comparison runs for the first example
    CHECK(fs::exists(dir / "example1_nspcg_iqr.csv"));
    CHECK(fs::exists(dir / "example1_qmr_iqr.csv"));

    // repeated sweep reproduces the bytes
    const std::string before = read_file((dir / "example1_nspcg.csv").string());
    run_sweep(opts);
    const std::string after = read_file((dir / "example1_nspcg.csv").string());
    CHECK(before == after);
    CHECK(!before.empty());
}

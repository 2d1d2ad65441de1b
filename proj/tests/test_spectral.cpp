#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "oracle.hpp"
#include "scamp/bench.hpp"
#include "scamp/errors.hpp"
#include "scamp/spectral.hpp"

using namespace scamp;

TEST_CASE("estimate_sigma_max on identity and diagonal") {
    CHECK(estimate_sigma_max(SparseMatrix::identity(4)).value == doctest::Approx(1.0).epsilon(1e-8));
    const SparseMatrix d = SparseMatrix::diagonal({1.0, 2.0, 5.0});
    CHECK(estimate_sigma_max(d).value == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("estimate_sigma_max matches SVD oracle on a generated matrix") {
    const SparseMatrix a = gen_example1(50, 0.2, 1);
    const double est = estimate_sigma_max(a, 1e-8, 2000).value;
    const double ref = oracle::sigma_max(oracle::to_eigen(a));
    CHECK(std::abs(est - ref) / ref <= 0.01);
}

TEST_CASE("estimate_sigma_min on identity, diagonal and circulant") {
    CHECK(estimate_sigma_min(SparseMatrix::identity(4)).value == doctest::Approx(1.0).epsilon(1e-8));
    const SparseMatrix d = SparseMatrix::diagonal({1.0, 2.0, 5.0});
    CHECK(estimate_sigma_min(d).value == doctest::Approx(1.0).epsilon(1e-6));
    // Circulant shift is orthogonal: all singular values are 1.
    const SparseMatrix j = gen_example3(20, 0.0, 1);
    CHECK(estimate_sigma_min(j).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sigma estimates reproduce exact extreme singular values on diagonals") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        Vector diag(12);
        for (double& v : diag) {
            v = 0.5 + 4.0 * rng.uniform();
        }
        const SparseMatrix a = SparseMatrix::diagonal(diag);
        const Eigen::MatrixXd ae = oracle::to_eigen(a);
        const double tol = 1e-6;
        CHECK(std::abs(estimate_sigma_max(a, tol, 20000).value - oracle::sigma_max(ae)) <=
              10.0 * tol * oracle::sigma_max(ae));
        CHECK(std::abs(estimate_sigma_min(a, tol, 20000).value - oracle::sigma_min(ae)) <=
              10.0 * tol * oracle::sigma_min(ae));
    }
}

TEST_CASE("zero matrix raises ZeroMatrixError") {
    const SparseMatrix z(3, 3, {});
    CHECK_THROWS_AS(estimate_sigma_max(z), ZeroMatrixError);
    CHECK_THROWS_AS(estimate_sigma_min(z), ZeroMatrixError);
}

TEST_CASE("choose_w examples") {
    // sigma_min(I) = 1: weak bound 2, w = 2.2 with safety 1.1.
    const WeightChoice wc1 = choose_w(SparseMatrix::identity(5), WeightMode::weak, 1.1);
    CHECK(wc1.bound == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(wc1.w == doctest::Approx(2.2).epsilon(1e-6));

    // A = diag(1,2): kappa2 = 2, sigma_min = 1: strict bound 4, w = 4.4.
    const SparseMatrix d = SparseMatrix::diagonal({1.0, 2.0});
    const WeightChoice wc2 = choose_w(d, WeightMode::strict, 1.1);
    CHECK(wc2.bound == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(wc2.w == doctest::Approx(4.4).epsilon(1e-6));

    const WeightChoice wc3 = choose_w(d, WeightMode::weak, 1.5);
    CHECK(wc3.bound == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(wc3.w == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("choose_w(strict) keeps 2 sigma_max < lambda_min(A^T W A) on oracle instances") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SparseMatrix a = gen_example1(20, 0.2, seed);
        const Eigen::MatrixXd ae = oracle::to_eigen(a);
        const WeightChoice wc = choose_w(a, WeightMode::strict, 1.1);
        const double smin = oracle::sigma_min(ae);
        const double smax = oracle::sigma_max(ae);
        CHECK(wc.w * smin * smin > 2.0 * smax);
    }
}

TEST_CASE("estimate_lambda_min_spd examples") {
    FunctionOperator ident(10, 10, [](const Vector& v) { return v; });
    CHECK(estimate_lambda_min_spd(ident, 10).value == doctest::Approx(1.0).epsilon(1e-8));

    const SparseMatrix d = SparseMatrix::diagonal({1.0, 2.0, 5.0});
    FunctionOperator ata(3, 3, [&d](const Vector& v) { return spmv_t(d, spmv(d, v)); });
    CHECK(estimate_lambda_min_spd(ata, 3).value == doctest::Approx(1.0).epsilon(1e-6));

    // A = diag(2,3), W = 2I: lambda_min(A^T W A) = 2 * 4 = 8.
    const SparseMatrix d2 = SparseMatrix::diagonal({2.0, 3.0});
    FunctionOperator atwa(2, 2, [&d2](const Vector& v) {
        Vector t = spmv(d2, v);
        scale(t, 2.0);
        return spmv_t(d2, t);
    });
    CHECK(estimate_lambda_min_spd(atwa, 2).value == doctest::Approx(8.0).epsilon(1e-6));
}

TEST_CASE("estimate_lambda_min_spd rejects indefinite operators") {
    const SparseMatrix d = SparseMatrix::diagonal({1.0, -2.0, 3.0});
    FunctionOperator op(3, 3, [&d](const Vector& v) { return spmv(d, v); });
    CHECK_THROWS_AS(estimate_lambda_min_spd(op, 3), NotSPDError);
}

TEST_CASE("choose_gamma examples") {
    const GammaChoice g1 = choose_gamma(SparseMatrix::identity(6), 3.0);
    CHECK(g1.lambda_min_est == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(g1.gamma == doctest::Approx(1.5).epsilon(1e-6));

    const GammaChoice g2 = choose_gamma(SparseMatrix::diagonal({1.0, 2.0}), 4.4);
    CHECK(g2.gamma == doctest::Approx(2.2).epsilon(1e-6));

    const GammaChoice g3 = choose_gamma(SparseMatrix::diagonal({2.0, 3.0}), 2.0);
    CHECK(g3.gamma == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("choose_gamma sits strictly inside (0, lambda_min) on oracle instances") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SparseMatrix a = gen_example1(15, 0.2, seed);
        const WeightChoice wc = choose_w(a, WeightMode::weak, 1.1);
        const GammaChoice gc = choose_gamma(a, wc.w);
        const Eigen::MatrixXd ae = oracle::to_eigen(a);
        const Eigen::MatrixXd atwa = wc.w * ae.transpose() * ae;
        const double lam_min =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(atwa).eigenvalues().minCoeff();
        CHECK(gc.gamma > 0.0);
        CHECK(gc.gamma < lam_min);
    }
}

TEST_CASE("weak-mode weight gives a real positive spectrum for assembled M") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::size_t n = 8 + 2 * (seed % 3);
        const SparseMatrix a = gen_example1(n, 0.25, seed);
        const WeightChoice wc = choose_w(a, WeightMode::weak, 1.1);
        const Eigen::MatrixXd ae = oracle::to_eigen(a);
        const Eigen::MatrixXd m = oracle::assemble_m(
            ae, wc.w * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n)));
        double rho = 0.0;
        for (const auto& lam : oracle::eigenvalues(m)) {
            rho = std::max(rho, std::abs(lam));
        }
        for (const auto& lam : oracle::eigenvalues(m)) {
            CHECK(std::abs(lam.imag()) <= 1e-10 * rho);
            CHECK(lam.real() > 0.0);
        }
    }
}

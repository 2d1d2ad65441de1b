// history.hpp
//
// Solver termination status and per-iteration convergence records. Every
// solver in this library emits one record per iteration including
// iteration 0, so a history with k+1 records means k iterations ran.

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "scamp/saddle.hpp"
#include "scamp/vec.hpp"

namespace scamp {

enum class SolveStatus { converged, maxit, breakdown, indefinite };

const char* to_string(SolveStatus s);

struct HistoryRecord {
    std::size_t iter = 0;
    // ||b - M z_i|| for saddle solves; NaN for solvers that do not form one.
    double saddle_resnorm = std::numeric_limits<double>::quiet_NaN();
    double forward_resnorm = std::numeric_limits<double>::quiet_NaN(); // ||c - A x_i||
    double adjoint_resnorm = std::numeric_limits<double>::quiet_NaN(); // ||d - A^T y_i||
    double amplitude = std::numeric_limits<double>::quiet_NaN();       // d^T x_i
};

struct ConvergenceHistory {
    std::vector<HistoryRecord> records;
    std::vector<SaddleVector> residual_vectors; // filled when requested
    std::vector<bool> update_skipped;           // steps whose projected system was singular
};

// Result of a saddle-operator solve.
struct SolveResult {
    SaddleVector z;
    ConvergenceHistory history;
    SolveStatus status = SolveStatus::maxit;
    std::size_t iterations = 0;
};

// Result of the paired forward/adjoint solvers (LSQR, GLSQR, QMR).
struct DualSolveResult {
    Vector x;
    Vector y;
    bool forward_converged = false;
    bool adjoint_converged = false;
    SolveStatus status = SolveStatus::maxit;
    std::size_t iterations = 0;
    ConvergenceHistory history;
    // Projected (quasi-)residual norms per iteration where the method
    // minimizes one; empty otherwise.
    std::vector<double> forward_quasi_norms;
    std::vector<double> adjoint_quasi_norms;
};

} // namespace scamp

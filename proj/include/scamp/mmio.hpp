// mmio.hpp
//
// Matrix Market coordinate-format input (real or integer, general or
// symmetric) and tabular writers for convergence histories. Files are
// 1-based with '%' comments; symmetric storage is expanded to full form
// and duplicate entries are summed on read.

#pragma once

#include <iosfwd>
#include <string>

#include "scamp/history.hpp"
#include "scamp/sparse.hpp"

namespace scamp {

SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);

void write_matrix_market(std::ostream& out, const SparseMatrix& a);

// CSV schema: "iter,saddle_resnorm,forward_resnorm,adjoint_resnorm,amplitude",
// one row per record, 17 significant digits, LF line endings. The digit
// count makes write-then-parse exact for finite values.
void write_history_csv(std::ostream& out, const ConvergenceHistory& history);
void write_history_csv_file(const std::string& path, const ConvergenceHistory& history);

} // namespace scamp

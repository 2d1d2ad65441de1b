// mmio.cpp

#include "scamp/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scamp/errors.hpp"

namespace scamp {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw ParseError("matrix market, line " + std::to_string(line_no) + ": " + what);
}

} // namespace

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) {
        parse_fail(1, "empty input");
    }
    ++line_no;
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") {
        parse_fail(line_no, "missing %%MatrixMarket banner");
    }
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") {
        parse_fail(line_no, "object must be 'matrix'");
    }
    if (format != "coordinate") {
        throw UnsupportedFormatError("matrix market: only coordinate format is supported");
    }
    if (field != "real" && field != "integer") {
        throw UnsupportedFormatError("matrix market: only real or integer fields are supported");
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        throw UnsupportedFormatError(
            "matrix market: only general or symmetric storage is supported");
    }
    const bool symmetric = symmetry == "symmetric";

    // Size line, after comments.
    std::size_t nrows = 0;
    std::size_t ncols = 0;
    std::size_t nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) {
            parse_fail(line_no + 1, "missing size line");
        }
        ++line_no;
        if (!line.empty() && line[0] == '%') {
            continue;
        }
        if (blank(line)) {
            continue;
        }
        std::istringstream size_line(line);
        long long r = 0;
        long long c = 0;
        long long z = 0;
        if (!(size_line >> r >> c >> z) || r <= 0 || c <= 0 || z < 0) {
            parse_fail(line_no, "malformed size line");
        }
        std::string trailing;
        if (size_line >> trailing) {
            parse_fail(line_no, "trailing tokens on size line");
        }
        nrows = static_cast<std::size_t>(r);
        ncols = static_cast<std::size_t>(c);
        nnz = static_cast<std::size_t>(z);
        break;
    }

    std::vector<Triplet> entries;
    entries.reserve(symmetric ? 2 * nnz : nnz);
    std::size_t seen = 0;
    while (seen < nnz) {
        if (!std::getline(in, line)) {
            parse_fail(line_no + 1, "unexpected end of file: " + std::to_string(seen) + " of " +
                                        std::to_string(nnz) + " entries read");
        }
        ++line_no;
        if (blank(line) || line[0] == '%') {
            continue;
        }
        std::istringstream entry(line);
        long long i = 0;
        long long j = 0;
        double value = 0.0;
        if (!(entry >> i >> j >> value)) {
            parse_fail(line_no, "malformed entry");
        }
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > nrows ||
            static_cast<std::size_t>(j) > ncols) {
            parse_fail(line_no, "index out of bounds");
        }
        const std::size_t row = static_cast<std::size_t>(i - 1);
        const std::size_t col = static_cast<std::size_t>(j - 1);
        entries.push_back({row, col, value});
        if (symmetric && row != col) {
            entries.push_back({col, row, value});
        }
        ++seen;
    }
    // Anything after the entries must be comments or blank.
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line) && line[0] != '%') {
            parse_fail(line_no, "unexpected data after all entries were read");
        }
    }
    return SparseMatrix(nrows, ncols, std::move(entries));
}

SparseMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open matrix file: " + path);
    }
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << " " << a.cols() << " " << a.nnz() << "\n";
    char buf[64];
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& vals = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%.16e", vals[k]);
            out << (i + 1) << " " << (ci[k] + 1) << " " << buf << "\n";
        }
    }
    if (!out) {
        throw IoError("write_matrix_market: stream write failed");
    }
}

void write_history_csv(std::ostream& out, const ConvergenceHistory& history) {
    out << "iter,saddle_resnorm,forward_resnorm,adjoint_resnorm,amplitude\n";
    char buf[256];
    for (const HistoryRecord& rec : history.records) {
        std::snprintf(buf, sizeof(buf), "%zu,%.16e,%.16e,%.16e,%.16e", rec.iter,
                      rec.saddle_resnorm, rec.forward_resnorm, rec.adjoint_resnorm,
                      rec.amplitude);
        out << buf << "\n";
    }
    if (!out) {
        throw IoError("write_history_csv: stream write failed");
    }
}

void write_history_csv_file(const std::string& path, const ConvergenceHistory& history) {
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!out) {
        throw IoError("cannot open output file: " + path);
    }
    write_history_csv(out, history);
}

} // namespace scamp

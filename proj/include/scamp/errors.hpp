// errors.hpp
//
// Exception types shared by all modules.

#pragma once

#include <stdexcept>

namespace scamp {

// Vector/matrix dimensions do not conform.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A factorization or triangular solve hit a (numerically) zero pivot.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least-squares matrix is rank deficient.
struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An all-zero matrix was passed where a nonzero one is required.
struct ZeroMatrixError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operator or matrix that must be symmetric positive definite is not.
struct NotSPDError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; message carries the line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input in a format variant this library does not accept.
struct UnsupportedFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stream or file I/O failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A diagnostic was requested for data that was not recorded.
struct MissingDataError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace scamp

// vec.hpp
//
// Dense vector type and elementwise helpers used throughout the solvers.
// All accumulations are plain 64-bit floating point in index order, so
// results are bit-reproducible for identical inputs.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "scamp/errors.hpp"

namespace scamp {

using Vector = std::vector<double>;

inline void check_same_length(const Vector& a, const Vector& b, const char* where) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(where) + ": vector lengths differ");
    }
}

inline double dot(const Vector& a, const Vector& b) {
    check_same_length(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline double norm2(const Vector& a) {
    double s = 0.0;
    for (double v : a) {
        s += v * v;
    }
    return std::sqrt(s);
}

// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
    check_same_length(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += alpha * x[i];
    }
}

inline void scale(Vector& x, double alpha) {
    for (double& v : x) {
        v *= alpha;
    }
}

inline Vector scaled(const Vector& x, double alpha) {
    Vector y = x;
    scale(y, alpha);
    return y;
}

inline Vector add(const Vector& a, const Vector& b) {
    check_same_length(a, b, "add");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] = a[i] + b[i];
    }
    return c;
}

inline Vector sub(const Vector& a, const Vector& b) {
    check_same_length(a, b, "sub");
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] = a[i] - b[i];
    }
    return c;
}

inline Vector unit_vector(std::size_t n, std::size_t j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    return e;
}

inline Vector ones(std::size_t n) {
    return Vector(n, 1.0);
}

} // namespace scamp

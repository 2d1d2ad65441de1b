// saddle.hpp
//
// The 2n x 2n saddle operator built from a square matrix A and an SPD
// weight W,
//
//     M = [ A^T W A   A^T ]        M(gamma) = [ A^T W A - gamma I   A^T     ]
//         [   -A       0  ],                  [        A          gamma I   ],
//
// applied matrix-free. M(gamma), when positive definite, supplies the
// inner product in which M is symmetric; solving M z = b with
// b = [A^T W c + d; -c] yields z = [x; y] with A x = c and A^T y = d in
// one run, and the functional d^T x is read off the solution.

#pragma once

#include <cstddef>
#include <variant>

#include "scamp/dense.hpp"
#include "scamp/sparse.hpp"
#include "scamp/vec.hpp"

namespace scamp {

struct SaddleVector {
    Vector top;
    Vector bottom;

    std::size_t half_dim() const { return top.size(); }

    static SaddleVector zero(std::size_t n) { return {Vector(n, 0.0), Vector(n, 0.0)}; }
};

double dot(const SaddleVector& a, const SaddleVector& b);
double norm2(const SaddleVector& a);
void axpy(double alpha, const SaddleVector& x, SaddleVector& y);
void scale(SaddleVector& x, double alpha);
SaddleVector sub(const SaddleVector& a, const SaddleVector& b);

// Lower-triangular Cholesky factor of the weight: sqrt(w) * I for a scalar
// weight, an explicit sparse factor otherwise.
struct WeightFactor {
    std::variant<double, SparseMatrix> g; // scalar holds sqrt(w)
    std::size_t dim = 0;

    Vector apply(const Vector& v) const;           // G v
    Vector apply_transpose(const Vector& v) const; // G^T v
};

class SaddleSystem {
public:
    // Scalar weight W = w I.
    SaddleSystem(SparseMatrix a, double w, double gamma);
    // General SPD weight; the Cholesky factorization must succeed
    // (NotSPDError otherwise).
    SaddleSystem(SparseMatrix a, SparseMatrix w, double gamma);

    std::size_t n() const { return n_; }
    const SparseMatrix& a() const { return a_; }
    double gamma() const { return gamma_; }
    bool scalar_weight() const { return std::holds_alternative<double>(weight_); }
    double weight_scalar() const { return std::get<double>(weight_); }
    const WeightFactor& weight_factor() const { return g_; }

    // W v, applied through the stored Cholesky factor G G^T.
    Vector apply_weight(const Vector& v) const;

private:
    SparseMatrix a_;
    std::variant<double, SparseMatrix> weight_;
    WeightFactor g_;
    double gamma_ = 0.0;
    std::size_t n_ = 0;
};

// [A^T W A v_top + A^T v_bottom; -A v_top]
SaddleVector apply_m(const SaddleSystem& sys, const SaddleVector& v);

// [(A^T W A - gamma I) v_top + A^T v_bottom; A v_top + gamma v_bottom];
// symmetric as an operator.
SaddleVector apply_m_gamma(const SaddleSystem& sys, const SaddleVector& v);

// M^T v = [A^T W A v_top - A^T v_bottom; A v_top]
SaddleVector apply_m_transpose(const SaddleSystem& sys, const SaddleVector& v);

// v^T (M(gamma) u): the M(gamma)-inner product of u and v.
double g_inner(const SaddleSystem& sys, const SaddleVector& u, const SaddleVector& v);

// [A^T W c + d; -c]
SaddleVector build_rhs(const SaddleSystem& sys, const Vector& c, const Vector& d);

struct AmplitudeResult {
    double amplitude = 0.0;        // d^T x
    double forward_residual = 0.0; // ||c - A x||
    double adjoint_residual = 0.0; // ||d - A^T y||
    double consistency_gap = 0.0;  // |d^T x - c^T y|
};

AmplitudeResult extract_amplitude(const SaddleSystem& sys, const SaddleVector& z, const Vector& c,
                                  const Vector& d);

// Dense assemblies for test oracles; refused above n = 64 because they
// defeat the point of the matrix-free operators.
DenseMatrix assemble_m_dense(const SaddleSystem& sys);
DenseMatrix assemble_m_gamma_dense(const SaddleSystem& sys);

} // namespace scamp

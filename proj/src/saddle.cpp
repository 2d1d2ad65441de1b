// saddle.cpp

#include "scamp/saddle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "scamp/errors.hpp"
#include "scamp/precond.hpp"

namespace scamp {

double dot(const SaddleVector& a, const SaddleVector& b) {
    return dot(a.top, b.top) + dot(a.bottom, b.bottom);
}

double norm2(const SaddleVector& a) {
    return std::sqrt(dot(a, a));
}

void axpy(double alpha, const SaddleVector& x, SaddleVector& y) {
    axpy(alpha, x.top, y.top);
    axpy(alpha, x.bottom, y.bottom);
}

void scale(SaddleVector& x, double alpha) {
    scale(x.top, alpha);
    scale(x.bottom, alpha);
}

SaddleVector sub(const SaddleVector& a, const SaddleVector& b) {
    return {sub(a.top, b.top), sub(a.bottom, b.bottom)};
}

Vector WeightFactor::apply(const Vector& v) const {
    if (std::holds_alternative<double>(g)) {
        return scaled(v, std::get<double>(g));
    }
    return spmv(std::get<SparseMatrix>(g), v);
}

Vector WeightFactor::apply_transpose(const Vector& v) const {
    if (std::holds_alternative<double>(g)) {
        return scaled(v, std::get<double>(g));
    }
    return spmv_t(std::get<SparseMatrix>(g), v);
}

SaddleSystem::SaddleSystem(SparseMatrix a, double w, double gamma)
    : a_(std::move(a)), weight_(w), gamma_(gamma), n_(a_.rows()) {
    if (a_.rows() != a_.cols()) {
        throw DimensionError("SaddleSystem: A must be square");
    }
    if (w <= 0.0) {
        throw NotSPDError("SaddleSystem: scalar weight must be positive");
    }
    if (gamma <= 0.0) {
        throw std::invalid_argument("SaddleSystem: gamma must be positive");
    }
    g_ = cholesky_spd(w, n_);
}

SaddleSystem::SaddleSystem(SparseMatrix a, SparseMatrix w, double gamma)
    : a_(std::move(a)), gamma_(gamma), n_(a_.rows()) {
    if (a_.rows() != a_.cols()) {
        throw DimensionError("SaddleSystem: A must be square");
    }
    if (w.rows() != n_ || w.cols() != n_) {
        throw DimensionError("SaddleSystem: W shape does not match A");
    }
    if (gamma <= 0.0) {
        throw std::invalid_argument("SaddleSystem: gamma must be positive");
    }
    g_ = cholesky_spd(w); // throws NotSPDError unless W is SPD
    weight_ = std::move(w);
}

Vector SaddleSystem::apply_weight(const Vector& v) const {
    if (scalar_weight()) {
        return scaled(v, std::get<double>(weight_));
    }
    return g_.apply(g_.apply_transpose(v));
}

namespace {

void check_conforms(const SaddleSystem& sys, const SaddleVector& v, const char* where) {
    if (v.top.size() != sys.n() || v.bottom.size() != sys.n()) {
        throw DimensionError(std::string(where) + ": vector does not conform to system size");
    }
}

} // namespace

SaddleVector apply_m(const SaddleSystem& sys, const SaddleVector& v) {
    check_conforms(sys, v, "apply_m");
    const Vector av = spmv(sys.a(), v.top);
    Vector top = spmv_t(sys.a(), sys.apply_weight(av));
    const Vector atb = spmv_t(sys.a(), v.bottom);
    for (std::size_t i = 0; i < top.size(); ++i) {
        top[i] += atb[i];
    }
    Vector bottom = av;
    scale(bottom, -1.0);
    return {std::move(top), std::move(bottom)};
}

SaddleVector apply_m_gamma(const SaddleSystem& sys, const SaddleVector& v) {
    check_conforms(sys, v, "apply_m_gamma");
    const double gamma = sys.gamma();
    const Vector av = spmv(sys.a(), v.top);
    Vector top = spmv_t(sys.a(), sys.apply_weight(av));
    const Vector atb = spmv_t(sys.a(), v.bottom);
    for (std::size_t i = 0; i < top.size(); ++i) {
        top[i] += atb[i] - gamma * v.top[i];
    }
    Vector bottom = av;
    axpy(gamma, v.bottom, bottom);
    return {std::move(top), std::move(bottom)};
}

SaddleVector apply_m_transpose(const SaddleSystem& sys, const SaddleVector& v) {
    check_conforms(sys, v, "apply_m_transpose");
    const Vector av = spmv(sys.a(), v.top);
    Vector top = spmv_t(sys.a(), sys.apply_weight(av));
    const Vector atb = spmv_t(sys.a(), v.bottom);
    for (std::size_t i = 0; i < top.size(); ++i) {
        top[i] -= atb[i];
    }
    return {std::move(top), spmv(sys.a(), v.top)};
}

double g_inner(const SaddleSystem& sys, const SaddleVector& u, const SaddleVector& v) {
    check_conforms(sys, u, "g_inner");
    check_conforms(sys, v, "g_inner");
    return dot(apply_m_gamma(sys, u), v);
}

SaddleVector build_rhs(const SaddleSystem& sys, const Vector& c, const Vector& d) {
    if (c.size() != sys.n() || d.size() != sys.n()) {
        throw DimensionError("build_rhs: c, d must have length n");
    }
    Vector top = spmv_t(sys.a(), sys.apply_weight(c));
    for (std::size_t i = 0; i < top.size(); ++i) {
        top[i] += d[i];
    }
    Vector bottom = c;
    scale(bottom, -1.0);
    return {std::move(top), std::move(bottom)};
}

AmplitudeResult extract_amplitude(const SaddleSystem& sys, const SaddleVector& z, const Vector& c,
                                  const Vector& d) {
    check_conforms(sys, z, "extract_amplitude");
    if (c.size() != sys.n() || d.size() != sys.n()) {
        throw DimensionError("extract_amplitude: c, d must have length n");
    }
    AmplitudeResult out;
    out.amplitude = dot(d, z.top);
    out.forward_residual = norm2(sub(c, spmv(sys.a(), z.top)));
    out.adjoint_residual = norm2(sub(d, spmv_t(sys.a(), z.bottom)));
    out.consistency_gap = std::abs(out.amplitude - dot(c, z.bottom));
    return out;
}

namespace {

constexpr std::size_t kDenseAssemblyLimit = 64;

DenseMatrix assemble_blocks(const SaddleSystem& sys, bool shifted) {
    if (sys.n() > kDenseAssemblyLimit) {
        throw DimensionError("dense assembly is gated to n <= 64 (test oracle only)");
    }
    const std::size_t n = sys.n();
    DenseMatrix m(2 * n, 2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) {
        SaddleVector e = SaddleVector::zero(n);
        (j < n ? e.top[j] : e.bottom[j - n]) = 1.0;
        const SaddleVector col = shifted ? apply_m_gamma(sys, e) : apply_m(sys, e);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) = col.top[i];
            m(n + i, j) = col.bottom[i];
        }
    }
    return m;
}

} // namespace

DenseMatrix assemble_m_dense(const SaddleSystem& sys) {
    return assemble_blocks(sys, false);
}

DenseMatrix assemble_m_gamma_dense(const SaddleSystem& sys) {
    return assemble_blocks(sys, true);
}

} // namespace scamp

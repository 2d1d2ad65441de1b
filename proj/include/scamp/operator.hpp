// operator.hpp
//
// Matrix-free linear operator contract. Wraps anything that can apply
// itself (and optionally its transpose) to a vector without being
// materialized.

#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "scamp/errors.hpp"
#include "scamp/sparse.hpp"
#include "scamp/vec.hpp"

namespace scamp {

class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    virtual Vector apply(const Vector& x) const = 0;

    // Default for operators whose transpose is never needed.
    virtual Vector apply_transpose(const Vector&) const {
        throw DimensionError("LinearOperator: transpose apply not provided");
    }
};

// Operator defined by plain callables; the transpose one may be empty.
class FunctionOperator final : public LinearOperator {
public:
    using Apply = std::function<Vector(const Vector&)>;

    FunctionOperator(std::size_t rows, std::size_t cols, Apply forward, Apply transpose = {})
        : rows_(rows), cols_(cols), forward_(std::move(forward)), transpose_(std::move(transpose)) {}

    std::size_t rows() const override { return rows_; }
    std::size_t cols() const override { return cols_; }

    Vector apply(const Vector& x) const override { return forward_(x); }

    Vector apply_transpose(const Vector& x) const override {
        if (!transpose_) {
            return LinearOperator::apply_transpose(x);
        }
        return transpose_(x);
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    Apply forward_;
    Apply transpose_;
};

class SparseOperator final : public LinearOperator {
public:
    explicit SparseOperator(const SparseMatrix& a) : a_(&a) {}

    std::size_t rows() const override { return a_->rows(); }
    std::size_t cols() const override { return a_->cols(); }
    Vector apply(const Vector& x) const override { return spmv(*a_, x); }
    Vector apply_transpose(const Vector& x) const override { return spmv_t(*a_, x); }

private:
    const SparseMatrix* a_;
};

} // namespace scamp

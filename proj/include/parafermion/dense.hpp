#pragma once

#include <Eigen/Dense>

#include "parafermion/scalar.hpp"

namespace pf {

/// Square matrix over the context scalar field, row-major.
class DenseOperator {
  public:
    DenseOperator() = default;
    DenseOperator(CtxPtr ctx, long dim)
        : ctx_(std::move(ctx)), dim_(dim), a_(dim * dim, Scalar::zero(ctx_)) {}

    static DenseOperator identity(const CtxPtr& ctx, long dim);

    long dim() const { return dim_; }
    const CtxPtr& ctx() const { return ctx_; }

    Scalar& at(long i, long j) { return a_[i * dim_ + j]; }
    const Scalar& at(long i, long j) const { return a_[i * dim_ + j]; }

    DenseOperator operator*(const DenseOperator& o) const;
    DenseOperator operator+(const DenseOperator& o) const;
    DenseOperator operator-(const DenseOperator& o) const;
    DenseOperator scaled(const Scalar& s) const;
    DenseOperator adjoint() const;
    DenseOperator kron(const DenseOperator& o) const;
    DenseOperator pow(long e) const;  // e >= 0

    Scalar trace() const;
    bool eq(const DenseOperator& o) const;
    bool is_zero() const;
    bool is_identity() const;
    /// True when *this == lambda * o for some scalar lambda != 0.
    bool proportional_to(const DenseOperator& o) const;

    Eigen::MatrixXcd to_eigen() const;

  private:
    CtxPtr ctx_;
    long dim_ = 0;
    std::vector<Scalar> a_;
};

}  // namespace pf

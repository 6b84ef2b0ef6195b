#include "parafermion/dense.hpp"

namespace pf {

DenseOperator DenseOperator::identity(const CtxPtr& ctx, long dim) {
    DenseOperator m(ctx, dim);
    for (long i = 0; i < dim; ++i) m.at(i, i) = Scalar::one(ctx);
    return m;
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator r(ctx_, dim_);
    for (long i = 0; i < dim_; ++i)
        for (long k = 0; k < dim_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (long j = 0; j < dim_; ++j) {
                const Scalar& bkj = o.at(k, j);
                if (bkj.is_zero()) continue;
                r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator r(ctx_, dim_);
    for (long i = 0; i < dim_ * dim_; ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator r(ctx_, dim_);
    for (long i = 0; i < dim_ * dim_; ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

DenseOperator DenseOperator::scaled(const Scalar& s) const {
    DenseOperator r(ctx_, dim_);
    for (long i = 0; i < dim_ * dim_; ++i) r.a_[i] = a_[i] * s;
    return r;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator r(ctx_, dim_);
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

DenseOperator DenseOperator::kron(const DenseOperator& o) const {
    DenseOperator r(ctx_, dim_ * o.dim_);
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j) {
            if (at(i, j).is_zero()) continue;
            for (long k = 0; k < o.dim_; ++k)
                for (long l = 0; l < o.dim_; ++l)
                    r.at(i * o.dim_ + k, j * o.dim_ + l) = at(i, j) * o.at(k, l);
        }
    return r;
}

DenseOperator DenseOperator::pow(long e) const {
    DenseOperator r = identity(ctx_, dim_);
    for (long k = 0; k < e; ++k) r = r * *this;
    return r;
}

Scalar DenseOperator::trace() const {
    Scalar t = Scalar::zero(ctx_);
    for (long i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

bool DenseOperator::eq(const DenseOperator& o) const {
    if (dim_ != o.dim_) return false;
    for (long i = 0; i < dim_ * dim_; ++i)
        if (!a_[i].eq(o.a_[i])) return false;
    return true;
}

bool DenseOperator::is_zero() const {
    for (const auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

bool DenseOperator::is_identity() const { return eq(identity(ctx_, dim_)); }

bool DenseOperator::proportional_to(const DenseOperator& o) const {
    if (dim_ != o.dim_) return false;
    Scalar lambda = Scalar::zero(ctx_);
    for (long i = 0; i < dim_ * dim_; ++i) {
        bool za = a_[i].is_zero(), zb = o.a_[i].is_zero();
        if (za != zb) return false;
        if (za) continue;
        Scalar ratio = a_[i] * o.a_[i].inverse();
        if (lambda.is_zero())
            lambda = ratio;
        else if (!lambda.eq(ratio))
            return false;
    }
    return !lambda.is_zero();
}

Eigen::MatrixXcd DenseOperator::to_eigen() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j) m(i, j) = at(i, j).to_complex();
    return m;
}

}  // namespace pf

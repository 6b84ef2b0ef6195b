#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pf {

enum class Mode { exact, approx };

/// Raised when a value cannot be represented in the configured cyclotomic
/// field (callers may retry in approx mode).
struct unrepresentable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The field Q(zeta_L).  Elements are kept reduced to the power basis
/// {zeta_L^0, ..., zeta_L^{phi(L)-1}}, so equality is coefficient equality.
class CycloField {
  public:
    explicit CycloField(long order);

    long order() const { return order_; }
    long degree() const { return degree_; }

    /// Basis coordinates of zeta_L^k for any k (reduced mod order).
    const std::vector<std::pair<int32_t, mpq_class>>& power(long k) const;

  private:
    long order_ = 0;
    long degree_ = 0;
    // power_[k] = coordinates of x^k for k in [0, order): trivial below degree.
    std::vector<std::vector<std::pair<int32_t, mpq_class>>> power_;
};

/// Element of Q(zeta_L) in canonical reduced form: strictly increasing
/// exponents below the field degree, nonzero coefficients only.
struct CycloScalar {
    std::vector<std::pair<int32_t, mpq_class>> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_rational() const {
        return terms.empty() || (terms.size() == 1 && terms[0].first == 0);
    }
};

class ScalarContext;
using CtxPtr = std::shared_ptr<const ScalarContext>;

/// A value in the scalar field of a ScalarContext.  Exact values live in the
/// cyclotomic field; approx values are complex doubles.  Immutable apart from
/// assignment; all operations are pure.
class Scalar {
  public:
    Scalar() = default;

    static Scalar zero(const CtxPtr& ctx);
    static Scalar one(const CtxPtr& ctx);
    static Scalar from_int(const CtxPtr& ctx, long v);
    static Scalar from_rational(const CtxPtr& ctx, const mpq_class& v);
    static Scalar from_complex(const CtxPtr& ctx, std::complex<double> v);
    /// zeta_L^e (exact in both modes).
    static Scalar root(const CtxPtr& ctx, long e);

    const CtxPtr& ctx() const { return ctx_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar conj() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool is_zero() const;
    bool eq(const Scalar& o) const;

    std::complex<double> to_complex() const;
    std::string str() const;

    const CycloScalar& exact() const { return ex_; }

  private:
    friend class ScalarContext;
    CtxPtr ctx_;
    CycloScalar ex_;
    std::complex<double> ap_{0.0, 0.0};
};

/// Fixes N, the square root zeta of q, the cyclotomic order L, and the
/// arithmetic mode.  All scalar constants are derived from here.
class ScalarContext : public std::enable_shared_from_this<ScalarContext> {
  public:
    int N;
    int zeta_sign;  // +1 or -1; only meaningful for even N
    long L;
    Mode mode;
    double tol;

    const CycloField& field() const;
    bool exact() const { return mode == Mode::exact; }

    CtxPtr self() const { return shared_from_this(); }

    Scalar zero() const { return Scalar::zero(self()); }
    Scalar one() const { return Scalar::one(self()); }
    Scalar integer(long v) const { return Scalar::from_int(self(), v); }
    Scalar rational(long num, long den) const;
    /// zeta_L^e
    Scalar root(long e) const { return Scalar::root(self(), e); }

    /// The fixed square root of q:  -e^{i pi/N} for odd N,
    /// zeta_sign * e^{i pi/N} for even N.
    Scalar zeta() const;
    /// q = zeta^2 = e^{2 pi i / N}
    Scalar q() const;
    /// zeta^e with e an arbitrary integer (well defined mod 2N... handled mod L).
    Scalar zeta_pow(long e) const;
    Scalar q_pow(long e) const;
    /// sqrt(N), positive under the real embedding.
    Scalar sqrt_n() const;
    /// omega = N^{-1/2} sum_j zeta^{j^2}
    Scalar omega() const;
    /// Principal square root of omega (exact when omega is a root of unity
    /// whose doubled order divides L).
    Scalar omega_sqrt() const;

    mutable std::shared_ptr<CycloField> field_;  // built on demand (exact mode)

  private:
    mutable Scalar omega_cache_;
    mutable bool omega_cached_ = false;
};

/// Build a context. N >= 2; zeta_sign ignored for odd N.
CtxPtr make_context(int N, int zeta_sign = +1, Mode mode = Mode::exact,
                    double tol = 1e-9, long cyclo_order = 0);

// JSON wire form: approx {"re":..,"im":..},
// exact {"order":L,"coeffs":[[k,num,den],...]}
std::string scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const CtxPtr& ctx, const std::string& text);

}  // namespace pf

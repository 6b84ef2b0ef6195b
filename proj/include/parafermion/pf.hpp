#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "parafermion/dense.hpp"
#include "parafermion/scalar.hpp"

namespace pf {

/// Multi-index I in (Z_N)^m, packed 4 bits per generator (N <= 12 < 16,
/// m <= 16).  Generator p (1-based) occupies bits 4*(p-1).
using MonoKey = uint64_t;

inline int key_get(MonoKey k, int p) { return static_cast<int>((k >> (4 * (p - 1))) & 0xF); }
inline MonoKey key_set(MonoKey k, int p, int v) {
    int sh = 4 * (p - 1);
    return (k & ~(MonoKey(0xF) << sh)) | (MonoKey(v) << sh);
}

/// Element of the parafermion algebra PF_m: generators c_1..c_m with
/// c_i^N = 1 and c_i c_j = q c_j c_i for i < j, stored as a finitely
/// supported coefficient map over the normal-ordered monomial basis
/// C_I = c_1^{i_1} ... c_m^{i_m}.  Immutable value semantics.
class PFElement {
  public:
    PFElement() = default;
    PFElement(CtxPtr ctx, int m) : ctx_(std::move(ctx)), m_(m) {}

    static PFElement zero(const CtxPtr& ctx, int m) { return PFElement(ctx, m); }
    static PFElement identity(const CtxPtr& ctx, int m);
    /// c_p^power in PF_m
    static PFElement generator(const CtxPtr& ctx, int m, int p, int power = 1);
    static PFElement monomial(const CtxPtr& ctx, int m, const std::vector<int>& I,
                              const Scalar& coeff);

    const CtxPtr& ctx() const { return ctx_; }
    int m() const { return m_; }
    const std::map<MonoKey, Scalar>& terms() const { return terms_; }
    void add_term(MonoKey key, const Scalar& c);

    PFElement operator+(const PFElement& o) const;
    PFElement operator-(const PFElement& o) const;
    PFElement operator*(const PFElement& o) const;  // normal-ordered product
    PFElement scaled(const Scalar& s) const;
    PFElement operator-() const;

    /// Antilinear antimultiplicative involution extending c* = c^{-1}.
    PFElement star() const;
    bool eq(const PFElement& o) const;
    bool is_zero() const;

    /// Z_N grade if homogeneous, nullopt for mixed (or zero) elements.
    std::optional<int> grade() const;
    /// Decomposition into homogeneous components, keyed by grade.
    std::map<int, PFElement> homogeneous_components() const;

    /// Coefficient of the identity monomial; tracial state.
    Scalar markov_trace() const;

    /// Jordan-Wigner representation: c_p -> (Z^-1)^{(p-1)} (x) X (x) 1...,
    /// an algebra *-homomorphism into N^m x N^m matrices.
    DenseOperator jw() const;

    /// Trace-preserving conditional expectation PF_m -> PF_{m-1}
    /// (drops monomials with nonzero last exponent).
    PFElement conditional_expectation() const;
    /// iota_l: PF_m -> PF_{m+1}, c_i -> c_{i+1}
    PFElement shift_left() const;
    /// PF_m -> PF_{m+1}, c_i -> c_i (trace preserving right inclusion)
    PFElement embed_right() const;
    /// PF_m viewed inside PF_mm (mm >= m), c_i -> c_{i+offset}
    PFElement embed(int mm, int offset) const;

    std::string str() const;

  private:
    CtxPtr ctx_;
    int m_ = 0;
    std::map<MonoKey, Scalar> terms_;
};

/// Homogeneous element together with an integer lift of its Z_N grade.
struct LiftedElement {
    PFElement element;
    long lift = 0;
};

/// Jones projection E_i = N^{-1/2} sum_k q^{k^2/2} c_i^k c_{i+1}^{-k}.
PFElement jones_projection(const CtxPtr& ctx, int m, int i);

/// String Fourier transform on PF_m: sqrt(N) Phi_r(E_m ... E_1 iota_l(x)).
PFElement sft(const PFElement& x);
PFElement sft_inverse(const PFElement& x);
/// rho_pi = sft^m (contragredient map).
PFElement rotate_pi(const PFElement& x);
/// Theta(x) = zeta^{-|x|^2} rho_pi(x*), antilinear homomorphism
/// (computed per homogeneous component).
PFElement reflect_theta(const PFElement& x);

/// Graded tensor products PF_p (x) PF_r -> PF_{p+r}.
enum class TensorSign { plus, minus };
PFElement graded_tensor(const PFElement& a, const PFElement& b, TensorSign sign);

/// Twisted tensor product on lifted elements:
/// (x,i) (x)_t (y,j) = (zeta^{-ij} x (x)_+ y, i+j).
LiftedElement twisted_tensor(const LiftedElement& a, const LiftedElement& b);
/// Canonical lift: grade representative in {0..N-1}.
LiftedElement lift_canonical(const PFElement& homogeneous);
/// Theta(x) (x)_t x -convention pairing used for doubles: the Theta side
/// carries the negated lift of x's grade.
PFElement theta_twisted_pair(const PFElement& x_hom_left, const PFElement& y_hom_right);

/// Irreducible paired-strand representation of PF_{2w} on C^{N^w}
/// (strand pair (2r-1, 2r) acts on qudit slot r).  A *-representation;
/// Tr(pair_rep(x)) / N^w equals the Markov trace.
DenseOperator pair_rep(const PFElement& x);
/// Nested-cup vacuum vector of the paired-strand representation, norm N^{w/2}.
std::vector<Scalar> pair_vacuum(const CtxPtr& ctx, int w);
/// Inverse of pair_rep (PF_{2w} -> M_{N^w} is bijective).
PFElement pair_rep_inverse(const CtxPtr& ctx, int w, const DenseOperator& M);
/// Projection onto the vacuum line, as an element of PF_{2w}
/// (the nested cup-over-cap diagram normalized by delta^w).
PFElement vacuum_projection(const CtxPtr& ctx, int w);

enum class MatrixUnitKind { two_box, even, odd, Q };
/// Matrix-unit / minimal-idempotent families (see kind):
///  - two_box: the N^2 units v_i^j of PF_2
///  - even:    the N^{2m} units v_I^{I'} of PF_{2m}
///  - odd:     the N^{2m+1} units of PF_{2m+1}
///  - Q:       the N minimal projections Q_i of PF_1
std::vector<PFElement> matrix_units(const CtxPtr& ctx, MatrixUnitKind kind, int m = 1);
/// v_I^{I'} = N^{-m/2} sft^{-m}(Theta(C_I) (x)_t C_{I'}) for PF_{2m}.
PFElement matrix_unit_even(const CtxPtr& ctx, int m, const std::vector<int>& I,
                           const std::vector<int>& Ip);

// multi-index helpers
std::vector<std::vector<int>> all_multi_indices(int N, int m);

// JSON wire form: {"N":..,"m":..,"terms":[{"I":[..],"coeff":..},..]}
std::string pf_to_json(const PFElement& x);
PFElement pf_from_json(const CtxPtr& ctx, const std::string& text);

}  // namespace pf

#include "parafermion/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace pf {

namespace {

using Poly = std::vector<mpz_class>;  // dense, coefficient of x^i at index i

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of polynomials over Z (remainder known to vanish).
Poly poly_divide(const Poly& num, const Poly& den) {
    Poly rem = num;
    Poly quot(num.size(), mpz_class(0));
    long dd = static_cast<long>(den.size()) - 1;
    while (static_cast<long>(rem.size()) - 1 >= dd) {
        long k = static_cast<long>(rem.size()) - 1 - dd;
        mpz_class c = rem.back() / den.back();
        quot[k] = c;
        for (long i = 0; i <= dd; ++i) rem[k + i] -= c * den[i];
        poly_trim(rem);
        if (rem.empty()) break;
    }
    poly_trim(quot);
    return quot;
}

const Poly& cyclotomic(long n, std::map<long, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly xn1(n + 1, mpz_class(0));
    xn1[0] = -1;
    xn1[n] = 1;
    Poly acc = {mpz_class(1)};
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const Poly& phi_d = cyclotomic(d, memo);
        Poly next(acc.size() + phi_d.size() - 1, mpz_class(0));
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t j = 0; j < phi_d.size(); ++j) next[i + j] += acc[i] * phi_d[j];
        acc = std::move(next);
    }
    return memo.emplace(n, poly_divide(xn1, acc)).first->second;
}

std::vector<std::pair<int32_t, mpq_class>> sparsify(const std::vector<mpq_class>& dense) {
    std::vector<std::pair<int32_t, mpq_class>> out;
    for (size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) out.emplace_back(static_cast<int32_t>(i), dense[i]);
    return out;
}

}  // namespace

CycloField::CycloField(long order) : order_(order) {
    std::map<long, Poly> memo;
    const Poly& phi = cyclotomic(order, memo);
    degree_ = static_cast<long>(phi.size()) - 1;
    power_.resize(order);
    for (long k = 0; k < degree_; ++k)
        power_[k] = {{static_cast<int32_t>(k), mpq_class(1)}};
    // x^degree = -(phi - leading term); then iterate multiplication by x.
    std::vector<mpq_class> cur(degree_, mpq_class(0));
    for (long i = 0; i < degree_; ++i) cur[i] = mpq_class(-phi[i]);
    for (long k = degree_; k < order; ++k) {
        power_[k] = sparsify(cur);
        std::vector<mpq_class> nxt(degree_, mpq_class(0));
        mpq_class top = cur[degree_ - 1];
        for (long i = degree_ - 1; i > 0; --i) nxt[i] = cur[i - 1];
        if (top != 0)
            for (long i = 0; i < degree_; ++i) nxt[i] += top * mpq_class(-phi[i]);
        cur = std::move(nxt);
    }
}

const std::vector<std::pair<int32_t, mpq_class>>& CycloField::power(long k) const {
    k %= order_;
    if (k < 0) k += order_;
    return power_[k];
}

// ---------------------------------------------------------------------------
// CycloScalar arithmetic (free helpers operating in a field)
// ---------------------------------------------------------------------------

namespace {

CycloScalar cy_from_terms(std::map<int32_t, mpq_class>&& acc) {
    CycloScalar r;
    for (auto& [e, c] : acc)
        if (c != 0) r.terms.emplace_back(e, std::move(c));
    return r;
}

CycloScalar cy_add(const CycloScalar& a, const CycloScalar& b) {
    std::map<int32_t, mpq_class> acc;
    for (const auto& [e, c] : a.terms) acc[e] += c;
    for (const auto& [e, c] : b.terms) acc[e] += c;
    return cy_from_terms(std::move(acc));
}

CycloScalar cy_neg(const CycloScalar& a) {
    CycloScalar r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

CycloScalar cy_mul(const CycloField& f, const CycloScalar& a, const CycloScalar& b) {
    std::map<int32_t, mpq_class> acc;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            mpq_class c = ca * cb;
            long e = (static_cast<long>(ea) + eb) % f.order();
            if (e < f.degree()) {
                acc[static_cast<int32_t>(e)] += c;
            } else {
                for (const auto& [er, cr] : f.power(e)) acc[er] += c * cr;
            }
        }
    return cy_from_terms(std::move(acc));
}

CycloScalar cy_conj(const CycloField& f, const CycloScalar& a) {
    std::map<int32_t, mpq_class> acc;
    for (const auto& [e, c] : a.terms) {
        long me = (f.order() - e) % f.order();
        if (me < f.degree())
            acc[static_cast<int32_t>(me)] += c;
        else
            for (const auto& [er, cr] : f.power(me)) acc[er] += c * cr;
    }
    return cy_from_terms(std::move(acc));
}

CycloScalar cy_root(const CycloField& f, long e) {
    CycloScalar r;
    e %= f.order();
    if (e < 0) e += f.order();
    if (e < f.degree()) {
        r.terms = {{static_cast<int32_t>(e), mpq_class(1)}};
    } else {
        for (const auto& [er, cr] : f.power(e)) r.terms.emplace_back(er, cr);
    }
    return r;
}

CycloScalar cy_scale(const CycloScalar& a, const mpq_class& s) {
    CycloScalar r;
    if (s == 0) return r;
    r.terms = a.terms;
    for (auto& [e, c] : r.terms) c *= s;
    return r;
}

// General inverse: solve a*x = 1 by Gaussian elimination over Q on the
// multiplication-by-a matrix.  Fast paths cover monomials and elements with
// rational |a|^2, which is everything the verification suites produce.
CycloScalar cy_inverse(const CycloField& f, const CycloScalar& a) {
    if (a.terms.empty()) throw std::domain_error("scalar: division by zero");
    if (a.terms.size() == 1) {
        const auto& [e, c] = a.terms[0];
        CycloScalar r = cy_root(f, (f.order() - e) % f.order());
        return cy_scale(r, mpq_class(1) / c);
    }
    CycloScalar ac = cy_conj(f, a);
    CycloScalar norm = cy_mul(f, a, ac);
    if (norm.is_rational() && !norm.is_zero())
        return cy_scale(ac, mpq_class(1) / norm.terms[0].second);

    long d = f.degree();
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, mpq_class(0)));
    for (long j = 0; j < d; ++j) {
        CycloScalar col = cy_mul(f, a, cy_root(f, j));
        for (const auto& [e, c] : col.terms) m[e][j] = c;
    }
    m[0][d] = 1;
    for (long col = 0, row = 0; col < d && row < d; ++col) {
        long piv = -1;
        for (long r2 = row; r2 < d; ++r2)
            if (m[r2][col] != 0) { piv = r2; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[row]);
        mpq_class inv = mpq_class(1) / m[row][col];
        for (long k = col; k <= d; ++k) m[row][k] *= inv;
        for (long r2 = 0; r2 < d; ++r2) {
            if (r2 == row || m[r2][col] == 0) continue;
            mpq_class fac = m[r2][col];
            for (long k = col; k <= d; ++k) m[r2][k] -= fac * m[row][k];
        }
        ++row;
    }
    CycloScalar x;
    for (long i = 0; i < d; ++i)
        if (m[i][i] == 1 && m[i][d] != 0) x.terms.emplace_back(static_cast<int32_t>(i), m[i][d]);
    // verify (guards against singular input, which cannot happen in a field)
    CycloScalar check = cy_mul(f, a, x);
    if (!(check.terms.size() == 1 && check.terms[0].first == 0 && check.terms[0].second == 1))
        throw std::runtime_error("scalar: inversion failed");
    return x;
}

std::complex<double> cy_to_complex(const CycloField& f, const CycloScalar& a) {
    std::complex<double> z{0.0, 0.0};
    for (const auto& [e, c] : a.terms) {
        double ang = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(f.order());
        z += c.get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

Scalar Scalar::zero(const CtxPtr& ctx) {
    Scalar s;
    s.ctx_ = ctx;
    return s;
}

Scalar Scalar::one(const CtxPtr& ctx) { return from_int(ctx, 1); }

Scalar Scalar::from_int(const CtxPtr& ctx, long v) {
    return from_rational(ctx, mpq_class(v));
}

Scalar Scalar::from_rational(const CtxPtr& ctx, const mpq_class& v) {
    Scalar s;
    s.ctx_ = ctx;
    mpq_class c = v;
    c.canonicalize();
    if (ctx->exact()) {
        if (c != 0) s.ex_.terms = {{0, c}};
    } else {
        s.ap_ = {c.get_d(), 0.0};
    }
    return s;
}

Scalar Scalar::from_complex(const CtxPtr& ctx, std::complex<double> v) {
    if (ctx->exact())
        throw std::invalid_argument("scalar: cannot inject a complex double into exact mode");
    Scalar s;
    s.ctx_ = ctx;
    s.ap_ = v;
    return s;
}

Scalar Scalar::root(const CtxPtr& ctx, long e) {
    Scalar s;
    s.ctx_ = ctx;
    if (ctx->exact()) {
        s.ex_ = cy_root(ctx->field(), e);
    } else {
        long L = ctx->L;
        e %= L;
        double ang = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(L);
        s.ap_ = {std::cos(ang), std::sin(ang)};
    }
    return s;
}

static void check_same_ctx(const Scalar& a, const Scalar& b) {
    if (a.ctx() != b.ctx())
        throw std::invalid_argument("scalar: operands belong to different contexts");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_ctx(*this, o);
    Scalar s;
    s.ctx_ = ctx_;
    if (ctx_->exact())
        s.ex_ = cy_add(ex_, o.ex_);
    else
        s.ap_ = ap_ + o.ap_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar s;
    s.ctx_ = ctx_;
    if (ctx_->exact())
        s.ex_ = cy_neg(ex_);
    else
        s.ap_ = -ap_;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_ctx(*this, o);
    Scalar s;
    s.ctx_ = ctx_;
    if (ctx_->exact())
        s.ex_ = cy_mul(ctx_->field(), ex_, o.ex_);
    else
        s.ap_ = ap_ * o.ap_;
    return s;
}

Scalar Scalar::conj() const {
    Scalar s;
    s.ctx_ = ctx_;
    if (ctx_->exact())
        s.ex_ = cy_conj(ctx_->field(), ex_);
    else
        s.ap_ = std::conj(ap_);
    return s;
}

Scalar Scalar::inverse() const {
    Scalar s;
    s.ctx_ = ctx_;
    if (ctx_->exact()) {
        s.ex_ = cy_inverse(ctx_->field(), ex_);
    } else {
        if (std::abs(ap_) == 0.0) throw std::domain_error("scalar: division by zero");
        s.ap_ = 1.0 / ap_;
    }
    return s;
}

bool Scalar::is_zero() const {
    if (!ctx_) return true;
    if (ctx_->exact()) return ex_.is_zero();
    return std::abs(ap_) <= ctx_->tol;
}

bool Scalar::eq(const Scalar& o) const {
    check_same_ctx(*this, o);
    if (ctx_->exact()) return ex_.terms == o.ex_.terms;
    double scale = std::max({1.0, std::abs(ap_), std::abs(o.ap_)});
    return std::abs(ap_ - o.ap_) <= ctx_->tol * scale;
}

std::complex<double> Scalar::to_complex() const {
    if (!ctx_) return {0.0, 0.0};
    if (ctx_->exact()) return cy_to_complex(ctx_->field(), ex_);
    return ap_;
}

std::string Scalar::str() const {
    std::ostringstream os;
    if (ctx_ && ctx_->exact()) {
        if (ex_.terms.empty()) return "0";
        bool first = true;
        for (const auto& [e, c] : ex_.terms) {
            if (!first) os << " + ";
            first = false;
            os << c.get_str();
            if (e != 0) os << "*w^" << e;
        }
    } else {
        auto z = to_complex();
        os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// ScalarContext
// ---------------------------------------------------------------------------

const CycloField& ScalarContext::field() const {
    if (!field_) field_ = std::make_shared<CycloField>(L);
    return *field_;
}

Scalar ScalarContext::rational(long num, long den) const {
    mpq_class v(num, den);
    v.canonicalize();
    return Scalar::from_rational(self(), v);
}

Scalar ScalarContext::zeta() const {
    // e^{i pi / N} = zeta_L^{L / 2N}
    long e = L / (2L * N);
    Scalar base = root(e);
    bool minus = (N % 2 == 1) || (zeta_sign < 0);
    return minus ? -base : base;
}

Scalar ScalarContext::q() const { return root(L / N); }

Scalar ScalarContext::zeta_pow(long e) const {
    long r = ((e % (2L * N)) + 2L * N) % (2L * N);
    Scalar base = root((L / (2L * N)) * r);
    bool neg_base = (N % 2 == 1) || (zeta_sign < 0);
    if (neg_base && (r % 2 == 1)) return -base;
    return base;
}

Scalar ScalarContext::q_pow(long e) const {
    long r = ((e % N) + N) % N;
    return root((L / N) * r);
}

Scalar ScalarContext::sqrt_n() const {
    // Split N = 2^a * M with M odd; sqrt(2) = zeta_8 + zeta_8^{-1} and the
    // odd part comes from the quadratic Gauss sum over Z_M.
    long a = 0, M = N;
    while (M % 2 == 0) { M /= 2; ++a; }
    CtxPtr c = self();
    Scalar r = Scalar::from_int(c, 1);
    long pow2 = 1;
    while (a >= 2) { pow2 *= 2; a -= 2; }
    r = r * Scalar::from_int(c, pow2);
    if (a == 1) {
        if (L % 8 != 0) throw unrepresentable_error("sqrt(2) needs an order divisible by 8");
        r = r * (Scalar::root(c, L / 8) + Scalar::root(c, L - L / 8));
    }
    if (M > 1) {
        if (L % (4 * M) != 0)
            throw unrepresentable_error("sqrt of odd part not representable at this order");
        Scalar g = Scalar::zero(c);
        for (long j = 0; j < M; ++j) g += Scalar::root(c, (L / M) * ((j * j) % M));
        if (M % 4 == 3) g = g * Scalar::root(c, 3 * (L / 4));  // -i * g
        r = r * g;
    }
    return r;
}

Scalar ScalarContext::omega() const {
    if (omega_cached_) return omega_cache_;
    Scalar s = zero();
    for (long j = 0; j < N; ++j) s += zeta_pow(j * j);
    Scalar w = s * sqrt_n().inverse();
    omega_cache_ = w;
    omega_cached_ = true;
    return w;
}

Scalar ScalarContext::omega_sqrt() const {
    Scalar w = omega();
    if (!exact()) {
        std::complex<double> z = w.to_complex();
        double ang = std::arg(z) / 2.0;
        return Scalar::from_complex(self(), std::polar(1.0, ang));
    }
    // Find the order of omega as a root of unity (brute force over divisors
    // of L), then pick the principal square root among the exact candidates.
    long r = 0;
    for (long d = 1; d <= L; ++d) {
        if (L % d != 0) continue;
        Scalar p = one();
        for (long k = 0; k < d; ++k) p = p * w;
        if (p.eq(one())) { r = d; break; }
    }
    if (r == 0) throw unrepresentable_error("omega is not a root of unity in this field");
    long t = -1;
    for (long k = 0; k < r; ++k) {
        if (w.eq(root((L / r) * k))) { t = k; break; }
    }
    if (t < 0 || L % (2 * r) != 0)
        throw unrepresentable_error("omega^(1/2) not representable at this order");
    Scalar cand = root((L / (2 * r)) * t);
    double target = std::arg(w.to_complex()) / 2.0;
    auto closeness = [&](const Scalar& s) {
        double d = std::abs(std::arg(s.to_complex()) - target);
        return std::min(d, 2.0 * M_PI - d);
    };
    Scalar alt = -cand;
    return closeness(cand) <= closeness(alt) ? cand : alt;
}

CtxPtr make_context(int N, int zeta_sign, Mode mode, double tol, long cyclo_order) {
    if (N < 2) throw std::invalid_argument("make_context: N must be >= 2");
    if (zeta_sign != 1 && zeta_sign != -1)
        throw std::invalid_argument("make_context: zeta_sign must be +1 or -1");
    auto ctx = std::make_shared<ScalarContext>();
    ctx->N = N;
    ctx->zeta_sign = (N % 2 == 1) ? +1 : zeta_sign;
    ctx->L = cyclo_order > 0 ? cyclo_order : std::lcm<long>(16, 2L * N * N);
    ctx->mode = mode;
    ctx->tol = tol;
    return ctx;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string scalar_to_json(const Scalar& s) {
    nlohmann::json j;
    if (s.ctx() && s.ctx()->exact()) {
        j["order"] = s.ctx()->L;
        auto coeffs = nlohmann::json::array();
        for (const auto& [e, c] : s.exact().terms)
            coeffs.push_back({e, c.get_num().get_str(), c.get_den().get_str()});
        j["coeffs"] = coeffs;
    } else {
        auto z = s.to_complex();
        j["re"] = z.real();
        j["im"] = z.imag();
    }
    return j.dump();
}

Scalar scalar_from_json(const CtxPtr& ctx, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("coeffs")) {
        Scalar s = Scalar::zero(ctx);
        for (const auto& t : j["coeffs"]) {
            mpz_class num(t[1].get<std::string>());
            mpz_class den(t[2].get<std::string>());
            mpq_class c(num, den);
            c.canonicalize();
            s += Scalar::from_rational(ctx, c) * Scalar::root(ctx, t[0].get<long>());
        }
        return s;
    }
    std::complex<double> z{j.at("re").get<double>(), j.at("im").get<double>()};
    if (ctx->exact()) throw std::invalid_argument("scalar_from_json: numeric scalar in exact mode");
    return Scalar::from_complex(ctx, z);
}

}  // namespace pf

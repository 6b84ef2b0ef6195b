#include "parafermion/pf.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace pf {

PFElement PFElement::identity(const CtxPtr& ctx, int m) {
    PFElement e(ctx, m);
    e.terms_.emplace(0, Scalar::one(ctx));
    return e;
}

PFElement PFElement::generator(const CtxPtr& ctx, int m, int p, int power) {
    if (p < 1 || p > m) throw std::invalid_argument("PFElement::generator: index out of range");
    int N = ctx->N;
    int v = ((power % N) + N) % N;
    PFElement e(ctx, m);
    e.terms_.emplace(key_set(0, p, v), Scalar::one(ctx));
    return e;
}

PFElement PFElement::monomial(const CtxPtr& ctx, int m, const std::vector<int>& I,
                              const Scalar& coeff) {
    if (static_cast<int>(I.size()) != m)
        throw std::invalid_argument("PFElement::monomial: index length != m");
    int N = ctx->N;
    MonoKey k = 0;
    for (int p = 1; p <= m; ++p) k = key_set(k, p, ((I[p - 1] % N) + N) % N);
    PFElement e(ctx, m);
    if (!coeff.is_zero()) e.terms_.emplace(k, coeff);
    return e;
}

void PFElement::add_term(MonoKey key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

static void check_compat(const PFElement& a, const PFElement& b) {
    if (a.ctx() != b.ctx() || a.m() != b.m())
        throw std::invalid_argument("PFElement: mismatched context or strand count");
}

PFElement PFElement::operator+(const PFElement& o) const {
    check_compat(*this, o);
    PFElement r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

PFElement PFElement::operator-(const PFElement& o) const { return *this + (-o); }

PFElement PFElement::operator-() const {
    PFElement r(ctx_, m_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

PFElement PFElement::scaled(const Scalar& s) const {
    PFElement r(ctx_, m_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
}

PFElement PFElement::operator*(const PFElement& o) const {
    check_compat(*this, o);
    int N = ctx_->N;
    PFElement r(ctx_, m_);
    for (const auto& [ka, ca] : terms_) {
        // suffix sums of the left exponents: moving c_k^{j_k} of the right
        // factor into place passes every higher generator of the left factor.
        std::vector<long> suffix(m_ + 2, 0);
        for (int p = m_; p >= 1; --p) suffix[p] = suffix[p + 1] + key_get(ka, p);
        for (const auto& [kb, cb] : o.terms_) {
            long phase = 0;
            MonoKey kr = 0;
            for (int p = 1; p <= m_; ++p) {
                int jb = key_get(kb, p);
                phase -= static_cast<long>(jb) * suffix[p + 1];
                kr = key_set(kr, p, (key_get(ka, p) + jb) % N);
            }
            r.add_term(kr, ca * cb * ctx_->q_pow(phase));
        }
    }
    return r;
}

PFElement PFElement::star() const {
    int N = ctx_->N;
    PFElement r(ctx_, m_);
    for (const auto& [k, c] : terms_) {
        long cross = 0;  // sum_{p<l} i_p i_l
        long seen = 0;
        for (int p = m_; p >= 1; --p) {
            cross += static_cast<long>(key_get(k, p)) * seen;
            seen += key_get(k, p);
        }
        MonoKey kr = 0;
        for (int p = 1; p <= m_; ++p) kr = key_set(kr, p, (N - key_get(k, p)) % N);
        r.add_term(kr, c.conj() * ctx_->q_pow(-cross));
    }
    return r;
}

bool PFElement::eq(const PFElement& o) const { return (*this - o).is_zero(); }

bool PFElement::is_zero() const {
    for (const auto& [k, c] : terms_)
        if (!c.is_zero()) return false;
    return true;
}

static int key_grade(MonoKey k, int m, int N) {
    long g = 0;
    for (int p = 1; p <= m; ++p) g += key_get(k, p);
    return static_cast<int>(g % N);
}

std::optional<int> PFElement::grade() const {
    std::optional<int> g;
    for (const auto& [k, c] : terms_) {
        if (c.is_zero()) continue;
        int gk = key_grade(k, m_, ctx_->N);
        if (!g)
            g = gk;
        else if (*g != gk)
            return std::nullopt;
    }
    return g ? g : std::optional<int>(0);
}

std::map<int, PFElement> PFElement::homogeneous_components() const {
    std::map<int, PFElement> out;
    for (const auto& [k, c] : terms_) {
        if (c.is_zero()) continue;
        int g = key_grade(k, m_, ctx_->N);
        auto it = out.find(g);
        if (it == out.end()) it = out.emplace(g, PFElement(ctx_, m_)).first;
        it->second.add_term(k, c);
    }
    return out;
}

Scalar PFElement::markov_trace() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Scalar::zero(ctx_) : it->second;
}

DenseOperator PFElement::jw() const {
    int N = ctx_->N;
    long dim = 1;
    for (int p = 0; p < m_; ++p) dim *= N;
    DenseOperator mat(ctx_, dim);
    // jw(C_I) = (x)_s X^{i_s} Z^{-t_s} with t_s the suffix sum of exponents;
    // one nonzero entry per column.
    std::vector<int> kvec(m_, 0);
    for (const auto& [key, coeff] : terms_) {
        std::vector<int> iv(m_), tv(m_);
        long t = 0;
        for (int p = m_; p >= 1; --p) {
            iv[p - 1] = key_get(key, p);
            tv[p - 1] = static_cast<int>(t % N);
            t += iv[p - 1];
        }
        for (long col = 0; col < dim; ++col) {
            long rest = col;
            long row = 0;
            long phase = 0;
            for (int s = 0; s < m_; ++s) {
                long shift = 1;
                for (int r2 = s + 1; r2 < m_; ++r2) shift *= N;
                int ks = static_cast<int>(rest / shift);
                rest %= shift;
                phase -= static_cast<long>(tv[s]) * ks;
                row = row * N + (ks + iv[s]) % N;
            }
            mat.at(row, col) += coeff * ctx_->q_pow(phase);
        }
    }
    return mat;
}

PFElement PFElement::conditional_expectation() const {
    if (m_ < 1) throw std::invalid_argument("conditional_expectation: m must be >= 1");
    PFElement r(ctx_, m_ - 1);
    for (const auto& [k, c] : terms_) {
        if (key_get(k, m_) != 0) continue;
        r.add_term(k, c);
    }
    return r;
}

PFElement PFElement::shift_left() const { return embed(m_ + 1, 1); }
PFElement PFElement::embed_right() const { return embed(m_ + 1, 0); }

PFElement PFElement::embed(int mm, int offset) const {
    if (mm < m_ + offset) throw std::invalid_argument("PFElement::embed: target too small");
    PFElement r(ctx_, mm);
    for (const auto& [k, c] : terms_) {
        MonoKey kr = 0;
        for (int p = 1; p <= m_; ++p) kr = key_set(kr, p + offset, key_get(k, p));
        r.add_term(kr, c);
    }
    return r;
}

std::string PFElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int p = 1; p <= m_; ++p)
            if (key_get(k, p) != 0) os << " c" << p << "^" << key_get(k, p);
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

PFElement jones_projection(const CtxPtr& ctx, int m, int i) {
    if (m < 2 || i < 1 || i > m - 1)
        throw std::invalid_argument("jones_projection: index out of range");
    int N = ctx->N;
    PFElement e = PFElement::zero(ctx, m);
    Scalar inv_sqrt = ctx->sqrt_n().inverse();
    for (int k = 0; k < N; ++k) {
        PFElement t = PFElement::generator(ctx, m, i, k) * PFElement::generator(ctx, m, i + 1, -k);
        e = e + t.scaled(inv_sqrt * ctx->zeta_pow(static_cast<long>(k) * k));
    }
    return e;
}

PFElement sft(const PFElement& x) {
    const CtxPtr& ctx = x.ctx();
    int m = x.m();
    if (m == 0) return x;
    PFElement acc = x.shift_left();
    for (int i = 1; i <= m; ++i) acc = jones_projection(ctx, m + 1, i) * acc;
    return acc.conditional_expectation().scaled(ctx->sqrt_n());
}

PFElement sft_inverse(const PFElement& x) {
    const CtxPtr& ctx = x.ctx();
    int m = x.m();
    if (m == 0) return x;
    PFElement y = x;
    for (int k = 0; k < 2 * m - 1; ++k) y = sft(y);
    // sft^{2m} multiplies a grade-g component by q^{g^2}; undo it.
    PFElement r = PFElement::zero(ctx, m);
    for (const auto& [g, comp] : y.homogeneous_components())
        r = r + comp.scaled(ctx->q_pow(-static_cast<long>(g) * g));
    return r;
}

PFElement rotate_pi(const PFElement& x) {
    PFElement y = x;
    for (int k = 0; k < x.m(); ++k) y = sft(y);
    return y;
}

PFElement reflect_theta(const PFElement& x) {
    const CtxPtr& ctx = x.ctx();
    PFElement r = PFElement::zero(ctx, x.m());
    PFElement xs = x.star();
    // x* has grade -g when x has grade g; Theta(x) = zeta^{-g^2} rho_pi(x*).
    for (const auto& [gneg, comp] : xs.homogeneous_components()) {
        long g = (ctx->N - gneg) % ctx->N;
        r = r + rotate_pi(comp).scaled(ctx->zeta_pow(-g * g));
    }
    return r;
}

PFElement graded_tensor(const PFElement& a, const PFElement& b, TensorSign sign) {
    if (a.ctx() != b.ctx()) throw std::invalid_argument("graded_tensor: context mismatch");
    const CtxPtr& ctx = a.ctx();
    int p = a.m(), r = b.m();
    if (sign == TensorSign::plus) return a.embed(p + r, 0) * b.embed(p + r, p);
    // x (x)_- y = q^{-|x||y|} x (x)_+ y per homogeneous pair
    PFElement out = PFElement::zero(ctx, p + r);
    for (const auto& [ga, ca] : a.homogeneous_components())
        for (const auto& [gb, cb] : b.homogeneous_components())
            out = out + graded_tensor(ca, cb, TensorSign::plus)
                            .scaled(ctx->q_pow(-static_cast<long>(ga) * gb));
    return out;
}

LiftedElement twisted_tensor(const LiftedElement& a, const LiftedElement& b) {
    const CtxPtr& ctx = a.element.ctx();
    auto check = [&](const LiftedElement& le) {
        auto g = le.element.grade();
        if (!g) throw std::invalid_argument("twisted_tensor: element not homogeneous");
        long lm = ((le.lift % ctx->N) + ctx->N) % ctx->N;
        if (lm != *g) throw std::invalid_argument("twisted_tensor: lift incongruent with grade");
    };
    check(a);
    check(b);
    LiftedElement r;
    r.lift = a.lift + b.lift;
    r.element = graded_tensor(a.element, b.element, TensorSign::plus)
                    .scaled(ctx->zeta_pow(-a.lift * b.lift));
    return r;
}

LiftedElement lift_canonical(const PFElement& homogeneous) {
    auto g = homogeneous.grade();
    if (!g) throw std::invalid_argument("lift_canonical: element not homogeneous");
    return LiftedElement{homogeneous, *g};
}

PFElement theta_twisted_pair(const PFElement& xl, const PFElement& yr) {
    const CtxPtr& ctx = xl.ctx();
    auto gx = xl.grade(), gy = yr.grade();
    if (!gx || !gy) throw std::invalid_argument("theta_twisted_pair: inputs must be homogeneous");
    LiftedElement left{reflect_theta(xl), -static_cast<long>(*gx)};
    LiftedElement right{yr, static_cast<long>(*gy)};
    return twisted_tensor(left, right).element;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> all_multi_indices(int N, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m, 0);
    while (true) {
        out.push_back(cur);
        int p = m - 1;
        while (p >= 0 && cur[p] == N - 1) cur[p--] = 0;
        if (p < 0) break;
        ++cur[p];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Paired-strand representation
// ---------------------------------------------------------------------------

DenseOperator pair_rep(const PFElement& x) {
    const CtxPtr& ctx = x.ctx();
    int N = ctx->N;
    if (x.m() % 2 != 0) throw std::invalid_argument("pair_rep: strand count must be even");
    int w = x.m() / 2;
    long dim = 1;
    for (int s = 0; s < w; ++s) dim *= N;
    DenseOperator mat(ctx, dim);
    // pi(C_I) acts on slot s as zeta^{-b_s^2} X^{a_s+b_s} Z^{-(b_s+t_s)}
    // where a_s, b_s are the slot's two exponents and t_s the suffix sum.
    for (const auto& [key, coeff] : x.terms()) {
        std::vector<int> shift(w), zpow(w);
        long zeta_phase = 0;
        long suffix = 0;
        for (int s = w; s >= 1; --s) {
            int a = key_get(key, 2 * s - 1);
            int b = key_get(key, 2 * s);
            shift[s - 1] = (a + b) % N;
            zpow[s - 1] = static_cast<int>((b + suffix) % N);
            zeta_phase -= static_cast<long>(b) * b;
            suffix += a + b;
        }
        Scalar base = coeff * ctx->zeta_pow(zeta_phase);
        for (long col = 0; col < dim; ++col) {
            long rest = col, row = 0, qphase = 0;
            for (int s = 0; s < w; ++s) {
                long sl = 1;
                for (int r2 = s + 1; r2 < w; ++r2) sl *= N;
                int k = static_cast<int>(rest / sl);
                rest %= sl;
                qphase -= static_cast<long>(zpow[s]) * k;
                row = row * N + (k + shift[s]) % N;
            }
            mat.at(row, col) += base * ctx->q_pow(qphase);
        }
    }
    return mat;
}

std::vector<Scalar> pair_vacuum(const CtxPtr& ctx, int w) {
    int N = ctx->N;
    long dim = 1;
    for (int s = 0; s < w; ++s) dim *= N;
    std::vector<Scalar> v(dim, Scalar::zero(ctx));
    // mirror-paired nested cups: slot s pairs with slot w+1-s, middle slot 0;
    // uniform coefficient N^{ceil(w/2)/2} gives norm N^{w/2}.
    Scalar coeff = Scalar::one(ctx);
    int half = (w + 1) / 2;
    for (int k = 0; k < half / 2; ++k) coeff = coeff * ctx->integer(N);
    if (half % 2 == 1) coeff = coeff * ctx->sqrt_n();
    std::vector<int> slots(w, 0);
    long npairs = w / 2;
    long count = 1;
    for (long p = 0; p < npairs; ++p) count *= N;
    for (long idx = 0; idx < count; ++idx) {
        long rest = idx;
        for (long p = 0; p < npairs; ++p) {
            int d = static_cast<int>(rest % N);
            rest /= N;
            slots[p] = d;
            slots[w - 1 - p] = (N - d) % N;
        }
        if (w % 2 == 1) slots[w / 2] = 0;
        long flat = 0;
        for (int s = 0; s < w; ++s) flat = flat * N + slots[s];
        v[flat] = coeff;
    }
    return v;
}

PFElement pair_rep_inverse(const CtxPtr& ctx, int w, const DenseOperator& M) {
    int N = ctx->N;
    long dim = M.dim();
    PFElement x = PFElement::zero(ctx, 2 * w);
    mpq_class inv_dim(1, dim);
    // coefficient of C_K is Tr(pi(C_K)^* M) / N^w; pi(C_K) has one nonzero
    // entry per column.
    for (const auto& K : all_multi_indices(N, 2 * w)) {
        PFElement ck = PFElement::monomial(ctx, 2 * w, K, Scalar::one(ctx));
        DenseOperator pk = pair_rep(ck);
        Scalar acc = Scalar::zero(ctx);
        for (long col = 0; col < dim; ++col)
            for (long row = 0; row < dim; ++row) {
                if (pk.at(row, col).is_zero()) continue;
                acc += pk.at(row, col).conj() * M.at(row, col);
                break;
            }
        x = x + ck.scaled(acc * Scalar::from_rational(ctx, inv_dim));
    }
    return x;
}

PFElement vacuum_projection(const CtxPtr& ctx, int w) {
    auto om = pair_vacuum(ctx, w);
    long dim = static_cast<long>(om.size());
    DenseOperator M(ctx, dim);
    // |f0><f0| with f0 = Omega / N^{w/2}
    Scalar inv_norm2 = Scalar::one(ctx);
    mpq_class invn(1, 1);
    for (int s = 0; s < w; ++s) invn /= ctx->N;
    inv_norm2 = Scalar::from_rational(ctx, invn);
    for (long i = 0; i < dim; ++i) {
        if (om[i].is_zero()) continue;
        for (long j = 0; j < dim; ++j) {
            if (om[j].is_zero()) continue;
            M.at(i, j) = om[i] * om[j].conj() * inv_norm2;
        }
    }
    return pair_rep_inverse(ctx, w, M);
}

PFElement matrix_unit_even(const CtxPtr& ctx, int m, const std::vector<int>& I,
                           const std::vector<int>& Ip) {
    // v_I^{I'} = C_I . V0 . C_{I'}^*: labels on the legs of the nested
    // cup-cap projection V0.
    PFElement v0 = vacuum_projection(ctx, m);
    PFElement ci = PFElement::monomial(ctx, m, I, Scalar::one(ctx)).embed(2 * m, 0);
    PFElement cip = PFElement::monomial(ctx, m, Ip, Scalar::one(ctx)).embed(2 * m, 0);
    return ci * v0 * cip.star();
}

std::vector<PFElement> matrix_units(const CtxPtr& ctx, MatrixUnitKind kind, int m) {
    int N = ctx->N;
    std::vector<PFElement> out;
    switch (kind) {
        case MatrixUnitKind::Q: {
            Scalar invN = Scalar::from_rational(ctx, mpq_class(1, N));
            for (int i = 0; i < N; ++i) {
                PFElement qi = PFElement::zero(ctx, 1);
                for (int j = 0; j < N; ++j)
                    qi = qi + PFElement::generator(ctx, 1, 1, j)
                                  .scaled(invN * ctx->q_pow(static_cast<long>(i) * j));
                out.push_back(qi);
            }
            return out;
        }
        case MatrixUnitKind::two_box:
        case MatrixUnitKind::even: {
            int mm = (kind == MatrixUnitKind::two_box) ? 1 : m;
            PFElement v0 = vacuum_projection(ctx, mm);
            for (const auto& I : all_multi_indices(N, mm)) {
                PFElement ci = PFElement::monomial(ctx, mm, I, Scalar::one(ctx)).embed(2 * mm, 0);
                PFElement left = ci * v0;
                for (const auto& J : all_multi_indices(N, mm)) {
                    PFElement cj = PFElement::monomial(ctx, mm, J, Scalar::one(ctx)).embed(2 * mm, 0);
                    out.push_back(left * cj.star());
                }
            }
            return out;
        }
        case MatrixUnitKind::odd: {
            // PF_{2m+1} = (matrix units of PF_{2m}) x (central spectral
            // projections of Gamma = c_1 c_2^{-1} c_3 ... c_{2m+1}).
            int mm = 2 * m + 1;
            PFElement gamma = PFElement::identity(ctx, mm);
            for (int p = 1; p <= mm; ++p)
                gamma = gamma * PFElement::generator(ctx, mm, p, (p % 2 == 1) ? 1 : -1);
            // normalize so gamma_n^N = 1
            PFElement gn = PFElement::identity(ctx, mm);
            for (int k = 0; k < N; ++k) gn = gn * gamma;
            Scalar phase = gn.markov_trace();  // gamma^N is a scalar multiple of 1
            if (!gn.eq(PFElement::identity(ctx, mm).scaled(phase)))
                throw std::runtime_error("matrix_units: Gamma^N not scalar");
            // find a scalar lambda with (lambda*Gamma)^N = 1: lambda = phase^{-1/N}
            // phase is a root of unity; search exponent via ctx roots.
            Scalar lambda = Scalar::one(ctx);
            if (!phase.eq(Scalar::one(ctx))) {
                bool found = false;
                for (long e = 0; e < 2L * N * ctx->N && !found; ++e) {
                    Scalar cand = ctx->zeta_pow(e);
                    Scalar cn = Scalar::one(ctx);
                    for (int k = 0; k < N; ++k) cn = cn * cand;
                    if ((cn * phase).eq(Scalar::one(ctx))) {
                        lambda = cand;
                        found = true;
                    }
                }
                if (!found) throw std::runtime_error("matrix_units: cannot normalize Gamma");
            }
            PFElement gnorm = gamma.scaled(lambda);
            std::vector<PFElement> proj;
            Scalar invN = Scalar::from_rational(ctx, mpq_class(1, N));
            for (int i = 0; i < N; ++i) {
                PFElement pi = PFElement::zero(ctx, mm);
                PFElement pw = PFElement::identity(ctx, mm);
                for (int j = 0; j < N; ++j) {
                    pi = pi + pw.scaled(invN * ctx->q_pow(-static_cast<long>(i) * j));
                    pw = pw * gnorm;
                }
                proj.push_back(pi);
            }
            PFElement v0 = vacuum_projection(ctx, m);
            for (const auto& I : all_multi_indices(N, m))
                for (const auto& J : all_multi_indices(N, m)) {
                    PFElement ci = PFElement::monomial(ctx, m, I, Scalar::one(ctx)).embed(2 * m, 0);
                    PFElement cj = PFElement::monomial(ctx, m, J, Scalar::one(ctx)).embed(2 * m, 0);
                    PFElement v = (ci * v0 * cj.star()).embed(mm, 0);
                    for (int i = 0; i < N; ++i) out.push_back(v * proj[i]);
                }
            return out;
        }
    }
    throw std::invalid_argument("matrix_units: unknown kind");
}

// ---------------------------------------------------------------------------

std::string pf_to_json(const PFElement& x) {
    nlohmann::json j;
    j["N"] = x.ctx()->N;
    j["m"] = x.m();
    auto terms = nlohmann::json::array();
    for (const auto& [k, c] : x.terms()) {
        nlohmann::json t;
        auto idx = nlohmann::json::array();
        for (int p = 1; p <= x.m(); ++p) idx.push_back(key_get(k, p));
        t["I"] = idx;
        t["coeff"] = nlohmann::json::parse(scalar_to_json(c));
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j.dump();
}

PFElement pf_from_json(const CtxPtr& ctx, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("N").get<int>() != ctx->N)
        throw std::invalid_argument("pf_from_json: N mismatch with context");
    int m = j.at("m").get<int>();
    PFElement x = PFElement::zero(ctx, m);
    for (const auto& t : j.at("terms")) {
        std::vector<int> I = t.at("I").get<std::vector<int>>();
        Scalar c = scalar_from_json(ctx, t.at("coeff").dump());
        x = x + PFElement::monomial(ctx, m, I, c);
    }
    return x;
}

}  // namespace pf

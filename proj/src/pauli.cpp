#include "parafermion/pauli.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace pf {

PauliTriple pauli_xyz(const CtxPtr& ctx, PauliVersion version) {
    int N = ctx->N;
    DenseOperator X(ctx, N), Y(ctx, N), Z(ctx, N);
    for (int k = 0; k < N; ++k) {
        Z.at(k, k) = ctx->q_pow(k);
        if (version == PauliVersion::q) {
            X.at((k + 1) % N, k) = Scalar::one(ctx);
            Y.at((k + N - 1) % N, k) = ctx->zeta_pow(1 - 2L * k);
        } else {
            X.at((k + N - 1) % N, k) = Scalar::one(ctx);
            Y.at((k + 1) % N, k) = ctx->zeta_pow(-2L * k - 1);
        }
    }
    return {X, Y, Z};
}

QuaternionTriple quaternions(const CtxPtr& ctx, PauliVersion version) {
    auto [X, Y, Z] = pauli_xyz(ctx, version);
    int s = (version == PauliVersion::q) ? 1 : -1;
    Scalar mz = -ctx->zeta_pow(s);
    Scalar mzi = -ctx->zeta_pow(-s);
    return {Y.scaled(mz), X.scaled(mz), Z.scaled(mzi)};
}

QuadraticModel quadratic_model(const CtxPtr& ctx, QuadraticTag tag) {
    // X,Y,Z = zeta * c_a^{sa} c_b^{sb}; each model fixes the shared generator
    // and the exponent pattern.
    struct Term {
        int a, sa, b, sb;
    };
    Term xt{}, yt{}, zt{};
    PauliVersion ver{};
    int zexp = 0, gexp = 0;
    switch (tag) {
        case QuadraticTag::q1:  // shares c1
            xt = {1, 1, 4, -1}; yt = {1, -1, 3, 1}; zt = {1, 1, 2, -1};
            ver = PauliVersion::q; zexp = 1; gexp = 1;
            break;
        case QuadraticTag::qinv4:  // shares c4
            xt = {1, -1, 4, 1}; yt = {2, 1, 4, -1}; zt = {3, -1, 4, 1};
            ver = PauliVersion::q_inv; zexp = -1; gexp = -1;
            break;
        case QuadraticTag::q4:  // shares c4
            xt = {3, -1, 4, 1}; yt = {2, 1, 4, -1}; zt = {1, -1, 4, 1};
            ver = PauliVersion::q; zexp = 1; gexp = -1;
            break;
        case QuadraticTag::qinv1:  // shares c1
            xt = {1, -1, 2, 1}; yt = {1, 1, 3, -1}; zt = {1, -1, 4, 1};
            ver = PauliVersion::q_inv; zexp = -1; gexp = -1;
            break;
    }
    auto build = [&](const Term& t) {
        PFElement e = PFElement::generator(ctx, 4, t.a, t.sa) *
                      PFElement::generator(ctx, 4, t.b, t.sb);
        return e.scaled(ctx->zeta()).jw();
    };
    PFElement g = (PFElement::generator(ctx, 4, 1, 1) * PFElement::generator(ctx, 4, 2, -1) *
                   PFElement::generator(ctx, 4, 3, 1) * PFElement::generator(ctx, 4, 4, -1))
                      .scaled(ctx->q());
    return {build(xt), build(yt), build(zt), g.jw(), ver, zexp, gexp};
}

DenseOperator eigen_projection_qpower(const DenseOperator& u, int k) {
    const CtxPtr& ctx = u.ctx();
    int N = ctx->N;
    DenseOperator p(ctx, u.dim());
    DenseOperator pw = DenseOperator::identity(ctx, u.dim());
    Scalar invN = Scalar::from_rational(ctx, mpq_class(1, N));
    for (int j = 0; j < N; ++j) {
        p = p + pw.scaled(invN * ctx->q_pow(-static_cast<long>(j) * k));
        pw = pw * u;
    }
    return p;
}

FourierGaussian fourier_gaussian(const CtxPtr& ctx) {
    int N = ctx->N;
    DenseOperator F(ctx, N), G(ctx, N);
    Scalar inv_rootN = ctx->sqrt_n().inverse();
    for (int k = 0; k < N; ++k) {
        G.at(k, k) = ctx->zeta_pow(static_cast<long>(k) * k);
        for (int l = 0; l < N; ++l) F.at(l, k) = inv_rootN * ctx->q_pow(static_cast<long>(k) * l);
    }
    return {F, G};
}

namespace {

std::string projective_key(const DenseOperator& m) {
    // normalize by the first nonzero entry, then serialize
    long d = m.dim();
    Scalar pivot;
    bool found = false;
    for (long i = 0; i < d * d && !found; ++i) {
        const Scalar& s = m.at(i / d, i % d);
        if (!s.is_zero()) {
            pivot = s;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("projective_key: zero matrix");
    Scalar inv = pivot.inverse();
    std::ostringstream os;
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            Scalar e = m.at(i, j) * inv;
            if (m.ctx()->exact()) {
                os << "|";
                for (const auto& [k, c] : e.exact().terms) os << k << ":" << c.get_str() << ",";
            } else {
                auto z = e.to_complex();
                os << "|" << llround(z.real() * 1e6) << ":" << llround(z.imag() * 1e6);
            }
        }
    return os.str();
}

long sl2_order_brute_force(int N) {
    long count = 0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d)
                    if (((a * d - b * c) % N + N) % N == 1) ++count;
    return count;
}

// Does u X^i Z^j u^{-1} land projectively on X^{i'} Z^{j'} with
// (i',j') = S(i,j) for S = [[S00,S01],[S10,S11]]?
bool ad_matches(const CtxPtr& ctx, const DenseOperator& u, const DenseOperator& X,
                const DenseOperator& Z, int S00, int S01, int S10, int S11) {
    int N = ctx->N;
    DenseOperator uinv = u.adjoint();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            DenseOperator xz = X.pow(i) * Z.pow(j);
            DenseOperator lhs = u * xz * uinv;
            int ip = ((S00 * i + S01 * j) % N + N) % N;
            int jp = ((S10 * i + S11 * j) % N + N) % N;
            DenseOperator rhs = X.pow(ip) * Z.pow(jp);
            if (!lhs.proportional_to(rhs)) return false;
        }
    return true;
}

}  // namespace

CliffordReport clifford_enumerate(const CtxPtr& ctx, long cap) {
    auto [X, Y, Z] = pauli_xyz(ctx, PauliVersion::q);
    auto [F, G] = fourier_gaussian(ctx);
    (void)Y;

    CliffordReport rep;
    // On (i,j) exponent columns of X^i Z^j: Ad_F is the rotation S; Ad_G is
    // the unipotent T read in the (Z,X)-exponent ordering, i.e. transposed.
    rep.adF_is_S = ad_matches(ctx, F, X, Z, 0, -1, 1, 0);
    rep.adG_is_T = ad_matches(ctx, G, X, Z, 1, 0, 1, 1);
    rep.sl2_order = sl2_order_brute_force(ctx->N);

    std::vector<DenseOperator> gens = {X, Z, F, G};
    std::set<std::string> seen;
    std::deque<DenseOperator> frontier;
    DenseOperator id = DenseOperator::identity(ctx, ctx->N);
    seen.insert(projective_key(id));
    frontier.push_back(id);
    rep.closed = true;
    while (!frontier.empty()) {
        DenseOperator cur = frontier.front();
        frontier.pop_front();
        for (const auto& g : gens) {
            DenseOperator nxt = cur * g;
            std::string key = projective_key(nxt);
            if (seen.count(key)) continue;
            if (static_cast<long>(seen.size()) >= cap) {
                rep.closed = false;
                rep.order = static_cast<long>(seen.size());
                return rep;
            }
            seen.insert(key);
            frontier.push_back(nxt);
        }
    }
    rep.order = static_cast<long>(seen.size());
    rep.order_matches_semidirect =
        rep.order == static_cast<long>(ctx->N) * ctx->N * rep.sl2_order;
    return rep;
}

}  // namespace pf

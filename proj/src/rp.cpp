#include "parafermion/rp.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"

namespace pf {

namespace {

MonoKey pack(const CtxPtr& ctx, const std::vector<int>& I) {
    MonoKey k = 0;
    for (size_t p = 0; p < I.size(); ++p)
        k = key_set(k, static_cast<int>(p + 1), ((I[p] % ctx->N) + ctx->N) % ctx->N);
    return k;
}

std::vector<int> unpack(int m, MonoKey k) {
    std::vector<int> I(m);
    for (int p = 1; p <= m; ++p) I[p - 1] = key_get(k, p);
    return I;
}

int key_grade_of(const CtxPtr& ctx, int m, MonoKey k) {
    long g = 0;
    for (int p = 1; p <= m; ++p) g += key_get(k, p);
    return static_cast<int>(g % ctx->N);
}

}  // namespace

void CouplingMatrix::set(const std::vector<int>& I, const std::vector<int>& Ip, const Scalar& v) {
    if (static_cast<int>(I.size()) != m_ || static_cast<int>(Ip.size()) != m_)
        throw std::invalid_argument("CouplingMatrix::set: index length mismatch");
    auto key = std::make_pair(pack(ctx_, I), pack(ctx_, Ip));
    if (v.is_zero())
        entries_.erase(key);
    else
        entries_[key] = v;
}

Scalar CouplingMatrix::get(const std::vector<int>& I, const std::vector<int>& Ip) const {
    auto it = entries_.find(std::make_pair(pack(ctx_, I), pack(ctx_, Ip)));
    return it == entries_.end() ? Scalar::zero(ctx_) : it->second;
}

void CouplingMatrix::validate() const {
    for (const auto& [key, v] : entries_) {
        if (key_grade_of(ctx_, m_, key.first) != key_grade_of(ctx_, m_, key.second))
            throw std::invalid_argument("CouplingMatrix: entry outside the zero-graded support");
        auto it = entries_.find(std::make_pair(key.second, key.first));
        Scalar mirror = it == entries_.end() ? Scalar::zero(ctx_) : it->second;
        if (!mirror.conj().eq(v)) throw std::invalid_argument("CouplingMatrix: not Hermitian");
    }
}

PFElement build_hamiltonian(const CouplingMatrix& J) {
    J.validate();
    const CtxPtr& ctx = J.ctx();
    int m = J.m();
    PFElement minus_h = PFElement::zero(ctx, 2 * m);
    for (const auto& [key, v] : J.entries()) {
        PFElement ci = PFElement::monomial(ctx, m, unpack(m, key.first), Scalar::one(ctx));
        PFElement cip = PFElement::monomial(ctx, m, unpack(m, key.second), Scalar::one(ctx));
        minus_h = minus_h + theta_twisted_pair(ci, cip).scaled(v);
    }
    return -minus_h;
}

DenseOperator sft_matrix(const CouplingMatrix& J) {
    const CtxPtr& ctx = J.ctx();
    int m = J.m();
    long dim = 1;
    for (int p = 0; p < m; ++p) dim *= ctx->N;
    DenseOperator out(ctx, dim);
    // N^{m/2}
    mpq_class full(1);
    for (int p = 0; p < m / 2; ++p) full *= ctx->N;
    Scalar scale = Scalar::from_rational(ctx, full);
    if (m % 2 == 1) scale = scale * ctx->sqrt_n();
    auto indices = all_multi_indices(ctx->N, m);
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            Scalar v = J.get(indices[r], indices[c]);
            if (!v.is_zero()) out.at(r, c) = v * scale;
        }
    return out;
}

bool j0_psd(const CouplingMatrix& J, double tol) {
    const CtxPtr& ctx = J.ctx();
    int m = J.m();
    long dim = 1;
    for (int p = 0; p < m; ++p) dim *= ctx->N;
    long d0 = dim - 1;  // all multi-indices except the zero index
    if (d0 == 0) return true;
    auto indices = all_multi_indices(ctx->N, m);
    Eigen::MatrixXcd j0(d0, d0);
    for (long r = 1; r < dim; ++r)
        for (long c = 1; c < dim; ++c)
            j0(r - 1, c - 1) = J.get(indices[r], indices[c]).to_complex();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j0);
    return es.eigenvalues().minCoeff() >= -tol;
}

namespace {

// The built Hamiltonian is reflection invariant but in general not
// self-adjoint (its adjoint is the pi-rotated element), so e^{-beta H} is a
// plain matrix exponential.
struct ExpMachine {
    Eigen::MatrixXcd hm;
    long dim;

    explicit ExpMachine(const PFElement& h) : hm(h.jw().to_eigen()) { dim = hm.rows(); }

    Eigen::MatrixXcd exp_minus_beta(double beta) const {
        Eigen::MatrixXcd a = (-beta) * hm;
        return a.exp();
    }
};

std::complex<double> thermal_pair_trace(const ExpMachine& em, double beta,
                                        const Eigen::MatrixXcd& pair_jw) {
    Eigen::MatrixXcd e = em.exp_minus_beta(beta);
    return (e * pair_jw).trace() / static_cast<double>(em.dim);
}

}  // namespace

RPReport rp_check(const CouplingMatrix& J, const std::vector<double>& betas,
                  const std::vector<PFElement>& xs, double tol) {
    for (double b : betas)
        if (b < 0) throw std::invalid_argument("rp_check: beta must be >= 0");
    const CtxPtr& ctx = J.ctx();
    int m = J.m();
    PFElement h = build_hamiltonian(J);
    ExpMachine em(h);
    RPReport rep;
    rep.minimum = 0.0;
    bool first = true;
    for (size_t xi = 0; xi < xs.size(); ++xi) {
        // Pi(Theta(x^) (x)_t x^) summed over homogeneous components
        PFElement pair = PFElement::zero(ctx, 2 * m);
        for (const auto& [g, comp] : xs[xi].homogeneous_components())
            pair = pair + theta_twisted_pair(comp, comp);
        Eigen::MatrixXcd pj = pair.jw().to_eigen();
        for (double beta : betas) {
            std::complex<double> val = thermal_pair_trace(em, beta, pj);
            // a genuinely complex value is itself a positivity violation
            double effective = std::abs(val.imag()) > tol ? -std::abs(val.imag()) : val.real();
            rep.entries.push_back({beta, xi, effective});
            if (first || effective < rep.minimum) rep.minimum = effective;
            first = false;
        }
    }
    rep.positive = rep.minimum >= -tol;
    return rep;
}

std::vector<Scalar> rp_exact_moments(const CouplingMatrix& J, const PFElement& x, int K) {
    const CtxPtr& ctx = J.ctx();
    PFElement h = build_hamiltonian(J);
    PFElement pair = PFElement::zero(ctx, 2 * J.m());
    for (const auto& [g, comp] : x.homogeneous_components())
        pair = pair + theta_twisted_pair(comp, comp);
    std::vector<Scalar> out;
    PFElement pw = PFElement::identity(ctx, 2 * J.m());
    for (int k = 0; k <= K; ++k) {
        out.push_back((pw * pair).markov_trace());
        pw = pw * (-h);
    }
    return out;
}

Eigen::MatrixXcd quantized_gram(const CouplingMatrix& J, double beta,
                                const std::vector<PFElement>& xs, int truncation) {
    const CtxPtr& ctx = J.ctx();
    int m = J.m();
    PFElement h = build_hamiltonian(J);
    Eigen::MatrixXcd gram(xs.size(), xs.size());
    auto pair_of = [&](const PFElement& x, const PFElement& y) {
        // sum over common grades: zeta^{g^2} Theta(x_g) (x)+ y_g
        PFElement acc = PFElement::zero(ctx, 2 * m);
        auto xc = x.homogeneous_components();
        auto yc = y.homogeneous_components();
        for (const auto& [g, xg] : xc) {
            auto it = yc.find(g);
            if (it == yc.end()) continue;
            acc = acc + graded_tensor(reflect_theta(xg), it->second, TensorSign::plus)
                            .scaled(ctx->zeta_pow(static_cast<long>(g) * g));
        }
        return acc;
    };
    if (truncation < 0) {
        ExpMachine em(h);
        for (size_t a = 0; a < xs.size(); ++a)
            for (size_t b = 0; b < xs.size(); ++b) {
                Eigen::MatrixXcd pj = pair_of(xs[a], xs[b]).jw().to_eigen();
                Eigen::MatrixXcd e = em.exp_minus_beta(beta);
                gram(a, b) = (e * pj).trace() / static_cast<double>(em.dim);
            }
        return gram;
    }
    // truncated series sum_{k<=K} beta^k/k! tr((-H)^k pair)
    long dim = h.jw().dim();
    for (size_t a = 0; a < xs.size(); ++a)
        for (size_t b = 0; b < xs.size(); ++b) {
            PFElement pair = pair_of(xs[a], xs[b]);
            PFElement pw = PFElement::identity(ctx, 2 * m);
            std::complex<double> acc = 0.0;
            double coeff = 1.0;
            for (int k = 0; k <= truncation; ++k) {
                if (k > 0) coeff *= beta / k;
                acc += coeff * (pw * pair).markov_trace().to_complex();
                pw = pw * (-h);
            }
            (void)dim;
            gram(a, b) = acc;
        }
    return gram;
}

EquivalenceReport theorem_equivalence(const std::vector<CouplingMatrix>& ensemble,
                                      const std::vector<double>& betas, double tol) {
    EquivalenceReport rep;
    rep.total = ensemble.size();
    for (size_t idx = 0; idx < ensemble.size(); ++idx) {
        const CouplingMatrix& J = ensemble[idx];
        const CtxPtr& ctx = J.ctx();
        int m = J.m();
        bool j0 = j0_psd(J, tol);
        // reflection positivity of the Theta-pairing Gram over the full basis
        std::vector<PFElement> basis;
        for (const auto& I : all_multi_indices(ctx->N, m))
            basis.push_back(PFElement::monomial(ctx, m, I, Scalar::one(ctx)));
        bool rp = true;
        double worst = 0.0, worst_beta = 0.0;
        auto grade_down = [&](const Eigen::MatrixXcd& g, double beta) {
            double nh = (g - g.adjoint()).cwiseAbs().maxCoeff();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((g + g.adjoint()) / 2.0);
            double mn = es.eigenvalues().minCoeff();
            if (nh > tol) mn = std::min(mn, -nh);
            if (mn < worst) {
                worst = mn;
                worst_beta = beta;
            }
            if (mn < -tol) rp = false;
        };
        for (double beta : betas) grade_down(quantized_gram(J, beta, basis, -1), beta);
        // The pairing at beta = 0 vanishes off the identity, so positivity
        // for small beta is governed by the first derivative there; a
        // violation can live below the smallest sampled beta.
        {
            PFElement h = build_hamiltonian(J);
            Eigen::MatrixXcd hm = h.jw().to_eigen();
            long dim2m = hm.rows();
            Eigen::MatrixXcd d(basis.size() - 1, basis.size() - 1);
            for (size_t a = 1; a < basis.size(); ++a)
                for (size_t b = 1; b < basis.size(); ++b) {
                    long ga = *basis[a].grade(), gb = *basis[b].grade();
                    if (ga != gb) {
                        d(a - 1, b - 1) = 0.0;
                        continue;
                    }
                    PFElement pair =
                        graded_tensor(reflect_theta(basis[a]), basis[b], TensorSign::plus)
                            .scaled(ctx->zeta_pow(ga * ga));
                    d(a - 1, b - 1) =
                        (-hm * pair.jw().to_eigen()).trace() / static_cast<double>(dim2m);
                }
            grade_down(d, 0.0);
        }
        if (j0 != rp) rep.mismatches.push_back({idx, j0, rp, worst_beta, worst});
    }
    return rep;
}

CouplingMatrix random_coupling(const CtxPtr& ctx, int m, std::mt19937_64& rng, int force_sign,
                               double margin) {
    int N = ctx->N;
    auto indices = all_multi_indices(N, m);
    long dim = static_cast<long>(indices.size());
    auto grade_of = [&](const std::vector<int>& I) {
        long g = 0;
        for (int v : I) g += v;
        return static_cast<int>(g % N);
    };
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    // random Hermitian zero-graded matrix over all pairs
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (long r = 0; r < dim; ++r)
        for (long c = r; c < dim; ++c) {
            if (grade_of(indices[r]) != grade_of(indices[c])) continue;
            std::complex<double> v(dist(rng), r == c ? 0.0 : dist(rng));
            full(r, c) = v;
            full(c, r) = std::conj(v);
        }
    // shape the crossing block
    Eigen::MatrixXcd block = full.bottomRightCorner(dim - 1, dim - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    double mn = es.eigenvalues().minCoeff();
    if (force_sign > 0) {
        double shift = std::max(0.0, -mn) + margin;
        block += shift * Eigen::MatrixXcd::Identity(dim - 1, dim - 1);
    } else if (force_sign < 0) {
        double mx = es.eigenvalues().maxCoeff();
        // pull the spectrum down so at least one eigenvalue is <= -margin
        block -= (mn + margin + 0.25 * std::abs(mx)) *
                 Eigen::MatrixXcd::Identity(dim - 1, dim - 1);
    } else {
        if (std::abs(mn) < margin)
            block += (margin - mn) * Eigen::MatrixXcd::Identity(dim - 1, dim - 1);
    }
    full.bottomRightCorner(dim - 1, dim - 1) = block;
    full(0, 0) = 0.0;

    CouplingMatrix J(ctx, m);
    auto to_scalar = [&](std::complex<double> z) {
        if (!ctx->exact()) return Scalar::from_complex(ctx, z);
        // exact contexts get dyadic-rational approximations of the samples
        auto dy = [](double x) {
            return mpq_class(static_cast<long>(std::lround(x * 4096)), 4096L);
        };
        return Scalar::from_rational(ctx, dy(z.real())) +
               Scalar::from_rational(ctx, dy(z.imag())) * Scalar::root(ctx, ctx->L / 4);
    };
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            std::complex<double> zr = full(r, c), zc = full(c, r);
            std::complex<double> sym = (zr + std::conj(zc)) / 2.0;
            if (std::abs(sym) < 1e-12) continue;
            J.set(indices[r], indices[c], to_scalar(sym));
        }
    return J;
}

std::string coupling_to_json(const CouplingMatrix& J) {
    nlohmann::json j;
    j["N"] = J.ctx()->N;
    j["m"] = J.m();
    auto arr = nlohmann::json::array();
    for (const auto& [key, v] : J.entries()) {
        nlohmann::json e;
        std::vector<int> row(J.m()), col(J.m());
        for (int p = 1; p <= J.m(); ++p) {
            row[p - 1] = key_get(key.first, p);
            col[p - 1] = key_get(key.second, p);
        }
        auto z = v.to_complex();
        e["row"] = row;
        e["col"] = col;
        e["re"] = z.real();
        e["im"] = z.imag();
        arr.push_back(e);
    }
    j["entries"] = arr;
    return j.dump();
}

CouplingMatrix coupling_from_json(const CtxPtr& ctx, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("N").get<int>() != ctx->N)
        throw std::invalid_argument("coupling_from_json: N mismatch");
    int m = j.at("m").get<int>();
    CouplingMatrix J(ctx, m);
    for (const auto& e : j.at("entries")) {
        std::vector<int> row = e.at("row").get<std::vector<int>>();
        std::vector<int> col = e.at("col").get<std::vector<int>>();
        std::complex<double> z(e.at("re").get<double>(), e.value("im", 0.0));
        Scalar v = ctx->exact()
                       ? Scalar::from_rational(ctx, mpq_class(static_cast<long>(
                                                        std::lround(z.real() * 4096)),
                                                    4096L)) +
                             Scalar::from_rational(ctx, mpq_class(static_cast<long>(std::lround(
                                                            z.imag() * 4096)),
                                                        4096L)) *
                                 Scalar::root(ctx, ctx->L / 4)
                       : Scalar::from_complex(ctx, z);
        J.set(row, col, v);
    }
    return J;
}

}  // namespace pf

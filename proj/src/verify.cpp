#include "parafermion/verify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "parafermion/braid.hpp"
#include "parafermion/pauli.hpp"
#include "parafermion/rp.hpp"
#include "parafermion/tangle.hpp"

namespace pf {

namespace {

std::string param_str(const CtxPtr& ctx, int m = -1) {
    std::ostringstream os;
    os << "N=" << ctx->N;
    if (ctx->N % 2 == 0) os << " sign=" << (ctx->zeta_sign > 0 ? "+1" : "-1");
    if (m >= 0) os << " m=" << m;
    os << " mode=" << (ctx->exact() ? "exact" : "approx");
    return os.str();
}

double pf_dev(const PFElement& a, const PFElement& b) {
    double d = 0.0;
    PFElement diff = a - b;
    for (const auto& [k, c] : diff.terms()) d = std::max(d, std::abs(c.to_complex()));
    return d;
}

double op_dev(const DenseOperator& a, const DenseOperator& b) {
    double d = 0.0;
    for (long i = 0; i < a.dim(); ++i)
        for (long j = 0; j < a.dim(); ++j)
            d = std::max(d, std::abs((a.at(i, j) - b.at(i, j)).to_complex()));
    return d;
}

struct Sink {
    std::vector<VerifyRecord>& recs;
    void pf_eq(const std::string& id, const std::string& params, const PFElement& a,
               const PFElement& b, const std::string& note = "") {
        recs.push_back({id, params, a.eq(b), pf_dev(a, b), note});
    }
    void op_eq(const std::string& id, const std::string& params, const DenseOperator& a,
               const DenseOperator& b, const std::string& note = "") {
        recs.push_back({id, params, a.eq(b), op_dev(a, b), note});
    }
    void scalar_eq(const std::string& id, const std::string& params, const Scalar& a,
                   const Scalar& b, const std::string& note = "") {
        recs.push_back({id, params, a.eq(b), std::abs((a - b).to_complex()), note});
    }
    void flag(const std::string& id, const std::string& params, bool pass, double dev = 0.0,
              const std::string& note = "") {
        recs.push_back({id, params, pass, dev, note});
    }
};

PFElement basis_mono(const CtxPtr& ctx, int m, const std::vector<int>& I) {
    return PFElement::monomial(ctx, m, I, Scalar::one(ctx));
}

// ---------------------------------------------------------------------------

void suite_pf(const CtxPtr& ctx, int m_max, Sink& sink) {
    int N = ctx->N;
    for (int m = 1; m <= m_max; ++m) {
        std::string ps = param_str(ctx, m);
        bool power_ok = true, comm_ok = true;
        for (int i = 1; i <= m; ++i) {
            PFElement ci = PFElement::generator(ctx, m, i);
            PFElement pw = PFElement::identity(ctx, m);
            for (int k = 0; k < N; ++k) pw = pw * ci;
            if (!pw.eq(PFElement::identity(ctx, m))) power_ok = false;
            for (int j = i + 1; j <= m; ++j) {
                PFElement cj = PFElement::generator(ctx, m, j);
                if (!(ci * cj).eq((cj * ci).scaled(ctx->q()))) comm_ok = false;
            }
        }
        sink.flag("generator_order", ps, power_ok);
        sink.flag("q_commutation", ps, comm_ok);

        bool star_ok = true, trace_ok = true, grade_ok = true, jw_ok = true;
        int mm = std::min(m, 2);
        auto indices = all_multi_indices(N, mm);
        long dim = 1;
        for (int p = 0; p < mm; ++p) dim *= N;
        for (const auto& I : indices) {
            PFElement a = basis_mono(ctx, mm, I);
            if (!a.star().star().eq(a)) star_ok = false;
            if (!a.jw().adjoint().eq(a.star().jw())) jw_ok = false;
            if (!(a.jw().trace() * ctx->rational(1, dim)).eq(a.markov_trace())) trace_ok = false;
            for (const auto& J : indices) {
                PFElement b = basis_mono(ctx, mm, J);
                if (!(a * b).star().eq(b.star() * a.star())) star_ok = false;
                if (!(a * b).jw().eq(a.jw() * b.jw())) jw_ok = false;
                long ga = *a.grade(), gb = *b.grade(), gab = *(a * b).grade();
                if ((ga + gb) % N != gab) grade_ok = false;
                if (!(a * b).markov_trace().eq((b * a).markov_trace())) trace_ok = false;
            }
        }
        sink.flag("star_involution", ps, star_ok);
        sink.flag("markov_trace_tracial", ps, trace_ok);
        sink.flag("grading_additive", ps, grade_ok);
        sink.flag("jw_homomorphism_trace_faithful", ps, jw_ok);

        std::mt19937_64 rng(17 + N + m);
        bool pos_ok = true;
        std::uniform_int_distribution<int> exp_d(0, N - 1);
        std::uniform_int_distribution<long> coeff_d(-3, 3);
        for (int t = 0; t < 6; ++t) {
            PFElement x = PFElement::zero(ctx, m);
            for (int term = 0; term < 4; ++term) {
                std::vector<int> I(m);
                for (auto& v : I) v = exp_d(rng);
                Scalar c = ctx->integer(coeff_d(rng)) + ctx->zeta() * ctx->integer(coeff_d(rng));
                x = x + PFElement::monomial(ctx, m, I, c);
            }
            Scalar n2 = (x.star() * x).markov_trace();
            if (!n2.conj().eq(n2)) pos_ok = false;
            if (n2.to_complex().real() < -1e-12) pos_ok = false;
            if (!x.is_zero() && n2.is_zero()) pos_ok = false;
        }
        sink.flag("trace_form_positive", ps, pos_ok);
    }
}

void suite_tl(const CtxPtr& ctx, int m_max, Sink& sink) {
    int N = ctx->N;
    int m = std::max(3, std::min(m_max, 4));
    std::string ps = param_str(ctx, m);
    Scalar rootN = ctx->sqrt_n();
    bool idem = true, selfadj = true, exch = true, comm = true, joint = true;
    for (int i = 1; i <= m - 1; ++i) {
        PFElement e = jones_projection(ctx, m, i);
        if (!(e * e).eq(e.scaled(rootN))) idem = false;
        if (!e.star().eq(e)) selfadj = false;
    }
    for (int i = 1; i <= m - 2; ++i) {
        PFElement e1 = jones_projection(ctx, m, i), e2 = jones_projection(ctx, m, i + 1);
        if (!(e1 * e2 * e1).eq(e1) || !(e2 * e1 * e2).eq(e2)) exch = false;
    }
    if (m >= 4) {
        PFElement e1 = jones_projection(ctx, m, 1), e3 = jones_projection(ctx, m, 3);
        if (!(e1 * e3).eq(e3 * e1)) comm = false;
    }
    PFElement e1 = jones_projection(ctx, m, 1);
    for (int k = 0; k < N; ++k) {
        Scalar ph = ctx->zeta_pow(-static_cast<long>(k) * k);
        if (!(e1 * PFElement::generator(ctx, m, 1, k))
                 .eq((e1 * PFElement::generator(ctx, m, 2, k)).scaled(ph)))
            joint = false;
        if (!(PFElement::generator(ctx, m, 1, k) * e1)
                 .eq((PFElement::generator(ctx, m, 2, k) * e1).scaled(ph.conj())))
            joint = false;
    }
    sink.flag("tl_idempotent_scaled", ps, idem);
    sink.flag("tl_self_adjoint", ps, selfadj);
    sink.flag("tl_exchange_relation", ps, exch);
    sink.flag("tl_distant_commute", ps, comm);
    sink.flag("tl_generator_joint_relation", ps, joint);
}

void suite_sft(const CtxPtr& ctx, int m_max, Sink& sink) {
    int N = ctx->N;
    std::string ps1 = param_str(ctx, 1);
    sink.pf_eq("sft_generator_phase", ps1, sft(PFElement::generator(ctx, 1, 1)),
               PFElement::generator(ctx, 1, 1).scaled(ctx->zeta()));
    sink.pf_eq("sft_identity_fixed", ps1, sft(PFElement::identity(ctx, 1)),
               PFElement::identity(ctx, 1));
    bool rot_ok = true, inv_ok = true;
    for (int m = 1; m <= std::min(2, m_max); ++m) {
        for (const auto& I : all_multi_indices(N, m)) {
            PFElement a = basis_mono(ctx, m, I);
            PFElement y = a;
            for (int r = 0; r < 2 * m; ++r) y = sft(y);
            long g = *a.grade();
            if (!y.eq(a.scaled(ctx->q_pow(g * g)))) rot_ok = false;
            if (!sft_inverse(sft(a)).eq(a)) inv_ok = false;
        }
    }
    sink.flag("sft_full_rotation_grade_phase", param_str(ctx, 2), rot_ok);
    sink.flag("sft_invertible", param_str(ctx, 2), inv_ok);

    auto u = [&](int i) {
        PFElement ci = PFElement::generator(ctx, 1, 1, i);
        return theta_twisted_pair(ci, ci);
    };
    bool dft_ok = true;
    double dft_dev = 0.0;
    Scalar inv_rootN = ctx->sqrt_n().inverse();
    for (int i = 0; i < N; ++i) {
        PFElement rhs = PFElement::zero(ctx, 2);
        for (int j = 0; j < N; ++j)
            rhs = rhs + u(j).scaled(inv_rootN * ctx->q_pow(static_cast<long>(i) * j));
        PFElement lhs = sft(u(i));
        if (!lhs.eq(rhs)) dft_ok = false;
        dft_dev = std::max(dft_dev, pf_dev(lhs, rhs));
    }
    sink.flag("sft_is_dft_on_zero_graded_two_boxes", param_str(ctx, 2), dft_ok, dft_dev);

    PFElement esum = PFElement::zero(ctx, 2);
    for (int i = 0; i < N; ++i) esum = esum + u(i);
    sink.pf_eq("tl_box_is_twisted_pair_sum", param_str(ctx, 2), jones_projection(ctx, 2, 1),
               esum.scaled(inv_rootN));
    sink.pf_eq("sft_of_identity_two_box", param_str(ctx, 2), sft(PFElement::identity(ctx, 2)),
               jones_projection(ctx, 2, 1));

    auto V = matrix_units(ctx, MatrixUnitKind::two_box);
    auto v = [&](int i, int j) { return V[i * N + j]; };
    bool unit_ok = true, star_ok = true;
    PFElement diag = PFElement::zero(ctx, 2);
    for (int i = 0; i < N; ++i) {
        diag = diag + v(i, i);
        for (int j = 0; j < N; ++j) {
            if (!v(i, j).star().eq(v(j, i))) star_ok = false;
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    PFElement p = v(i, j) * v(k, l);
                    if (j == k ? !p.eq(v(i, l)) : !p.is_zero()) unit_ok = false;
                }
        }
    }
    sink.flag("matrix_unit_products", param_str(ctx, 2), unit_ok);
    sink.flag("matrix_unit_adjoint", param_str(ctx, 2), star_ok);
    sink.pf_eq("matrix_unit_resolution_of_identity", param_str(ctx, 2), diag,
               PFElement::identity(ctx, 2));
    auto Q = matrix_units(ctx, MatrixUnitKind::Q);
    bool q_ok = true;
    PFElement qsum = PFElement::zero(ctx, 1);
    for (int i = 0; i < N; ++i) {
        qsum = qsum + Q[i];
        for (int j = 0; j < N; ++j) {
            PFElement p = Q[i] * Q[j];
            if (i == j ? !p.eq(Q[i]) : !p.is_zero()) q_ok = false;
        }
    }
    sink.flag("minimal_projection_family", param_str(ctx, 1),
              q_ok && qsum.eq(PFElement::identity(ctx, 1)));
}

void suite_pauli(const CtxPtr& ctx, Sink& sink) {
    int N = ctx->N;
    std::string ps = param_str(ctx);
    for (auto version : {PauliVersion::q, PauliVersion::q_inv}) {
        std::string vs = ps + (version == PauliVersion::q ? " version=q" : " version=q_inv");
        auto [X, Y, Z] = pauli_xyz(ctx, version);
        DenseOperator id = DenseOperator::identity(ctx, N);
        bool orders = X.pow(N).eq(id) && Y.pow(N).eq(id) && Z.pow(N).eq(id);
        Scalar qq = version == PauliVersion::q ? ctx->q() : ctx->q_pow(-1);
        bool comm = (X * Y).eq((Y * X).scaled(qq)) && (Y * Z).eq((Z * Y).scaled(qq)) &&
                    (Z * X).eq((X * Z).scaled(qq));
        Scalar zz = version == PauliVersion::q ? ctx->zeta() : ctx->zeta_pow(-1);
        DenseOperator zid = id.scaled(zz);
        bool triple = (X * Y * Z).eq(zid) && (Y * Z * X).eq(zid) && (Z * X * Y).eq(zid);
        bool unitary = (X * X.adjoint()).eq(id) && (Y * Y.adjoint()).eq(id) &&
                       (Z * Z.adjoint()).eq(id);
        sink.flag("pauli_orders", vs, orders);
        sink.flag("pauli_commutation", vs, comm);
        sink.flag("pauli_triple_product", vs, triple);
        sink.flag("pauli_unitary", vs, unitary);

        auto [qi, qj, qk] = quaternions(ctx, version);
        DenseOperator mid = id.scaled(-Scalar::one(ctx));
        bool qn = qi.pow(N).eq(mid) && qj.pow(N).eq(mid) && qk.pow(N).eq(mid);
        Scalar qc = version == PauliVersion::q ? ctx->q_pow(-1) : ctx->q();
        bool qcomm = (qi * qj).eq((qj * qi).scaled(qc)) && (qj * qk).eq((qk * qj).scaled(qc)) &&
                     (qk * qi).eq((qi * qk).scaled(qc));
        bool qtriple = (qi * qj * qk).eq(mid);
        sink.flag("quaternion_orders", vs, qn);
        sink.flag("quaternion_commutation", vs, qcomm);
        sink.flag("quaternion_triple", vs, qtriple);
    }
    if (N == 2 && ctx->zeta_sign > 0) {
        auto [X, Y, Z] = pauli_xyz(ctx, PauliVersion::q);
        bool sx = X.at(0, 1).eq(ctx->one()) && X.at(1, 0).eq(ctx->one()) &&
                  X.at(0, 0).is_zero() && X.at(1, 1).is_zero();
        Scalar i_unit = ctx->root(ctx->L / 4);
        bool sy = Y.at(0, 1).eq(-i_unit) && Y.at(1, 0).eq(i_unit) && Y.at(0, 0).is_zero() &&
                  Y.at(1, 1).is_zero();
        bool sz = Z.at(0, 0).eq(ctx->one()) && Z.at(1, 1).eq(-ctx->one()) &&
                  Z.at(0, 1).is_zero() && Z.at(1, 0).is_zero();
        sink.flag("pauli_standard_spin_matrices", ps, sx && sy && sz);
    }
}

void suite_quadratic(const CtxPtr& ctx, Sink& sink) {
    int N = ctx->N;
    long dim4 = static_cast<long>(N) * N * N * N;
    DenseOperator id = DenseOperator::identity(ctx, dim4);
    for (auto tag : {QuadraticTag::q1, QuadraticTag::qinv4, QuadraticTag::q4, QuadraticTag::qinv1}) {
        auto model = quadratic_model(ctx, tag);
        std::string ps = param_str(ctx) + " model=";
        switch (tag) {
            case QuadraticTag::q1: ps += "(q,1)"; break;
            case QuadraticTag::qinv4: ps += "(q^-1,4)"; break;
            case QuadraticTag::q4: ps += "(q,4)"; break;
            case QuadraticTag::qinv1: ps += "(q^-1,1)"; break;
        }
        Scalar qq = model.version == PauliVersion::q ? ctx->q() : ctx->q_pow(-1);
        bool orders = model.X.pow(N).eq(id) && model.Y.pow(N).eq(id) && model.Z.pow(N).eq(id);
        bool comm = (model.X * model.Y).eq((model.Y * model.X).scaled(qq)) &&
                    (model.Y * model.Z).eq((model.Z * model.Y).scaled(qq)) &&
                    (model.Z * model.X).eq((model.X * model.Z).scaled(qq));
        DenseOperator gpow = model.gamma_exp == 1 ? model.gamma : model.gamma.adjoint();
        DenseOperator rhs = gpow.scaled(ctx->zeta_pow(model.zeta_exp));
        bool triple = (model.X * model.Y * model.Z).eq(rhs) &&
                      (model.Y * model.Z * model.X).eq(rhs) &&
                      (model.Z * model.X * model.Y).eq(rhs);
        bool central = (model.gamma * model.X).eq(model.X * model.gamma) &&
                       (model.gamma * model.Y).eq(model.Y * model.gamma) &&
                       (model.gamma * model.Z).eq(model.Z * model.gamma);
        sink.flag("quadratic_orders", ps, orders);
        sink.flag("quadratic_commutation", ps, comm);
        sink.flag("quadratic_triple_vs_grading", ps, triple);
        sink.flag("grading_operator_central", ps, central);

        DenseOperator p0 = eigen_projection_qpower(model.gamma, 0);
        sink.flag("grading_eigenspace_dimension", ps, p0.trace().eq(ctx->integer(dim4 / N)));
        DenseOperator restr = p0 * model.X * model.Y * model.Z * p0;
        sink.flag("quadratic_triple_on_eigenspace", ps,
                  restr.eq(p0.scaled(ctx->zeta_pow(model.zeta_exp))));
    }
}

void suite_braid(const CtxPtr& ctx_in, Sink& sink) {
    CtxPtr ctx = ctx_in;
    std::string note;
    try {
        ctx->omega_sqrt();
    } catch (const unrepresentable_error&) {
        ctx = make_context(ctx_in->N, ctx_in->zeta_sign, Mode::approx, ctx_in->tol);
        note = "fallback=approx (omega square root not representable at this order)";
    }
    auto rep = verify_braid_axioms(ctx);
    for (const auto& item : rep.items)
        sink.flag("braid_" + item.name, param_str(ctx), item.pass, 0.0, note);
    DenseOperator b1 = braid_element(ctx, 3, 1, true).jw();
    DenseOperator b2 = braid_element(ctx, 3, 2, true).jw();
    sink.op_eq("braid_yang_baxter_matrix", param_str(ctx, 3), b1 * b2 * b1, b2 * b1 * b2, note);
}

void suite_clifford(const CtxPtr& ctx, Sink& sink, bool enumerate) {
    int N = ctx->N;
    std::string ps = param_str(ctx);
    auto [X, Y, Z] = pauli_xyz(ctx, PauliVersion::q);
    auto [F, G] = fourier_gaussian(ctx);
    DenseOperator id = DenseOperator::identity(ctx, N);
    DenseOperator Fi = F.adjoint(), Gi = G.adjoint();
    sink.op_eq("clifford_FXFinv_is_Z", ps, F * X * Fi, Z);
    sink.op_eq("clifford_FZFinv_is_Xinv", ps, F * Z * Fi, X.adjoint());
    sink.op_eq("clifford_GXGinv_is_zetaXZ", ps, G * X * Gi, (X * Z).scaled(ctx->zeta()));
    sink.op_eq("clifford_GXGinv_is_Yinv", ps, G * X * Gi, Y.adjoint());
    sink.op_eq("clifford_GZGinv_is_Z", ps, G * Z * Gi, Z);
    sink.op_eq("clifford_F4", ps, F.pow(4), id);
    if (N % 2 == 1) {
        sink.op_eq("clifford_gaussian_power_N", ps, G.pow(N), id);
    } else {
        // for even N the Gaussian has order 2N: G^N = diag((-1)^k) = Z^{N/2}
        sink.op_eq("clifford_gaussian_power_N", ps, G.pow(N), Z.pow(N / 2),
                   "even N: G^N = Z^{N/2}, G^{2N} = 1");
        sink.op_eq("clifford_gaussian_power_2N", ps, G.pow(2 * N), id);
    }
    sink.op_eq("clifford_FG_cubed_is_omega", ps, (F * G).pow(3), id.scaled(ctx->omega()));
    sink.op_eq("clifford_F2G_commute", ps, F.pow(2) * G, G * F.pow(2));
    if (enumerate) {
        auto repc = clifford_enumerate(ctx, 100000);
        long expect = static_cast<long>(N) * N * repc.sl2_order;
        sink.flag("clifford_ad_actions", ps, repc.adF_is_S && repc.adG_is_T);
        std::ostringstream os;
        os << "order=" << repc.order << " expected=" << expect;
        sink.flag("clifford_group_order", ps, repc.closed && repc.order == expect, 0.0, os.str());
    }
}

// ---------------------------------------------------------------------------

void suite_rp(const CtxPtr& exact_ctx, int m, int ensemble, uint64_t seed, double tol,
              Sink& sink) {
    CtxPtr ctx = make_context(exact_ctx->N, exact_ctx->zeta_sign, Mode::approx, 1e-9);
    int N = ctx->N;
    std::string ps = param_str(ctx, m);
    std::mt19937_64 rng(seed + 1000 * N + m);
    std::vector<double> betas = {0.0, 0.25, 0.5, 1.0, 2.0};

    std::vector<CouplingMatrix> ens;
    for (int i = 0; i < ensemble; ++i)
        ens.push_back(random_coupling(ctx, m, rng, (i % 2 == 0) ? +1 : -1));
    auto eq_rep = theorem_equivalence(ens, betas, tol);
    std::ostringstream os;
    os << "ensemble=" << eq_rep.total << " mismatches=" << eq_rep.mismatches.size();
    sink.flag("rp_iff_crossing_block_psd", ps, eq_rep.mismatches.empty(), 0.0, os.str());

    std::vector<PFElement> basis;
    for (const auto& I : all_multi_indices(N, m)) basis.push_back(basis_mono(ctx, m, I));
    double worst0 = 0.0;
    for (int i = 0; i < 3 && i < static_cast<int>(ens.size()); ++i) {
        auto r = rp_check(ens[i], {0.0}, basis, tol);
        worst0 = std::min(worst0, r.minimum);
    }
    sink.flag("rp_beta_zero_nonnegative", ps, worst0 >= -tol, std::abs(std::min(0.0, worst0)));

    {
        CouplingMatrix J = ens[0];
        double r = 0.7;
        CouplingMatrix J2 = J;
        std::vector<int> zero(m, 0);
        J2.set(zero, zero, J.get(zero, zero) - Scalar::from_complex(ctx, {r, 0.0}));
        auto base = rp_check(J, betas, basis, tol);
        auto shifted = rp_check(J2, betas, basis, tol);
        double dev = 0.0;
        for (size_t k = 0; k < base.entries.size(); ++k) {
            double expect = base.entries[k].value * std::exp(-base.entries[k].beta * r);
            dev = std::max(dev, std::abs(expect - shifted.entries[k].value));
        }
        sink.flag("rp_identity_shift_covariance", ps, dev <= 1e-6, dev);
    }

    {
        CouplingMatrix J = ens[0];
        Eigen::MatrixXcd g = quantized_gram(J, 0.5, basis, -1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((g + g.adjoint()) / 2.0);
        double mn = es.eigenvalues().minCoeff();
        sink.flag("quantized_gram_psd", ps, mn >= -tol, std::abs(std::min(0.0, mn)));
        Eigen::MatrixXcd gk = quantized_gram(J, 0.5, basis, 24);
        double dev = (g - gk).cwiseAbs().maxCoeff();
        sink.flag("quantized_gram_series_converges", ps, dev <= 1e-6, dev);
        double cross = 0.0;
        for (size_t a = 0; a < basis.size(); ++a)
            for (size_t b = 0; b < basis.size(); ++b)
                if (*basis[a].grade() != *basis[b].grade())
                    cross = std::max(cross, std::abs(g(a, b)));
        sink.flag("quantized_gram_cross_grade_vanishes", ps, cross <= 1e-9, cross);
    }

    {
        bool iff_ok = true;
        for (int i = 0; i < 6; ++i) {
            CouplingMatrix Jb = random_coupling(ctx, m, rng, (i % 2 == 0) ? +1 : -1);
            std::vector<int> zero(m, 0);
            for (const auto& I : all_multi_indices(N, m)) {
                Jb.set(zero, I, Scalar::zero(ctx));
                Jb.set(I, zero, Scalar::zero(ctx));
            }
            bool psd = j0_psd(Jb, tol);
            Eigen::MatrixXcd sm = sft_matrix(Jb).to_eigen();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((sm + sm.adjoint()) / 2.0);
            bool sft_psd = es.eigenvalues().minCoeff() >= -tol * std::sqrt(N);
            auto eqr = theorem_equivalence({Jb}, betas, tol);
            bool rp = eqr.mismatches.empty() ? psd : !psd;
            if (psd != sft_psd || rp != psd) iff_ok = false;
        }
        sink.flag("sft_matrix_psd_iff_rp_borderless", ps, iff_ok);
    }
}

void suite_rp_exact_fm(const CtxPtr& ctx, int m, uint64_t seed, Sink& sink) {
    int N = ctx->N;
    std::string ps = param_str(ctx, m);
    auto indices = all_multi_indices(N, m);
    long dim = static_cast<long>(indices.size());
    PFElement v0 = vacuum_projection(ctx, m);
    auto bunit = [&](const std::vector<int>& A, const std::vector<int>& B) {
        PFElement ca = basis_mono(ctx, m, A).embed(2 * m, 0);
        PFElement cb = basis_mono(ctx, m, B).embed(2 * m, 0);
        return ca * v0 * cb.star();
    };
    auto neg = [&](const std::vector<int>& A) {
        std::vector<int> out(A.size());
        for (size_t p = 0; p < A.size(); ++p) out[p] = (N - A[p]) % N;
        return out;
    };
    mpq_class half_pow(1);
    for (int p = 0; p < m / 2; ++p) half_pow *= N;
    Scalar scale = Scalar::from_rational(ctx, half_pow);
    if (m % 2 == 1) scale = scale * ctx->sqrt_n();
    Scalar inv_scale = scale.inverse();  // N^{-m/2}

    bool bridge_ok = true;
    std::vector<PFElement> units(dim * dim, PFElement::zero(ctx, 2 * m));
    std::vector<Scalar> gauge(dim * dim, Scalar::one(ctx));
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            PFElement u = theta_twisted_pair(basis_mono(ctx, m, indices[r]),
                                             basis_mono(ctx, m, indices[c]));
            for (int k = 0; k < m; ++k) u = sft_inverse(u);
            u = u.scaled(inv_scale);
            PFElement b = bunit(neg(indices[r]), neg(indices[c]));
            units[r * dim + c] = b;
            auto it = u.terms().begin();
            if (it == u.terms().end() || !b.terms().count(it->first)) {
                bridge_ok = false;
                continue;
            }
            Scalar phi = it->second * b.terms().at(it->first).inverse();
            if (!u.eq(b.scaled(phi)) || !(phi * phi.conj()).eq(Scalar::one(ctx))) bridge_ok = false;
            gauge[r * dim + c] = phi;
        }
    sink.flag("fm_rotation_route_matches_units", ps, bridge_ok);

    std::mt19937_64 rng(seed + 17 * N + m);
    CouplingMatrix J = random_coupling(ctx, m, rng, 0);
    PFElement w = -build_hamiltonian(J);
    for (int k = 0; k < m; ++k) w = sft_inverse(w);
    DenseOperator closed_form = sft_matrix(J);
    bool oracle_ok = true;
    mpq_class npow(1);
    for (int p = 0; p < m; ++p) npow *= N;
    Scalar npow_s = Scalar::from_rational(ctx, npow);
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            // coefficient of the (r,c) rotated pair in w via the dual trace
            // pairing of the honest units, gauge unwound
            Scalar coeff = (w * units[c * dim + r]).markov_trace() * npow_s;
            Scalar expect = closed_form.at(r, c) * gauge[r * dim + c];
            if (!coeff.eq(expect)) oracle_ok = false;
        }
    sink.flag("fm_closed_form_vs_sft_oracle", ps, oracle_ok);
}

// ---------------------------------------------------------------------------

std::string winding_gadget(int p, int power, int winding) {
    // winding 0: the plain label.  winding +-1: the label rides on the loop
    // lobe of a curl of that sign (below a positive crossing, above a
    // negative one), followed by the cancelling bare curl; the net effect is
    // the rotation phase q^{winding * power^2} on the plain label.
    std::string out;
    std::string P = std::to_string(p), P1 = std::to_string(p + 1);
    std::string lbl = "c^" + std::to_string(power) + "@" + P1 + "\n";
    if (winding == 0) return "c^" + std::to_string(power) + "@" + P + "\n";
    if (winding != 1 && winding != -1)
        throw std::invalid_argument("winding gadget supports windings in {-1,0,1}");
    out += "cup@" + P1 + "\n";
    if (winding > 0) out += lbl + "pos@" + P + "\n";
    else out += "neg@" + P + "\n" + lbl;
    out += "cap@" + P1 + "\n";
    out += "cup@" + P1 + "\n";
    out += (winding > 0 ? "neg@" : "pos@") + P + "\n";
    out += "cap@" + P1 + "\n";
    return out;
}

void suite_tangle(const CtxPtr& ctx, Sink& sink) {
    int N = ctx->N;
    std::string ps = param_str(ctx);
    auto val = [&](const std::string& body) {
        return evaluate_tangle(parse_tangle(ctx, body)).scalar;
    };

    sink.scalar_eq("tangle_empty_diagram", ps, evaluate_tangle(parse_tangle(ctx, "")).scalar,
                   Scalar::one(ctx));
    sink.scalar_eq("tangle_plain_circle", ps, val("cup@1\ncap@1"), ctx->sqrt_n());
    bool labelled_zero = true;
    for (int k = 1; k < N; ++k)
        if (!val("cup@1\nc^" + std::to_string(k) + "@1\ncap@1").is_zero()) labelled_zero = false;
    sink.flag("tangle_graded_circle_vanishes", ps, labelled_zero);
    sink.scalar_eq("tangle_full_power_circle", ps,
                   val("cup@1\nc^" + std::to_string(N) + "@1\ncap@1"), ctx->sqrt_n());

    // corpus: evaluator versus the loop bookkeeping oracle
    long corpus = 0, corpus_bad = 0;
    std::vector<std::vector<LoopLabel>> configs;
    std::vector<LoopLabel> cur;
    std::function<void(int, int)> gen = [&](int remaining, int windings_left) {
        configs.push_back(cur);
        if (remaining == 0) return;
        for (int leg = 1; leg <= 2; ++leg)
            for (int power = 1; power < N; ++power)
                for (int w = -1; w <= 1; ++w) {
                    if (w != 0 && windings_left == 0) continue;
                    cur.push_back({leg, power, w});
                    gen(remaining - 1, windings_left - (w != 0 ? 1 : 0));
                    cur.pop_back();
                }
    };
    gen(3, 2);
    std::function<void(int)> gen4 = [&](int remaining) {
        if (remaining == 0) {
            configs.push_back(cur);
            return;
        }
        for (int leg = 1; leg <= 2; ++leg)
            for (int power = 1; power < N; ++power) {
                cur.push_back({leg, power, 0});
                gen4(remaining - 1);
                cur.pop_back();
            }
    };
    cur.clear();
    gen4(4);
    for (const auto& cfg : configs) {
        std::string body = "cup@1\n";
        for (const auto& l : cfg) body += winding_gadget(l.leg, l.power, l.winding);
        body += "cap@1";
        Scalar ev = val(body);
        Scalar oracle = closed_loop_oracle(ctx, cfg);
        ++corpus;
        if (!ev.eq(oracle)) ++corpus_bad;
    }
    std::ostringstream os;
    os << "corpus=" << corpus << " disagreements=" << corpus_bad;
    sink.flag("tangle_evaluator_matches_loop_oracle", ps, corpus_bad == 0, 0.0, os.str());

    // isotopy pairs: distinct slice words for the same diagram
    std::string k1 = std::to_string(N - 1);
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"in=1\ncup@2\ncap@1", "in=1"},
        {"in=1\ncup@1\ncap@2", "in=1"},
        {"cup@1\ncup@3\nc^1@1\nc^" + k1 + "@2\ncap@3\ncap@1",
         "cup@1\nc^1@1\nc^" + k1 + "@2\ncup@3\ncap@3\ncap@1"},
        {"cup@1\npos@1\nneg@1\ncap@1", "cup@1\ncap@1"},
        {"cup@1\nneg@1\npos@1\ncap@1", "cup@1\ncap@1"},
        {"cup@1\ncup@2\npos@1\ncap@2\ncap@1", "cup@1\ncup@3\npos@2\ncap@3\ncap@1"},
        {"cup@1\ncup@2\nneg@1\ncap@2\ncap@1", "cup@1\ncup@3\nneg@2\ncap@3\ncap@1"},
        {"cup@1\nneg@1\ncap@1", "cup@1\ncup@2\npos@1\ncap@2\ncap@1"},
        {"cup@1\npos@1\ncap@1", "cup@1\ncup@2\nneg@1\ncap@2\ncap@1"},
        {"cup@1\nc^1@1\npos@1\nc^" + k1 + "@1\ncap@1",
         "cup@1\npos@1\nc^1@2\nc^" + k1 + "@1\ncap@1"},
        {"cup@1\nc^1@1\nc^1@1\nc^" + std::to_string((2 * (N - 1)) % N) + "@1\ncap@1",
         "cup@1\nc^2@1\nc^" + std::to_string((2 * (N - 1)) % N) + "@1\ncap@1"},
        {"cup@1\ncup@1\ncap@1\ncap@1", "cup@1\ncup@3\ncap@3\ncap@1"},
        {"cup@1\ncup@3\npos@2\npos@1\npos@2\nc^1@1\nc^" + k1 + "@3\ncap@3\ncap@1",
         "cup@1\ncup@3\npos@1\npos@2\npos@1\nc^1@1\nc^" + k1 + "@3\ncap@3\ncap@1"},
        {"cup@1\ncup@2\npos@2\nneg@2\nc^1@2\ncap@2\nc^" + k1 + "@1\ncap@1",
         "cup@1\ncup@2\nc^1@2\ncap@2\nc^" + k1 + "@1\ncap@1"},
        {"cup@1\ncup@2\ncap@2\ncap@1", "cup@1\ncap@1\ncup@1\ncap@1"},
        {"cup@1\ncup@2\ncap@1\ncap@1", "cup@1\ncap@1"},
        {"in=1\ncup@2\ncap@1\ncup@2\ncap@1", "in=1"},
        {"cup@1\npos@1\npos@1\nneg@1\ncap@1", "cup@1\npos@1\ncap@1"},
        {"cup@1\ncup@3\ncap@1\ncap@1", "cup@1\ncup@1\ncap@3\ncap@1"},
        {"cup@1\ncup@3\nneg@2\npos@2\ncap@3\ncap@1", "cup@1\ncup@3\ncap@3\ncap@1"},
        {"cup@1\nc^" + std::to_string(N) + "@1\ncap@1", "cup@1\ncap@1"},
    };
    long pair_bad = 0, pair_count = 0;
    for (const auto& [wa, wb] : pairs) {
        TangleWord A = parse_tangle(ctx, wa), B = parse_tangle(ctx, wb);
        auto va = evaluate_tangle(A), vb = evaluate_tangle(B);
        ++pair_count;
        bool same = (A.in_strands == 0 && A.out_strands == 0) ? va.scalar.eq(vb.scalar)
                                                              : va.element.eq(vb.element);
        if (!same) ++pair_bad;
    }
    std::ostringstream os2;
    os2 << "pairs=" << pair_count << " disagreements=" << pair_bad;
    sink.flag("tangle_isotopy_pairs_agree", ps, pair_bad == 0, 0.0, os2.str());

    // inserting cup@p cap@p multiplies any word's value by sqrt(N)
    {
        bool ok = true;
        std::vector<std::string> bases = {
            "cup@1\ncap@1", "cup@1\nc^1@1\nc^" + k1 + "@1\ncap@1", "cup@1\npos@1\ncap@1"};
        for (const auto& base : bases) {
            TangleWord bw = parse_tangle(ctx, base);
            Scalar expect = evaluate_tangle(bw).scalar * ctx->sqrt_n();
            for (int cut = 0; cut <= static_cast<int>(bw.slices.size()); ++cut) {
                int curstr = 0;
                for (int s = 0; s < cut; ++s) {
                    if (bw.slices[s].kind == Slice::Kind::cup) curstr += 2;
                    if (bw.slices[s].kind == Slice::Kind::cap) curstr -= 2;
                }
                for (int p = 1; p <= curstr + 1; ++p) {
                    TangleWord mod = bw;
                    mod.slices.insert(mod.slices.begin() + cut, {Slice::Kind::cap, p, 0});
                    mod.slices.insert(mod.slices.begin() + cut, {Slice::Kind::cup, p, 0});
                    if (!evaluate_tangle(mod).scalar.eq(expect)) ok = false;
                }
            }
        }
        sink.flag("tangle_circle_insertion_multiplies_by_sqrtN", ps, ok);
    }

    // cap-then-cup equals the Temperley-Lieb box; labels act as generators
    {
        auto v = evaluate_tangle(parse_tangle(ctx, "in=2\ncap@1\ncup@1"));
        sink.pf_eq("tangle_capcup_is_tl_box", ps, v.element, jones_projection(ctx, 2, 1));
        bool lab_ok = true;
        for (int p = 1; p <= 2; ++p)
            for (int j = 1; j < N; ++j) {
                auto lv = evaluate_tangle(
                    parse_tangle(ctx, "in=2\nc^" + std::to_string(j) + "@" + std::to_string(p)));
                if (!lv.element.eq(PFElement::generator(ctx, 2, p, j))) lab_ok = false;
                if (!lv.op.eq(PFElement::generator(ctx, 2, p, j).jw())) lab_ok = false;
            }
        sink.flag("tangle_labels_are_generators", ps, lab_ok);
    }
}

}  // namespace

std::vector<VerifyRecord> run_suite(const SuiteOptions& opt) {
    std::vector<VerifyRecord> recs;
    Sink sink{recs};
    auto want = [&](const std::string& name) { return opt.suite == "all" || opt.suite == name; };

    for (int N = opt.n_min; N <= opt.n_max; ++N) {
        std::vector<int> signs = {+1};
        if (N % 2 == 0) signs = {+1, -1};
        if (N % 2 == 0 && opt.zeta_sign < 0) signs = {-1};
        for (int sign : signs) {
            CtxPtr ctx = make_context(N, sign, opt.mode, opt.tol);
            if (want("pf")) suite_pf(ctx, opt.m_max, sink);
            if (want("tl")) suite_tl(ctx, opt.m_max, sink);
            if (want("sft")) suite_sft(ctx, opt.m_max, sink);
            if (want("pauli")) suite_pauli(ctx, sink);
            if (want("quadratic") && N <= 3) suite_quadratic(ctx, sink);
            if (want("braid")) suite_braid(ctx, sink);
            if (want("clifford")) suite_clifford(ctx, sink, N <= 3);
            if (want("tangle")) suite_tangle(ctx, sink);
            if (want("rp")) {
                for (int m = 1; m <= std::min(opt.m_max, 2); ++m) {
                    if (m == 2 && N > 2) continue;  // desk-scale bound
                    suite_rp(ctx, m, opt.ensemble, opt.seed, 1e-8, sink);
                    if (opt.mode == Mode::exact) suite_rp_exact_fm(ctx, m, opt.seed, sink);
                }
            }
        }
    }
    return recs;
}

std::string records_to_json(const std::vector<VerifyRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["identity"] = r.identity;
        j["params"] = r.params;
        j["pass"] = r.pass;
        j["max_dev"] = r.max_dev;
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(j);
    }
    return arr.dump(2);
}

bool all_pass(const std::vector<VerifyRecord>& records) {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

}  // namespace pf

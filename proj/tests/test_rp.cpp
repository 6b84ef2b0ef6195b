#include <random>

#include "doctest.h"
#include "parafermion/rp.hpp"
#include "parafermion/verify.hpp"

using namespace pf;

TEST_CASE("coupling matrix validation") {
    auto ctx = make_context(3);
    CouplingMatrix J(ctx, 1);
    J.set({1}, {1}, ctx->one());
    CHECK_NOTHROW(J.validate());
    // non-Hermitian
    CouplingMatrix bad(ctx, 1);
    bad.set({1}, {1}, ctx->zeta());
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    // outside the zero-graded support
    CouplingMatrix graded(ctx, 1);
    graded.set({1}, {2}, ctx->one());
    CHECK_THROWS_AS(graded.validate(), std::invalid_argument);
}

TEST_CASE("hamiltonian construction") {
    auto ctx = make_context(2, +1);
    // J = diag(0, 1) at N=2, m=1 gives -H = zeta c1 c2
    CouplingMatrix J(ctx, 1);
    J.set({1}, {1}, ctx->one());
    PFElement h = build_hamiltonian(J);
    PFElement expect = -(PFElement::generator(ctx, 2, 1) * PFElement::generator(ctx, 2, 2))
                            .scaled(ctx->zeta());
    CHECK(h.eq(expect));
    CHECK(h.star().eq(h));  // Hermitian at N=2
    CHECK(*h.grade() == 0);
    // zero coupling
    CouplingMatrix J0(ctx, 1);
    CHECK(build_hamiltonian(J0).is_zero());
    // reflection invariance for random Hermitian couplings (N=3: the
    // element is Theta-invariant but in general not self-adjoint)
    auto c3 = make_context(3);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 4; ++t) {
        CouplingMatrix Jr = random_coupling(c3, 1, rng, 0);
        PFElement hr = build_hamiltonian(Jr);
        CHECK(reflect_theta(hr).eq(hr));
        CHECK(*hr.grade() == 0);
    }
}

TEST_CASE("sft matrix closed form") {
    auto ctx = make_context(2, +1);
    CouplingMatrix J(ctx, 1);
    CHECK(sft_matrix(J).is_zero());
    J.set({0}, {0}, ctx->one());
    DenseOperator m = sft_matrix(J);
    CHECK(m.at(0, 0).eq(ctx->sqrt_n()));
    CHECK(m.at(1, 1).is_zero());
}

TEST_CASE("crossing block positivity test") {
    auto ctx = make_context(2, +1, Mode::approx);
    CouplingMatrix J(ctx, 1);
    J.set({1}, {1}, Scalar::from_complex(ctx, {1.0, 0.0}));
    CHECK(j0_psd(J, 1e-8));
    CouplingMatrix Jneg(ctx, 1);
    Jneg.set({1}, {1}, Scalar::from_complex(ctx, {-1.0, 0.0}));
    CHECK(!j0_psd(Jneg, 1e-8));
    // PSD block with an arbitrary Hermitian border stays accepted
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        CouplingMatrix Jr = random_coupling(ctx, 2, rng, +1);
        CHECK(j0_psd(Jr, 1e-8));
    }
}

TEST_CASE("rp check on the named examples") {
    auto ctx = make_context(2, +1, Mode::approx);
    std::vector<PFElement> xs = {PFElement::identity(ctx, 1), PFElement::generator(ctx, 1, 1)};
    CouplingMatrix J(ctx, 1);
    J.set({1}, {1}, Scalar::from_complex(ctx, {1.0, 0.0}));
    auto rep = rp_check(J, {0.0, 0.5, 1.0}, xs, 1e-8);
    CHECK(rep.positive);
    CHECK(rep.minimum >= -1e-8);
    CouplingMatrix Jneg(ctx, 1);
    Jneg.set({1}, {1}, Scalar::from_complex(ctx, {-1.0, 0.0}));
    auto repn = rp_check(Jneg, {0.0, 0.5, 1.0}, xs, 1e-8);
    CHECK(!repn.positive);
    CHECK_THROWS_AS(rp_check(J, {-1.0}, xs, 1e-8), std::invalid_argument);
}

TEST_CASE("equivalence theorem on a small ensemble") {
    auto ctx = make_context(3, +1, Mode::approx);
    std::mt19937_64 rng(11);
    std::vector<CouplingMatrix> ens;
    for (int i = 0; i < 16; ++i) ens.push_back(random_coupling(ctx, 1, rng, i % 2 ? -1 : +1));
    auto rep = theorem_equivalence(ens, {0.0, 0.25, 0.5, 1.0, 2.0}, 1e-8);
    CHECK(rep.total == 16);
    CHECK(rep.mismatches.empty());
    // a forced negative eigenvalue in the crossing block breaks positivity
    CouplingMatrix bad = random_coupling(ctx, 1, rng, -1);
    CHECK(!j0_psd(bad, 1e-8));
    std::vector<PFElement> basis;
    for (const auto& I : all_multi_indices(3, 1))
        basis.push_back(PFElement::monomial(ctx, 1, I, Scalar::one(ctx)));
    bool some_negative = false;
    for (double beta : {0.25, 0.5, 1.0, 2.0}) {
        Eigen::MatrixXcd g = quantized_gram(bad, beta, basis, -1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((g + g.adjoint()) / 2.0);
        if (es.eigenvalues().minCoeff() < -1e-8) some_negative = true;
    }
    CHECK(some_negative);
}

TEST_CASE("quantized gram: psd at beta 0, truncation converges, graded blocks") {
    auto ctx = make_context(2, +1, Mode::approx);
    std::mt19937_64 rng(7);
    CouplingMatrix J = random_coupling(ctx, 1, rng, +1);
    std::vector<PFElement> basis = {PFElement::identity(ctx, 1), PFElement::generator(ctx, 1, 1)};
    Eigen::MatrixXcd g0 = quantized_gram(J, 0.0, basis, -1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((g0 + g0.adjoint()) / 2.0);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    Eigen::MatrixXcd ge = quantized_gram(J, 1.0, basis, -1);
    Eigen::MatrixXcd gk = quantized_gram(J, 1.0, basis, 20);
    CHECK((ge - gk).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(g0(0, 1)) < 1e-12);  // cross-grade vanishing
}

TEST_CASE("exact series moments stay nonnegative for borderless psd couplings") {
    auto ctx = make_context(3);
    std::mt19937_64 rng(23);
    CouplingMatrix J = random_coupling(ctx, 1, rng, +1);
    std::vector<int> zero(1, 0);
    for (const auto& I : all_multi_indices(3, 1)) {
        J.set(zero, I, Scalar::zero(ctx));
        J.set(I, zero, Scalar::zero(ctx));
    }
    for (const auto& I : all_multi_indices(3, 1)) {
        PFElement x = PFElement::monomial(ctx, 1, I, Scalar::one(ctx));
        for (const auto& s : rp_exact_moments(J, x, 8)) {
            auto z = s.to_complex();
            CHECK(std::abs(z.imag()) < 1e-12);
            CHECK(z.real() >= -1e-12);
        }
    }
}

TEST_CASE("coupling json round trip") {
    auto ctx = make_context(2, +1, Mode::approx);
    std::mt19937_64 rng(9);
    CouplingMatrix J = random_coupling(ctx, 1, rng, 0);
    CouplingMatrix J2 = coupling_from_json(ctx, coupling_to_json(J));
    for (const auto& I : all_multi_indices(2, 1))
        for (const auto& K : all_multi_indices(2, 1))
            CHECK(std::abs(J.get(I, K).to_complex() - J2.get(I, K).to_complex()) < 1e-9);
}

TEST_CASE("rp suite including the exact rotation bridge") {
    SuiteOptions opt;
    opt.suite = "rp";
    opt.n_min = 2;
    opt.n_max = 3;
    opt.ensemble = 16;
    auto recs = run_suite(opt);
    CHECK(!recs.empty());
    for (const auto& r : recs) {
        INFO(r.identity, " [", r.params, "] ", r.note);
        CHECK(r.pass);
    }
}

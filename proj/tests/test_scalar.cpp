#include <complex>

#include "doctest.h"
#include "parafermion/scalar.hpp"

using namespace pf;

namespace {

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) {
    return std::abs(a - b) <= tol;
}

}  // namespace

TEST_CASE("zeta choice per parity and sign") {
    // odd N: zeta = -e^{i pi/N}, zeta^N = 1
    auto c3 = make_context(3);
    CHECK(close(c3->zeta().to_complex(), -std::polar(1.0, M_PI / 3.0)));
    CHECK(c3->zeta_pow(3).eq(c3->one()));
    CHECK(c3->zeta_pow(9).eq(c3->one()));
    CHECK((c3->zeta() * c3->zeta()).eq(c3->q()));

    // N=2, sign +: zeta = i
    auto c2 = make_context(2, +1);
    CHECK(close(c2->zeta().to_complex(), {0.0, 1.0}));
    // N=4, sign -: zeta = -e^{i pi/4}, zeta^4 = -1
    auto c4 = make_context(4, -1);
    CHECK(close(c4->zeta().to_complex(), -std::polar(1.0, M_PI / 4.0)));
    CHECK(c4->zeta_pow(4).eq(-c4->one()));
    CHECK(c4->zeta_pow(16).eq(c4->one()));
}

TEST_CASE("make_context rejects bad N") {
    CHECK_THROWS_AS(make_context(1), std::invalid_argument);
}

TEST_CASE("sqrt_n squares to N and is positive") {
    for (int N = 2; N <= 12; ++N) {
        auto ctx = make_context(N);
        Scalar s = ctx->sqrt_n();
        CHECK((s * s).eq(ctx->integer(N)));
        CHECK(s.to_complex().real() > 0.0);
        CHECK(std::abs(s.to_complex().imag()) < 1e-9);
    }
}

TEST_CASE("gauss sum omega: unit modulus for N <= 12, known small values") {
    for (int N = 2; N <= 12; ++N) {
        for (int sign : {+1, -1}) {
            if (N % 2 == 1 && sign < 0) continue;
            auto ctx = make_context(N, sign);
            Scalar w = ctx->omega();
            CHECK((w * w.conj()).eq(ctx->one()));
        }
    }
    // N=2, zeta=i: direct summation gives (1+i)/sqrt(2) = e^{i pi/4}
    auto c2 = make_context(2, +1);
    CHECK(close(c2->omega().to_complex(), std::polar(1.0, M_PI / 4.0)));
    // N=3: (1 + 2 q^2)/sqrt(3) with zeta = -e^{i pi/3}; equals -i
    auto c3 = make_context(3);
    CHECK(close(c3->omega().to_complex(), {0.0, -1.0}));
}

TEST_CASE("omega_sqrt squares to omega, principal branch") {
    for (int N = 2; N <= 7; ++N) {
        auto ctx = make_context(N);
        Scalar r = ctx->omega_sqrt();
        CHECK((r * r).eq(ctx->omega()));
        double target = std::arg(ctx->omega().to_complex()) / 2.0;
        CHECK(std::abs(std::arg(r.to_complex()) - target) < 1e-9);
    }
    auto c2 = make_context(2, +1);
    CHECK(close(c2->omega_sqrt().to_complex(), std::polar(1.0, M_PI / 8.0)));
}

TEST_CASE("field arithmetic: conj, inverse, canonical equality") {
    auto ctx = make_context(3);
    Scalar z = ctx->zeta();
    CHECK(z.conj().eq(z.inverse()));
    Scalar a = ctx->rational(3, 4) * ctx->root(5) + ctx->integer(2);
    Scalar b = a.inverse();
    CHECK((a * b).eq(ctx->one()));
    CHECK_THROWS_AS(ctx->zero().inverse(), std::domain_error);
    // canonical form: same value along different routes
    Scalar lhs = (ctx->q() + ctx->one()) * (ctx->q() - ctx->one());
    Scalar rhs = ctx->q() * ctx->q() - ctx->one();
    CHECK(lhs.eq(rhs));
}

TEST_CASE("exact and approx modes agree on constants") {
    for (int N : {2, 3, 4, 5, 6, 7}) {
        auto ex = make_context(N, +1, Mode::exact);
        auto ap = make_context(N, +1, Mode::approx);
        CHECK(close(ex->zeta().to_complex(), ap->zeta().to_complex()));
        CHECK(close(ex->q().to_complex(), ap->q().to_complex()));
        CHECK(close(ex->sqrt_n().to_complex(), ap->sqrt_n().to_complex()));
        CHECK(close(ex->omega().to_complex(), ap->omega().to_complex()));
        CHECK(close(ex->omega_sqrt().to_complex(), ap->omega_sqrt().to_complex()));
    }
}

TEST_CASE("scalar json round trip") {
    auto ctx = make_context(3);
    Scalar a = ctx->rational(-7, 2) * ctx->root(11) + ctx->sqrt_n();
    Scalar b = scalar_from_json(ctx, scalar_to_json(a));
    CHECK(a.eq(b));
    auto ap = make_context(3, +1, Mode::approx);
    Scalar c = Scalar::from_complex(ap, {0.25, -1.5});
    Scalar d = scalar_from_json(ap, scalar_to_json(c));
    CHECK(c.eq(d));
}

// Acceptance suite: one line per criterion, exit nonzero on any failure.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>

#include "parafermion/braid.hpp"
#include "parafermion/pauli.hpp"
#include "parafermion/rp.hpp"
#include "parafermion/tangle.hpp"
#include "parafermion/verify.hpp"

using namespace pf;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, double seconds, double bound_s,
            const std::string& note = "") {
    bool time_ok = bound_s <= 0 || seconds <= bound_s;
    bool ok = pass && time_ok;
    if (!ok) ++failures;
    std::printf("criterion-%02d %-4s %6.2fs  %s%s%s\n", idx, ok ? "PASS" : "FAIL", seconds,
                name.c_str(), note.empty() ? "" : "  -- ", note.c_str());
    if (!time_ok) std::printf("             time bound %.0fs exceeded\n", bound_s);
}

bool suite_ok(const SuiteOptions& opt, std::string* note = nullptr) {
    auto recs = run_suite(opt);
    long failed = 0;
    for (const auto& r : recs)
        if (!r.pass) {
            ++failed;
            std::printf("    FAIL %s [%s] %s\n", r.identity.c_str(), r.params.c_str(),
                        r.note.c_str());
        }
    if (note) *note = std::to_string(recs.size()) + " identities";
    return failed == 0;
}

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

// 1. defining relations, trace/adjoint/grading, N in {2..5} both signs, m <= 3
static void criterion_01() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "pf";
    opt.n_min = 2;
    opt.n_max = 5;
    opt.m_max = 3;
    std::string note;
    bool ok = suite_ok(opt, &note);
    report(1, "parafermion relation suite, N=2..5 both signs, m<=3, exact", ok, elapsed(t0), 10.0,
           note);
}

// 2. Jordan-Wigner *-homomorphism + trace faithfulness on all monomials
static void criterion_02() {
    auto t0 = Clock::now();
    bool ok = true;
    long checked = 0;
    for (int N = 2; N <= 4; ++N) {
        for (int sign : {+1, -1}) {
            if (N % 2 == 1 && sign < 0) continue;
            auto ctx = make_context(N, sign);
            for (int m = 1; m <= 3; ++m) {
                long dim = 1;
                for (int p = 0; p < m; ++p) dim *= N;
                Scalar inv_dim = ctx->rational(1, dim);
                auto indices = all_multi_indices(N, m);
                std::vector<PFElement> mono;
                std::vector<DenseOperator> jws;
                for (const auto& I : indices) {
                    mono.push_back(PFElement::monomial(ctx, m, I, Scalar::one(ctx)));
                    jws.push_back(mono.back().jw());
                }
                for (size_t a = 0; a < mono.size(); ++a) {
                    if (!jws[a].adjoint().eq(mono[a].star().jw())) ok = false;
                    if (!(jws[a].trace() * inv_dim).eq(mono[a].markov_trace())) ok = false;
                    for (size_t b = 0; b < mono.size(); ++b) {
                        if (!(mono[a] * mono[b]).jw().eq(jws[a] * jws[b])) ok = false;
                        ++checked;
                    }
                }
            }
        }
    }
    report(2, "Jordan-Wigner faithfulness, N<=4, m<=3, exact", ok, elapsed(t0), 30.0,
           std::to_string(checked) + " basis pairs");
}

// 3. Temperley-Lieb relations including the joint generator relations
static void criterion_03() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "tl";
    opt.n_min = 2;
    opt.n_max = 4;
    opt.m_max = 3;
    std::string note;
    bool ok = suite_ok(opt, &note);
    report(3, "Temperley-Lieb relation suite, N<=4, m<=3, exact", ok, elapsed(t0), 0.0, note);
}

// 4. string Fourier transform: generator phase, full rotation, DFT identity
static void criterion_04() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "sft";
    opt.n_min = 2;
    opt.n_max = 4;
    opt.m_max = 2;
    std::string note;
    bool ok = suite_ok(opt, &note);
    // DFT identity to 1e-9 for N = 5..7 in approx mode
    for (int N = 5; N <= 7 && ok; ++N) {
        auto ctx = make_context(N, +1, Mode::approx, 1e-9);
        Scalar inv_rootN = ctx->sqrt_n().inverse();
        for (int i = 0; i < N; ++i) {
            PFElement ci = PFElement::generator(ctx, 1, 1, i);
            PFElement lhs = sft(theta_twisted_pair(ci, ci));
            PFElement rhs = PFElement::zero(ctx, 2);
            for (int j = 0; j < N; ++j) {
                PFElement cj = PFElement::generator(ctx, 1, 1, j);
                rhs = rhs + theta_twisted_pair(cj, cj).scaled(
                                inv_rootN * ctx->q_pow(static_cast<long>(i) * j));
            }
            if (!lhs.eq(rhs)) ok = false;
        }
    }
    report(4, "string Fourier transform: phases, rotation, DFT (exact N<=4, 1e-9 N<=7)", ok,
           elapsed(t0), 0.0, note);
}

// 5. Pauli matrices and quaternions
static void criterion_05() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "pauli";
    opt.n_min = 2;
    opt.n_max = 5;
    std::string note;
    bool ok = suite_ok(opt, &note);
    report(5, "Pauli/quaternion relations, standard spin matrices at N=2, N<=5 exact", ok,
           elapsed(t0), 0.0, note);
}

// 6. quadratic four-parafermion models on N^4 dimensions
static void criterion_06() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "quadratic";
    opt.n_min = 2;
    opt.n_max = 3;
    std::string note;
    bool ok = suite_ok(opt, &note);
    report(6, "quadratic models: relation sets, triple products, eigenspace dimension N^3", ok,
           elapsed(t0), 0.0, note);
}

// 7. braid identities: exact N<=3, 1e-9 N<=5
static void criterion_07() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "braid";
    opt.n_min = 2;
    opt.n_max = 3;
    std::string note;
    bool ok = suite_ok(opt, &note);
    SuiteOptions approx = opt;
    approx.n_min = 4;
    approx.n_max = 5;
    approx.mode = Mode::approx;
    std::string note2;
    ok = suite_ok(approx, &note2) && ok;
    report(7, "braid axioms: kinks, inverses, Yang-Baxter, slides, flip (exact N<=3, 1e-9 N<=5)",
           ok, elapsed(t0), 60.0, note + " + " + note2);
}

// 8. Clifford relations and group orders
static void criterion_08() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "clifford";
    opt.n_min = 2;
    opt.n_max = 5;
    std::string note;
    bool ok = suite_ok(opt, &note);
    auto r2 = clifford_enumerate(make_context(2), 1000);
    auto r3 = clifford_enumerate(make_context(3), 10000);
    bool orders = r2.closed && r2.order == 24 && r2.sl2_order == 6 && r3.closed &&
                  r3.order == 216 && r3.sl2_order == 24;
    if (!orders) ok = false;
    report(8, "Clifford relations N<=5; projective orders 24 (N=2) and 216 (N=3) vs |SL2|", ok,
           elapsed(t0), 0.0,
           "even-N Gaussian satisfies G^N = Z^{N/2}, G^{2N} = 1; orders " +
               std::to_string(r2.order) + "," + std::to_string(r3.order));
}

// 9. reflection positivity: equivalence over >= 200 couplings per (N,m),
//    plus the exact rotation-route agreement for sft_matrix
static void criterion_09() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    std::vector<std::pair<int, int>> grid = {{2, 1}, {2, 2}, {3, 1}};
    std::vector<double> betas = {0.0, 0.25, 0.5, 1.0, 2.0};
    for (auto [N, m] : grid) {
        auto ctx = make_context(N, +1, Mode::approx, 1e-9);
        std::mt19937_64 rng(2024 + 10 * N + m);
        std::vector<CouplingMatrix> ens;
        for (int i = 0; i < 200; ++i)
            ens.push_back(random_coupling(ctx, m, rng, i % 2 ? -1 : +1));
        auto rep = theorem_equivalence(ens, betas, 1e-8);
        if (!rep.mismatches.empty()) {
            ok = false;
            std::printf("    equivalence mismatches at N=%d m=%d: %zu\n", N, m,
                        rep.mismatches.size());
        }
        note += "(" + std::to_string(N) + "," + std::to_string(m) + "):200 ";
    }
    // exact rotation-route oracle for the closed-form sft matrix
    SuiteOptions fm;
    fm.suite = "rp";
    fm.n_min = 2;
    fm.n_max = 3;
    fm.m_max = 2;
    fm.ensemble = 8;
    auto recs = run_suite(fm);
    for (const auto& r : recs)
        if (!r.pass) {
            ok = false;
            std::printf("    FAIL %s [%s]\n", r.identity.c_str(), r.params.c_str());
        }
    report(9, "reflection positivity iff crossing block PSD (200 couplings per (N,m)) + sft oracle",
           ok, elapsed(t0), 60.0, note);
}

// 10. tangle evaluator against the loop oracle and isotopy pairs
static void criterion_10() {
    auto t0 = Clock::now();
    SuiteOptions opt;
    opt.suite = "tangle";
    opt.n_min = 2;
    opt.n_max = 4;
    std::string note;
    bool ok = suite_ok(opt, &note);
    report(10, "tangle evaluator = loop oracle on the enumerated corpus; isotopy pairs agree", ok,
           elapsed(t0), 0.0, note);
}

// 11. Gauss sum: |omega| = 1 exactly for N <= 12; pinned small values
static void criterion_11() {
    auto t0 = Clock::now();
    bool ok = true;
    for (int N = 2; N <= 12; ++N) {
        for (int sign : {+1, -1}) {
            if (N % 2 == 1 && sign < 0) continue;
            auto ctx = make_context(N, sign);
            Scalar w = ctx->omega();
            if (!(w * w.conj()).eq(ctx->one())) ok = false;
        }
    }
    {
        // N=2, zeta=i: direct summation (1 + i)/sqrt(2), equal to e^{i pi/4}
        auto ctx = make_context(2, +1);
        Scalar direct = (ctx->one() + ctx->zeta_pow(1)) * ctx->sqrt_n().inverse();
        if (!ctx->omega().eq(direct)) ok = false;
        if (!ctx->omega().eq(ctx->root(ctx->L / 8))) ok = false;
    }
    {
        // N=3: direct summation 1 + 2 zeta^1 over sqrt(3), equal to -i
        auto ctx = make_context(3);
        Scalar direct =
            (ctx->one() + ctx->zeta_pow(1) + ctx->zeta_pow(4)) * ctx->sqrt_n().inverse();
        if (!ctx->omega().eq(direct)) ok = false;
        Scalar minus_i = -ctx->root(ctx->L / 4);
        if (!ctx->omega().eq(minus_i)) ok = false;
    }
    report(11, "Gauss sum: |omega| = 1 exact N<=12; omega = e^{i pi/4} (N=2), -i (N=3)", ok,
           elapsed(t0), 0.0);
}

int main() {
    criterion_01();
    criterion_02();
    criterion_03();
    criterion_04();
    criterion_05();
    criterion_06();
    criterion_07();
    criterion_08();
    criterion_09();
    criterion_10();
    criterion_11();
    if (failures == 0)
        std::printf("acceptance: all 11 criteria PASS\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "doctest.h"
#include "parafermion/braid.hpp"
#include "parafermion/tangle.hpp"
#include "parafermion/verify.hpp"

using namespace pf;

TEST_CASE("parser accepts the grammar and validates structure") {
    TangleWord w = parse_tangle("N=3\ncup@1\ncap@1\n");
    CHECK(w.in_strands == 0);
    CHECK(w.out_strands == 0);
    CHECK(w.slices.size() == 2);

    TangleWord w2 = parse_tangle("N=3\n# a labelled circle\ncup@1\nc^2@1\ncap@1");
    CHECK(w2.slices.size() == 3);
    CHECK(w2.slices[1].power == 2);

    TangleWord w3 = parse_tangle("N=3\nin=2\npos@1\n");
    CHECK(w3.in_strands == 2);
    CHECK(w3.out_strands == 2);
}

TEST_CASE("parser diagnostics") {
    CHECK_THROWS_AS(parse_tangle("N=3\ncap@1\n"), tangle_parse_error);       // no strands yet
    CHECK_THROWS_AS(parse_tangle("N=3\ncup@5\n"), tangle_parse_error);       // out of range
    CHECK_THROWS_AS(parse_tangle("N=3\ncup@1\nfrob@1\n"), tangle_parse_error);
    CHECK_THROWS_AS(parse_tangle("cup@1\n"), tangle_parse_error);            // missing N=
    CHECK_THROWS_AS(parse_tangle("N=1\n"), tangle_parse_error);
    CHECK_THROWS_AS(parse_tangle("N=3\nin=2\npos@2\n"), tangle_parse_error); // crossing needs p+1
    try {
        parse_tangle("N=3\ncup@1\n\nbad token\n");
    } catch (const tangle_parse_error& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("closed circle values") {
    for (int N : {2, 3, 4}) {
        auto ctx = make_context(N);
        auto val = [&](const std::string& s) { return evaluate_tangle(parse_tangle(ctx, s)).scalar; };
        CHECK(evaluate_tangle(parse_tangle(ctx, "")).scalar.eq(ctx->one()));
        CHECK(val("cup@1\ncap@1").eq(ctx->sqrt_n()));
        for (int k = 1; k < N; ++k)
            CHECK(val("cup@1\nc^" + std::to_string(k) + "@1\ncap@1").is_zero());
        CHECK(val("cup@1\nc^" + std::to_string(N) + "@1\ncap@1").eq(ctx->sqrt_n()));
        // kinks carry the two Gauss-sum root scalars
        CHECK(val("cup@1\ncup@2\npos@1\ncap@2\ncap@1")
                  .eq(ctx->sqrt_n() * ctx->omega_sqrt().inverse()));
        CHECK(val("cup@1\ncup@2\nneg@1\ncap@2\ncap@1").eq(ctx->sqrt_n() * ctx->omega_sqrt()));
        // two disjoint circles
        CHECK(val("cup@1\ncap@1\ncup@1\ncap@1").eq(ctx->integer(N)));
    }
}

TEST_CASE("loop oracle basics") {
    auto ctx = make_context(3);
    CHECK(closed_loop_oracle(ctx, {}).eq(ctx->sqrt_n()));
    CHECK(closed_loop_oracle(ctx, {{1, 1, 0}}).is_zero());
    CHECK(closed_loop_oracle(ctx, {{1, 1, 0}, {1, 2, 0}}).eq(ctx->sqrt_n()));
    // winding multiplies by q^{w p^2}
    Scalar base = closed_loop_oracle(ctx, {{1, 1, 0}, {1, 2, 0}});
    CHECK(closed_loop_oracle(ctx, {{1, 1, 1}, {1, 2, 0}}).eq(base * ctx->q_pow(1)));
    CHECK(closed_loop_oracle(ctx, {{1, 1, -1}, {1, 2, 0}}).eq(base * ctx->q_pow(-1)));
    // a right-leg label carries the half-turn phase
    CHECK(closed_loop_oracle(ctx, {{1, 1, 0}, {2, 2, 0}})
              .eq(ctx->sqrt_n() * ctx->zeta_pow(-4) * ctx->q_pow(-2)));
}

TEST_CASE("open tangles: operators through the hom space") {
    auto ctx = make_context(3);
    // identity word
    auto v = evaluate_tangle(parse_tangle(ctx, "in=2\n"));
    CHECK(v.element.eq(PFElement::identity(ctx, 2)));
    CHECK(v.has_operator);
    CHECK(v.op.is_identity());
    // labels act as the represented generators
    auto vl = evaluate_tangle(parse_tangle(ctx, "in=2\nc^2@2"));
    CHECK(vl.element.eq(PFElement::generator(ctx, 2, 2, 2)));
    CHECK(vl.op.eq(PFElement::generator(ctx, 2, 2, 2).jw()));
    // cap then cup is the Temperley-Lieb two-box
    auto ve = evaluate_tangle(parse_tangle(ctx, "in=2\ncap@1\ncup@1"));
    CHECK(ve.element.eq(jones_projection(ctx, 2, 1)));
    // crossings evaluate to the braid boxes
    auto vb = evaluate_tangle(parse_tangle(ctx, "in=2\npos@1"));
    CHECK(vb.element.eq(braid_element(ctx, 2, 1, true)));
    CHECK(vb.op.eq(braid_matrices(ctx).pos));
    auto vn = evaluate_tangle(parse_tangle(ctx, "in=2\nneg@1"));
    CHECK(vn.element.eq(braid_element(ctx, 2, 1, false)));
    // 1 -> 1 tangles live in the N-dimensional hom space
    auto v1 = evaluate_tangle(parse_tangle(ctx, "in=1\nc^1@1"));
    CHECK(v1.element.eq(PFElement::generator(ctx, 1, 1, 1)));
}

TEST_CASE("corpus, isotopy pairs and insertion invariants via the suite") {
    SuiteOptions opt;
    opt.suite = "tangle";
    opt.n_min = 2;
    opt.n_max = 4;
    auto recs = run_suite(opt);
    CHECK(!recs.empty());
    for (const auto& r : recs) {
        INFO(r.identity, " [", r.params, "] ", r.note);
        CHECK(r.pass);
    }
}

TEST_CASE("evaluator matches the braid closure invariant on closed braids") {
    auto ctx = make_context(3);
    // sideways trace closure of a two-strand braid word: the slice diagram
    // carries one extra circle factor delta relative to the normalized
    // closure invariant
    for (auto word : std::vector<std::vector<int>>{{1}, {1, 1}, {1, -1}, {-1, -1, -1}}) {
        std::string body = "cup@1\ncup@3\n";
        for (int g : word) body += (g > 0 ? "pos@2\n" : "neg@2\n");
        body += "cap@3\ncap@1";
        Scalar direct = evaluate_tangle(parse_tangle(ctx, body)).scalar;
        auto inv = braid_closure_invariant(ctx, word, 2);
        CHECK(direct.eq(inv.value * ctx->sqrt_n()));
    }
}

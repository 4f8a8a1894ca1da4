#include <catch2/catch_amalgamated.hpp>

#include "starprod/ncpoly.hpp"
#include "support/generators.hpp"

using namespace starprod;

namespace {
const ParamScalar ih = ParamScalar::i() * ParamScalar::hbar();
}

TEST_CASE("normal ordering rewrites PQ") {
    CHECK(normal_order(NCPoly::p_op() * NCPoly::q_op()) ==
          NCPoly::word("QP") - NCPoly(ih));

    // PQ^2 = Q^2 P - 2 i hbar Q
    NCPoly expect = NCPoly::word("QQP") + ParamScalar(-2) * ih * NCPoly::word("Q");
    CHECK(normal_order(NCPoly::word("PQQ")) == expect);

    CHECK(normal_order(NCPoly::word("QQP")) == NCPoly::word("QQP"));

    testgen::Rng rng(111);
    for (int round = 0; round < 10; ++round) {
        std::string w;
        for (int j = 0; j < 6; ++j) w += (testgen::uniform_int(rng, 0, 1) ? 'Q' : 'P');
        NCPoly a = NCPoly::word(w, testgen::random_scalar(rng));
        CHECK(normal_order(normal_order(a)) == normal_order(a));
    }
}

TEST_CASE("normal ordering is multiplicative") {
    testgen::Rng rng(112);
    for (int round = 0; round < 10; ++round) {
        std::string u, v;
        for (int j = 0; j < 4; ++j) u += (testgen::uniform_int(rng, 0, 1) ? 'Q' : 'P');
        for (int j = 0; j < 4; ++j) v += (testgen::uniform_int(rng, 0, 1) ? 'Q' : 'P');
        NCPoly a = NCPoly::word(u), b = NCPoly::word(v);
        CHECK(normal_order(a * b) == normal_order(normal_order(a) * normal_order(b)));
    }
}

TEST_CASE("weyl images") {
    CHECK(normal_order(weyl_quantize(1, 1)) ==
          NCPoly::word("QP") - ParamScalar(1, 2) * ih * NCPoly::one());
    CHECK(weyl_quantize(3, 0) == NCPoly::word("QQQ"));
    CHECK(weyl_quantize(0, 2) == NCPoly::word("PP"));

    // binomial form equals the full permutation average
    for (int n = 0; n + 0 <= 6; ++n)
        for (int m = 0; n + m <= 6; ++m)
            CHECK(normal_order(weyl_quantize(n, m)) == normal_order(weyl_quantize_perm(n, m)));
}

TEST_CASE("born-jordan images") {
    CHECK(normal_order(bj_quantize(1, 1)) == normal_order(weyl_quantize(1, 1)));

    NCPoly expect = ParamScalar(1, 3) *
                    (NCPoly::word("QQP") + NCPoly::word("QPQ") + NCPoly::word("PQQ"));
    CHECK(bj_quantize(2, 1) == expect);
    CHECK(normal_order(bj_quantize(2, 1)) == normal_order(weyl_quantize(2, 1)));

    CHECK(bj_quantize(0, 3) == NCPoly::word("PPP"));

    // weyl and born-jordan differ at (2,2)
    CHECK(normal_order(bj_quantize(2, 2)) != normal_order(weyl_quantize(2, 2)));
}

TEST_CASE("standard images") {
    CHECK(std_quantize(1, 1) == NCPoly::word("QP"));
    CHECK(std_quantize(0, 0) == NCPoly::one());
    CHECK(std_quantize(2, 2) == NCPoly::word("QQPP"));
}

TEST_CASE("hermiticity of the orderings") {
    for (int n = 0; n + 0 <= 5; ++n)
        for (int m = 0; n + m <= 5; ++m) {
            CHECK(is_hermitian(weyl_quantize(n, m)));
            CHECK(is_hermitian(bj_quantize(n, m)));
            if (n >= 1 && m >= 1) CHECK_FALSE(is_hermitian(std_quantize(n, m)));
        }
}

TEST_CASE("wigner transform inverts the weyl map") {
    for (int n = 0; n + 0 <= 8; ++n)
        for (int m = 0; n + m <= 8; ++m)
            CHECK(weyl_dequantize(weyl_quantize(n, m)) == PhasePoly::monomial(n, m));

    // QP has symbol qp + i hbar/2, consistent with the moyal product of q, p
    PhasePoly sym = weyl_dequantize(NCPoly::word("QP"));
    CHECK(sym == PhasePoly::monomial(1, 1) + PhasePoly(ih * ParamScalar(1, 2)));
    CHECK(sym == apply(BiDiffOp::moyal_star(2), PhasePoly::q(), PhasePoly::p()));

    CHECK(weyl_dequantize(NCPoly::one()) == PhasePoly::one());
}

TEST_CASE("operator products become star products") {
    CHECK(homomorphism_check(PhasePoly::q(), PhasePoly::p()));

    testgen::Rng rng(131);
    for (int round = 0; round < 15; ++round) {
        PhasePoly f = testgen::random_phase_poly(rng, 4);
        PhasePoly g = testgen::random_phase_poly(rng, 4);
        CHECK(homomorphism_check(f, g));
        CHECK(homomorphism_check(f, PhasePoly::one()));
    }
}

TEST_CASE("ordering rules factor through their transition operators") {
    for (int n = 0; n + 0 <= 6; ++n)
        for (int m = 0; n + m <= 6; ++m) {
            CHECK(ordering_transition_check(n, m, Ordering::born_jordan));
            CHECK(ordering_transition_check(n, m, Ordering::standard));
        }
}

TEST_CASE("composition direction of the transition route") {
    // the dressing acts before the Weyl map, not inverted: at (1,1) the
    // inverse direction lands on QP - i hbar instead of QP
    DiffOpSeries ts = transition::standard(2);
    NCPoly inverse_route = quantize_weyl(ts.invert().apply(PhasePoly::monomial(1, 1)));
    CHECK(normal_order(inverse_route) ==
          NCPoly::word("QP") - ih * NCPoly::one());
    CHECK(normal_order(inverse_route) != normal_order(std_quantize(1, 1)));

    NCPoly forward_route = quantize_weyl(ts.apply(PhasePoly::monomial(1, 1)));
    CHECK(normal_order(forward_route) == normal_order(std_quantize(1, 1)));
}

TEST_CASE("ncpoly printing") {
    NCPoly a = normal_order(weyl_quantize(2, 1));
    CHECK(to_string(a) == "Q^2*P - i*hbar*Q");
}

#include <catch2/catch_amalgamated.hpp>

#include "starprod/diffop.hpp"
#include "support/generators.hpp"

using namespace starprod;

namespace {

const ParamScalar ih = ParamScalar::i() * ParamScalar::hbar();
const ParamScalar mass = ParamScalar::param(kMassIndex);
const ParamScalar gam = ParamScalar::param(kGammaIndex);
const ParamScalar eta = ParamScalar::param(kEtaIndex);
const ParamScalar sigma = ParamScalar::param(kSigmaIndex);

// random real transition operator 1 + sum c_mn(hbar) dq^m dp^n, order <= 4
DiffOpSeries random_real_transition(testgen::Rng& rng, int order, bool hbar_free_part) {
    DiffOpSeries t = DiffOpSeries::identity(order);
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; m + n <= 4; ++n) {
            if (m == 0 && n == 0) continue;
            if (testgen::uniform_int(rng, 0, 2) != 0) continue;
            ParamPoly c;
            if (hbar_free_part && testgen::uniform_int(rng, 0, 1) == 0)
                c.add_term(Mono::one(), GaussInt(testgen::uniform_int(rng, -3, 3)));
            for (int d = 1; d <= 2; ++d)
                c.add_term(Mono::var(kHbarIndex, d),
                           GaussInt(testgen::uniform_int(rng, -3, 3)));
            t.add_term(m, n, ParamScalar(c));
        }
    return t;
}

} // namespace

TEST_CASE("series inversion") {
    const int order = 8;
    DiffOpSeries tg = transition::damped(gam, mass, order);
    DiffOpSeries tg_conj = transition::damped(-gam, mass, order);
    CHECK(tg.invert() == tg_conj); // exp inverse flips the exponent sign
    CHECK(tg * tg.invert() == DiffOpSeries::identity(order));

    CHECK(DiffOpSeries::identity(order).invert() == DiffOpSeries::identity(order));

    DiffOpSeries no_const(4);
    no_const.add_term(1, 0, ParamScalar::one());
    CHECK_THROWS_AS(no_const.invert(), not_invertible);

    testgen::Rng rng(61);
    for (int round = 0; round < 8; ++round) {
        DiffOpSeries t = random_real_transition(rng, 6, true);
        CHECK(t * t.invert() == DiffOpSeries::identity(6));
    }
}

TEST_CASE("odot of the named operators") {
    const int order = 8;

    BiDiffOp dress_g(order);
    dress_g.add_term({0, 1, 0, 1}, -(ih * gam * mass));
    CHECK(odot(transition::damped(gam, mass, order)) == BiDiffOp::exp_of(dress_g));

    BiDiffOp log_eta(order);
    log_eta.add_term({1, 0, 1, 0}, eta * sigma * sigma * ParamScalar(1, 2));
    log_eta.add_term({0, 1, 0, 1}, eta * ParamScalar(1, 2) / (sigma * sigma));
    CHECK(odot(transition::husimi(eta, sigma, order)) == BiDiffOp::exp_of(log_eta));

    CHECK(odot(DiffOpSeries::identity(order)) == BiDiffOp::identity(order));
}

TEST_CASE("star products from transition operators") {
    const int order = 8;
    BiDiffOp dress_g(order);
    dress_g.add_term({0, 1, 0, 1}, -(ih * gam * mass));
    BiDiffOp star_gamma = BiDiffOp::moyal_star(order) * BiDiffOp::exp_of(dress_g);
    CHECK(star_t(transition::damped(gam, mass, order)) == star_gamma);

    CHECK(star_t(DiffOpSeries::identity(order)) == BiDiffOp::moyal_star(order));

    // real transition operators give hermitian star products
    CHECK(star_t(transition::damped_eta(gam, eta, mass, order)).is_hermitian());
    CHECK(star_t(transition::husimi(eta, sigma, order)).is_hermitian());
    CHECK(star_t(transition::born_jordan(order)).is_hermitian());
}

TEST_CASE("hbar-free parts") {
    const int order = 8;
    CHECK(transition::damped(gam, mass, order).hbar_zero_part() ==
          DiffOpSeries::identity(order));
    DiffOpSeries te = transition::husimi(eta, sigma, order);
    CHECK(te.hbar_zero_part() == te);
    DiffOpSeries tge = transition::damped_eta(gam, eta, mass, order);
    CHECK(tge.hbar_zero_part() == tge);
}

TEST_CASE("constructor series coefficients") {
    DiffOpSeries tbj = transition::born_jordan(8);
    CHECK(tbj.coeff(0, 0) == ParamScalar::one());
    CHECK(tbj.coeff(1, 1).is_zero());
    CHECK(tbj.coeff(2, 2) == -(ParamScalar::hbar(2) * ParamScalar(1, 24)));
    CHECK(tbj.coeff(4, 4) == ParamScalar::hbar(4) * ParamScalar(1, 1920));

    DiffOpSeries ts = transition::standard(8);
    CHECK(ts.coeff(1, 1) == ih * ParamScalar(1, 2));
    CHECK(ts.coeff(2, 2) == -(ParamScalar::hbar(2) * ParamScalar(1, 8)));

    CHECK(transition::damped(ParamScalar::zero(), mass, 8) == DiffOpSeries::identity(8));
    CHECK(transition::damped(gam, mass, 8).coeff(0, 2) == -(ih * gam * mass * ParamScalar(1, 2)));
}

TEST_CASE("homomorphism of star_T through T") {
    const int order = 10;
    testgen::Rng rng(71);
    std::vector<DiffOpSeries> ops = {
        transition::damped(gam, mass, order),
        transition::husimi(eta, sigma, order),
        transition::born_jordan(order),
        transition::standard(order),
    };
    for (const auto& t : ops) {
        BiDiffOp star = star_t(t);
        for (int round = 0; round < 4; ++round) {
            PhasePoly f = testgen::random_phase_poly(rng, 3);
            PhasePoly g = testgen::random_phase_poly(rng, 3);
            CHECK(apply(star, t.apply(f), t.apply(g)) ==
                  t.apply(apply(BiDiffOp::moyal_star(order), f, g)));
        }
    }
}

TEST_CASE("odot is symmetric and star_T hermitian for real T") {
    testgen::Rng rng(81);
    for (int round = 0; round < 6; ++round) {
        DiffOpSeries t = random_real_transition(rng, 6, true);
        BiDiffOp o = odot(t);
        CHECK(o.is_symmetric());
        CHECK(star_t(t).is_hermitian());
    }
    // symmetry holds for non-real T as well
    CHECK(odot(transition::standard(8)).is_symmetric());
    CHECK(odot(transition::damped(gam, mass, 8)).is_symmetric());
}

TEST_CASE("husimi bracket factorizes") {
    const int order = 8;
    DiffOpSeries te = transition::husimi(eta, sigma, order);
    BiDiffOp m_eta = moyal_bracket_op(star_t(te));
    BiDiffOp m0 = moyal_bracket_op(BiDiffOp::moyal_star(order));
    CHECK(m_eta == m0 * odot(te));
}

TEST_CASE("classical limit theorem for the named operators") {
    const int order = 8;
    CHECK(verify_classical_limit_theorem(transition::husimi(eta, sigma, order)));
    CHECK(verify_classical_limit_theorem(transition::damped(gam, mass, order)));
    CHECK(verify_classical_limit_theorem(transition::damped_eta(gam, eta, mass, order)));

    // closed forms of the limits
    BiDiffOp lim_g = moyal_bracket_op(star_t(transition::damped(gam, mass, order)))
                         .classical_limit();
    CHECK(lim_g == BiDiffOp::poisson(order));

    BiDiffOp dress(order);
    dress.add_term({0, 1, 0, 1}, ParamScalar(-2) * eta * gam * mass);
    BiDiffOp lim_ge = moyal_bracket_op(star_t(transition::damped_eta(gam, eta, mass, order)))
                          .classical_limit();
    CHECK(lim_ge == BiDiffOp::poisson(order) * BiDiffOp::exp_of(dress));

    BiDiffOp lim_e = moyal_bracket_op(star_t(transition::husimi(eta, sigma, order)))
                         .classical_limit();
    CHECK(lim_e == BiDiffOp::poisson(order) * odot(transition::husimi(eta, sigma, order)));
}

TEST_CASE("classical limit theorem on random real transition operators") {
    const int order = 8;
    testgen::Rng rng(91);
    for (int round = 0; round < 6; ++round) {
        DiffOpSeries t = random_real_transition(rng, order, round % 2 == 0);
        CHECK(verify_classical_limit_theorem(t));
        if (t.hbar_zero_part() == DiffOpSeries::identity(order)) {
            CHECK(moyal_bracket_op(star_t(t)).classical_limit() == BiDiffOp::poisson(order));
        }
    }
}

TEST_CASE("classical limit of the star product itself is odot of T0") {
    // recorded fact: lim star_T = odot(T0), not the identity, whenever T0 != 1
    const int order = 6;
    DiffOpSeries te = transition::husimi(eta, sigma, order);
    CHECK(star_t(te).classical_limit() == odot(te.hbar_zero_part()));
    CHECK(star_t(te).classical_limit() != BiDiffOp::identity(order));
}

TEST_CASE("first-order augmentation candidates") {
    const int order = 6;

    DiffOpSeries beta_dq(order);
    beta_dq.add_term(1, 0, ParamScalar::param(kGammaIndex));
    CHECK(first_order_delta(beta_dq).is_zero());

    DiffOpSeries mixed(order);
    mixed.add_term(1, 1, ParamScalar::one());
    BiDiffOp expect(order);
    expect.add_term({1, 0, 0, 1}, ParamScalar::one());
    expect.add_term({0, 1, 1, 0}, ParamScalar::one());
    CHECK(first_order_delta(mixed) == expect);

    DiffOpSeries dp2(order);
    dp2.add_term(0, 2, ParamScalar::one());
    BiDiffOp expect2(order);
    expect2.add_term({0, 1, 0, 1}, ParamScalar(2));
    CHECK(first_order_delta(dp2) == expect2);

    DiffOpSeries with_const(order);
    with_const.add_term(0, 0, ParamScalar::one());
    CHECK_THROWS_AS(first_order_delta(with_const), error);

    // no pure right-derivative monomials ever appear
    testgen::Rng rng(101);
    for (int round = 0; round < 10; ++round) {
        DiffOpSeries t = random_real_transition(rng, order, true);
        DiffOpSeries theta = t - DiffOpSeries::identity(order);
        BiDiffOp delta = first_order_delta(theta);
        for (auto& [k, c] : delta.terms()) {
            bool pure_right = (k[0] == 0 && k[1] == 0);
            CHECK_FALSE(pure_right);
        }
    }
}

TEST_CASE("transition operator printing") {
    CHECK(to_string(DiffOpSeries::identity(4)) == "1");
    DiffOpSeries ts = transition::standard(4);
    CHECK(to_string(ts) ==
          "1 + (1/2)*i*hbar*dq*dp - (1/8)*hbar^2*dq^2*dp^2");
}

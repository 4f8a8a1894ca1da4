#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starprod/numcheck.hpp"
#include "support/generators.hpp"

using namespace starprod;
using Catch::Matchers::WithinAbs;

namespace {

Expr random_expr(testgen::Rng& rng, int depth) {
    if (depth == 0) {
        switch (testgen::uniform_int(rng, 0, 3)) {
        case 0: return Expr::q();
        case 1: return Expr::p();
        case 2: return Expr::integer(testgen::uniform_int(rng, 1, 5));
        default: return Expr::q() * Expr::p();
        }
    }
    Expr a = random_expr(rng, depth - 1);
    Expr b = random_expr(rng, depth - 1);
    switch (testgen::uniform_int(rng, 0, 5)) {
    case 0: return a + b;
    case 1: return a - b;
    case 2: return a * b;
    case 3: return Expr::pow(a, testgen::uniform_int(rng, 1, 3));
    case 4: return Expr::arctan(a);
    default:
        // keep ln arguments positive: ln(1 + x^2)
        return Expr::ln(Expr::integer(1) + a * a);
    }
}

double fd_partial_q(const Expr& e, double q0, double p0, const ParamValues& vals) {
    const double h = 1e-4;
    return (eval(e, q0 + h, p0, vals) - eval(e, q0 - h, p0, vals)) / (2 * h);
}

double fd_partial_p(const Expr& e, double q0, double p0, const ParamValues& vals) {
    const double h = 1e-4;
    return (eval(e, q0, p0 + h, vals) - eval(e, q0, p0 - h, vals)) / (2 * h);
}

} // namespace

TEST_CASE("jets of a polynomial") {
    Expr e = Expr::pow(Expr::q(), 2) * Expr::p();
    Jet j = eval_jet(e, 1.0, 1.0, 2, no_params());
    CHECK_THAT(j.value(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(j.partial(1, 0), WithinAbs(2.0, 1e-14));
    CHECK_THAT(j.partial(0, 1), WithinAbs(1.0, 1e-14));
    CHECK_THAT(j.partial(2, 0), WithinAbs(2.0, 1e-14));
    CHECK_THAT(j.partial(1, 1), WithinAbs(2.0, 1e-14));
    CHECK_THAT(j.partial(0, 2), WithinAbs(0.0, 1e-14));
}

TEST_CASE("jets of arctan") {
    Expr e = Expr::arctan(Expr::q() / Expr::p());
    Jet j = eval_jet(e, 1.0, 1.0, 1, no_params());
    CHECK_THAT(j.value(), WithinAbs(M_PI / 4, 1e-14));
    CHECK_THAT(j.partial(1, 0), WithinAbs(0.5, 1e-14));
    CHECK_THAT(j.partial(0, 1), WithinAbs(-0.5, 1e-14));
}

TEST_CASE("jets of constants and parameters") {
    Jet j = eval_jet(Expr::rational(3, 4), 0.2, -1.0, 3, no_params());
    CHECK_THAT(j.value(), WithinAbs(0.75, 1e-15));
    CHECK_THAT(j.partial(1, 0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(j.partial(2, 1), WithinAbs(0.0, 1e-15));

    ParamValues vals = bind_params({{"m", 2.5}});
    CHECK_THAT(eval(Expr::param(kMassIndex), 0, 0, vals), WithinAbs(2.5, 1e-15));
    CHECK_THROWS_AS(eval(Expr::param(kOmegaIndex), 0, 0, vals), error);
}

TEST_CASE("jet partials agree with finite differences") {
    testgen::Rng rng(141);
    ParamValues vals = no_params();
    int checked = 0;
    for (int round = 0; round < 40 && checked < 25; ++round) {
        Expr e = random_expr(rng, 3);
        double q0 = testgen::uniform_int(rng, -15, 15) / 10.0;
        double p0 = testgen::uniform_int(rng, -15, 15) / 10.0;
        try {
            Jet j = eval_jet(e, q0, p0, 1, vals);
            double dq = fd_partial_q(e, q0, p0, vals);
            double dp = fd_partial_p(e, q0, p0, vals);
            double scale = std::max({1.0, std::abs(dq), std::abs(dp)});
            CHECK_THAT(j.partial(1, 0) / scale, WithinAbs(dq / scale, 1e-5));
            CHECK_THAT(j.partial(0, 1) / scale, WithinAbs(dp / scale, 1e-5));
            ++checked;
        } catch (const singular_sample_point&) {
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("jet product is the leibniz convolution") {
    testgen::Rng rng(142);
    for (int round = 0; round < 10; ++round) {
        Expr a = random_expr(rng, 2);
        Expr b = random_expr(rng, 2);
        try {
            Jet ja = eval_jet(a, 0.7, 1.3, 3, no_params());
            Jet jb = eval_jet(b, 0.7, 1.3, 3, no_params());
            Jet direct = eval_jet(a * b, 0.7, 1.3, 3, no_params());
            Jet composed = ja * jb;
            for (int x = 0; x + 0 <= 3; ++x)
                for (int y = 0; x + y <= 3; ++y) {
                    double scale = std::max(1.0, std::abs(direct.partial(x, y)));
                    CHECK_THAT(composed.partial(x, y) / scale,
                               WithinAbs(direct.partial(x, y) / scale, 1e-10));
                }
        } catch (const singular_sample_point&) {
        }
    }
}

TEST_CASE("symbolic derivatives agree with jet derivatives") {
    testgen::Rng rng(143);
    for (int round = 0; round < 10; ++round) {
        Expr e = random_expr(rng, 3);
        Expr dq = diff_q(e), dp = diff_p(e);
        try {
            double q0 = 0.4, p0 = -1.1;
            Jet j = eval_jet(e, q0, p0, 1, no_params());
            double scale = std::max({1.0, std::abs(j.partial(1, 0)), std::abs(j.partial(0, 1))});
            CHECK_THAT(eval(dq, q0, p0, no_params()) / scale,
                       WithinAbs(j.partial(1, 0) / scale, 1e-11));
            CHECK_THAT(eval(dp, q0, p0, no_params()) / scale,
                       WithinAbs(j.partial(0, 1) / scale, 1e-11));
        } catch (const singular_sample_point&) {
        }
    }
}

TEST_CASE("singular evaluations are rejected") {
    Expr e = Expr::arctan(Expr::q() / Expr::p());
    CHECK_THROWS_AS(eval(e, 1.0, 0.0, no_params()), singular_sample_point);
    CHECK_THROWS_AS(eval(Expr::ln(Expr::q()), -1.0, 0.0, no_params()), singular_sample_point);
}

TEST_CASE("numeric identity check") {
    Expr lhs = Expr::q() * Expr::p();
    NumReport same = numeric_identity_check(lhs, lhs, 200, 1e-12, 7, no_params());
    CHECK(same.pass);
    CHECK(same.max_residual == 0.0);

    NumReport diff = numeric_identity_check(Expr::q(), Expr::p(), 200, 1e-9, 7, no_params());
    CHECK_FALSE(diff.pass);

    // deterministic given the seed
    NumReport a = numeric_identity_check(Expr::q(), Expr::p(), 100, 1e-9, 11, no_params());
    NumReport b = numeric_identity_check(Expr::q(), Expr::p(), 100, 1e-9, 11, no_params());
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.samples == b.samples);

    SampleDomain dead;
    dead.p_floor = 3.0; // outside the sampling box: nothing survives
    CHECK_THROWS_AS(numeric_identity_check(lhs, lhs, 50, 1e-9, 3, no_params(), dead),
                    empty_sample_set);
}

TEST_CASE("antiderivative of arctan validated by jets") {
    // d/dp [p atan(q/p) + (q/2) ln(p^2 + q^2)] = atan(q/p)
    Expr q = Expr::q(), p = Expr::p();
    Expr anti = p * Expr::arctan(q / p) +
                (q / Expr::integer(2)) * Expr::ln(p * p + q * q);
    Expr target = Expr::arctan(q / p);
    testgen::Rng rng(144);
    int used = 0;
    for (int s = 0; s < 200; ++s) {
        double q0 = testgen::uniform_int(rng, -200, 200) / 100.0;
        double p0 = testgen::uniform_int(rng, -200, 200) / 100.0;
        if (std::abs(p0) < 0.1) continue;
        Jet j = eval_jet(anti, q0, p0, 1, no_params());
        CHECK_THAT(j.partial(0, 1), WithinAbs(eval(target, q0, p0, no_params()), 1e-10));
        ++used;
    }
    CHECK(used > 100);
}

TEST_CASE("gauss-hermite nodes integrate polynomials") {
    std::vector<double> x, w;
    gauss_hermite(8, x, w);
    double s0 = 0.0, s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s2 += w[i] * x[i] * x[i];
        s4 += w[i] * std::pow(x[i], 4);
    }
    const double sqpi = std::sqrt(M_PI);
    CHECK_THAT(s0, WithinAbs(sqpi, 1e-12));
    CHECK_THAT(s2, WithinAbs(sqpi / 2, 1e-12));
    CHECK_THAT(s4, WithinAbs(3 * sqpi / 4, 1e-12));
}

TEST_CASE("gaussian coarse graining matches the exponential operator") {
    CHECK(gaussian_coarse_grain_check(PhasePoly::one(), 0.5, 1.25, 1e-12).pass);

    // f = q^2 smooths to q^2 + eta sigma^2 / 2; pin that value against the
    // quadrature alone
    {
        const double eta = 0.5, sigma = 1.25, q0 = 1.0, p0 = 0.5;
        std::vector<double> x, w;
        gauss_hermite(6, x, w);
        double quad = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) {
                double qq = q0 + sigma * std::sqrt(eta) * x[i];
                quad += w[i] * w[j] * qq * qq;
            }
        quad /= M_PI;
        CHECK_THAT(quad, WithinAbs(q0 * q0 + eta * sigma * sigma / 2, 1e-12));
    }
    NumReport r = gaussian_coarse_grain_check(PhasePoly::q(2), 0.5, 1.25, 1e-10);
    CHECK(r.pass);

    // odd moments vanish: qp is untouched
    CHECK(gaussian_coarse_grain_check(PhasePoly::monomial(1, 1), 0.5, 1.25, 1e-10).pass);

    testgen::Rng rng(145);
    for (int round = 0; round < 5; ++round) {
        PhasePoly f = testgen::random_phase_poly(rng, 6);
        CHECK(gaussian_coarse_grain_check(f, 0.3, 0.8, 1e-10).pass);
    }
}

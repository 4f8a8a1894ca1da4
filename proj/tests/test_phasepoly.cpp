#include <catch2/catch_amalgamated.hpp>

#include "starprod/phasepoly.hpp"
#include "support/generators.hpp"

using namespace starprod;

namespace {
const ParamScalar m = ParamScalar::param(kMassIndex);
const ParamScalar omega = ParamScalar::param(kOmegaIndex);
} // namespace

TEST_CASE("formal partial derivatives") {
    PhasePoly f = PhasePoly::monomial(2, 1); // q^2 p
    CHECK(partial_q(f) == ParamScalar(2) * PhasePoly::monomial(1, 1));
    CHECK(partial_p(PhasePoly::q(2)) == PhasePoly::zero());

    PhasePoly kin = PhasePoly::monomial(0, 2, ParamScalar::one() / (ParamScalar(2) * m));
    CHECK(partial_p(kin) == PhasePoly::monomial(0, 1, m.inv()));
}

TEST_CASE("leibniz rule on random pairs") {
    testgen::Rng rng(321);
    for (int round = 0; round < 25; ++round) {
        PhasePoly f = testgen::random_phase_poly(rng, 4);
        PhasePoly g = testgen::random_phase_poly(rng, 4);
        CHECK(partial_q(f * g) == partial_q(f) * g + f * partial_q(g));
        CHECK(partial_p(f * g) == partial_p(f) * g + f * partial_p(g));
    }
}

TEST_CASE("poisson bracket basics") {
    CHECK(poisson_bracket(PhasePoly::q(), PhasePoly::p()) == PhasePoly::one());

    PhasePoly h = sho_hamiltonian(m, omega);
    CHECK(poisson_bracket(PhasePoly::q(), h) == PhasePoly::monomial(0, 1, m.inv()));
    CHECK(poisson_bracket(h, h) == PhasePoly::zero());

    testgen::Rng rng(17);
    for (int round = 0; round < 10; ++round) {
        PhasePoly f = testgen::random_phase_poly(rng, 4);
        CHECK(poisson_bracket(f, f) == PhasePoly::zero());
    }
}

TEST_CASE("poisson bracket is bilinear and antisymmetric") {
    testgen::Rng rng(18);
    for (int round = 0; round < 15; ++round) {
        PhasePoly f = testgen::random_phase_poly(rng, 3);
        PhasePoly g = testgen::random_phase_poly(rng, 3);
        PhasePoly h = testgen::random_phase_poly(rng, 3);
        CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
        CHECK(poisson_bracket(f + g, h) == poisson_bracket(f, h) + poisson_bracket(g, h));
    }
}

TEST_CASE("jacobi identity on random triples") {
    testgen::Rng rng(19);
    for (int round = 0; round < 12; ++round) {
        PhasePoly f = testgen::random_phase_poly(rng, 3);
        PhasePoly g = testgen::random_phase_poly(rng, 3);
        PhasePoly h = testgen::random_phase_poly(rng, 3);
        PhasePoly jac = poisson_bracket(f, poisson_bracket(g, h)) +
                        poisson_bracket(g, poisson_bracket(h, f)) +
                        poisson_bracket(h, poisson_bracket(f, g));
        CHECK(jac == PhasePoly::zero());
    }
}

TEST_CASE("sho hamiltonian shape") {
    PhasePoly h = sho_hamiltonian(m, omega);
    CHECK(h.coeff(0, 2) == (ParamScalar(2) * m).inv());
    CHECK(h.coeff(2, 0) == m * omega * omega * ParamScalar(1, 2));
    CHECK(h.degree() == 2);

    // restriction to q = 0 keeps only the kinetic term
    PhasePoly kin;
    for (auto& [k, c] : h.terms())
        if (k.first == 0) kin.add_term(k.first, k.second, c);
    CHECK(kin == PhasePoly::monomial(0, 2, (ParamScalar(2) * m).inv()));
}

TEST_CASE("degree guard rejects runaway products") {
    PhasePoly big = PhasePoly::q(40);
    CHECK_THROWS_AS(big * big, degree_overflow);
    CHECK_NOTHROW(PhasePoly::mul(big, big, 128));
}

TEST_CASE("phase polynomial printing") {
    PhasePoly f = PhasePoly::monomial(1, 1) +
                  PhasePoly(ParamScalar::i() * ParamScalar::hbar() * ParamScalar(1, 2));
    CHECK(to_string(f) == "q*p + (1/2)*i*hbar");
    CHECK(to_string(PhasePoly::zero()) == "0");
    CHECK(to_string(PhasePoly::monomial(0, 1, m.inv())) == "p/m");
}

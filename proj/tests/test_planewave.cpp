#include <catch2/catch_amalgamated.hpp>

#include "starprod/bidiff.hpp"
#include "starprod/planewave.hpp"

using namespace starprod;

namespace {

const ParamScalar sphi = ParamScalar::param(kPhiIndex);
const ParamScalar sxi = ParamScalar::param(kXiIndex);
const ParamScalar sphip = ParamScalar::param(kPhipIndex);
const ParamScalar sxip = ParamScalar::param(kXipIndex);
const ParamScalar sphipp = ParamScalar::param(kPhippIndex);
const ParamScalar sxipp = ParamScalar::param(kXippIndex);
const ParamScalar ih = ParamScalar::i() * ParamScalar::hbar();

/// exp[i(phi q + xi p)/hbar] expanded through total wave-parameter degree deg.
PhasePoly wave_poly(const ParamScalar& phi, const ParamScalar& xi, int deg) {
    PhasePoly arg;
    arg.add_term(1, 0, ParamScalar::i() * phi / ParamScalar::hbar());
    arg.add_term(0, 1, ParamScalar::i() * xi / ParamScalar::hbar());
    PhasePoly acc = PhasePoly::one();
    PhasePoly power = PhasePoly::one();
    for (int k = 1; k <= deg; ++k) {
        power = ParamScalar(1, k) * (power * arg);
        acc += power;
    }
    return acc;
}

/// Drop coefficient monomials whose total degree in the wave parameters
/// exceeds maxdeg (denominators never carry wave parameters here).
PhasePoly truncate_wave(const PhasePoly& f, int maxdeg) {
    PhasePoly out;
    for (auto& [k, c] : f.terms()) {
        ParamPoly num;
        for (auto& [mo, g] : c.num().terms()) {
            int wd = mo.e[kPhiIndex] + mo.e[kXiIndex] + mo.e[kPhipIndex] + mo.e[kXipIndex];
            if (wd <= maxdeg) num.add_term(mo, g);
        }
        if (!num.is_zero()) out.add_term(k.first, k.second, ParamScalar(num, c.den()));
    }
    return out;
}

} // namespace

TEST_CASE("identity element") {
    PlaneWave u = PlaneWave::wave(sphi, sxi);
    PlaneWave e = PlaneWave::wave(ParamScalar::zero(), ParamScalar::zero());
    CHECK(moyal_pw(u, e) == u);
    CHECK(moyal_pw(e, u) == u);
}

TEST_CASE("group phase of the product") {
    PlaneWave u = PlaneWave::wave(sphi, sxi);
    PlaneWave v = PlaneWave::wave(sphip, sxip);
    PlaneWave w = moyal_pw(u, v);
    CHECK(w.phi == sphi + sphip);
    CHECK(w.xi == sxi + sxip);
    CHECK(w.extra == -(ParamScalar::i() * (sphi * sxip - sxi * sphip) /
                       (ParamScalar(2) * ParamScalar::hbar())));
}

TEST_CASE("noncommutativity is a pure phase") {
    PlaneWave u = PlaneWave::wave(sphi, ParamScalar::zero());
    PlaneWave v = PlaneWave::wave(ParamScalar::zero(), sxip);
    PlaneWave uv = moyal_pw(u, v);
    PlaneWave vu = moyal_pw(v, u);
    CHECK(uv.phi == vu.phi);
    CHECK(uv.xi == vu.xi);
    // the two orders differ by exp(-i phi xi'/hbar)
    CHECK(uv.extra - vu.extra == -(ParamScalar::i() * sphi * sxip / ParamScalar::hbar()));
}

TEST_CASE("commutation criterion") {
    CHECK_FALSE(commutes_pw(PlaneWave::wave(sphi, ParamScalar::zero()),
                            PlaneWave::wave(ParamScalar::zero(), sxip)));
    // proportional wave vectors commute: (phi, xi) vs (2 phi, 2 xi)
    PlaneWave u = PlaneWave::wave(sphi, sxi);
    PlaneWave v = PlaneWave::wave(ParamScalar(2) * sphi, ParamScalar(2) * sxi);
    CHECK(commutes_pw(u, v));
}

TEST_CASE("cocycle associativity") {
    PlaneWave u = PlaneWave::wave(sphi, sxi);
    PlaneWave v = PlaneWave::wave(sphip, sxip);
    PlaneWave w = PlaneWave::wave(sphipp, sxipp);
    CHECK(moyal_pw(moyal_pw(u, v), w) == moyal_pw(u, moyal_pw(v, w)));
}

TEST_CASE("closed form agrees with the series product through order 3") {
    const int deg = 3;
    PhasePoly u = wave_poly(sphi, sxi, deg);
    PhasePoly v = wave_poly(sphip, sxip, deg);
    PhasePoly lhs = truncate_wave(apply(BiDiffOp::moyal_star(2 * deg), u, v), deg);

    // phase * combined wave, expanded to the same order; the cocycle carries
    // wave degree 2 so only its first power survives
    ParamScalar phase = -(ParamScalar::i() * (sphi * sxip - sxi * sphip) /
                          (ParamScalar(2) * ParamScalar::hbar()));
    PhasePoly combined = wave_poly(sphi + sphip, sxi + sxip, deg);
    PhasePoly rhs = truncate_wave(combined + phase * combined, deg);

    CHECK(lhs == rhs);
}

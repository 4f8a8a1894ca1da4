#pragma once

#include <string>

#include "starprod/format.hpp"
#include "starprod/scalar.hpp"

namespace starprod {

/// A plane-wave symbol coeff * exp(extra) * exp[i(phi q + xi p)/hbar].
/// Exponential factors compose additively, and left/right derivatives act by
/// scalar multiplication, so the Moyal series sums in closed form on this
/// class.
struct PlaneWave {
    ParamScalar coeff = ParamScalar::one();
    ParamScalar extra = ParamScalar::zero(); // exponent of a scalar phase factor
    ParamScalar phi = ParamScalar::zero();
    ParamScalar xi = ParamScalar::zero();

    static PlaneWave wave(ParamScalar phi, ParamScalar xi) {
        PlaneWave u;
        u.phi = std::move(phi);
        u.xi = std::move(xi);
        return u;
    }

    friend bool operator==(const PlaneWave& u, const PlaneWave& v) {
        return u.coeff == v.coeff && u.extra == v.extra && u.phi == v.phi && u.xi == v.xi;
    }
    friend bool operator!=(const PlaneWave& u, const PlaneWave& v) { return !(u == v); }
};

/// Closed-form Moyal product: the group phase exp[-i(phi xi' - xi phi')/2hbar]
/// times the wave with summed parameters.
inline PlaneWave moyal_pw(const PlaneWave& u, const PlaneWave& v) {
    PlaneWave r;
    r.coeff = u.coeff * v.coeff;
    ParamScalar cocycle = -(ParamScalar::i() * (u.phi * v.xi - u.xi * v.phi) /
                            (ParamScalar(2) * ParamScalar::hbar()));
    r.extra = u.extra + v.extra + cocycle;
    r.phi = u.phi + v.phi;
    r.xi = u.xi + v.xi;
    return r;
}

/// Plane waves commute exactly when phi xi' = xi phi'.
inline bool commutes_pw(const PlaneWave& u, const PlaneWave& v) {
    return moyal_pw(u, v) == moyal_pw(v, u);
}

inline std::string to_string(const PlaneWave& u) {
    std::string out;
    if (!u.coeff.is_one()) out += "(" + format(u.coeff) + ")*";
    if (!u.extra.is_zero()) out += "exp(" + format(u.extra) + ")*";
    out += "exp(i*((" + format(u.phi) + ")*q + (" + format(u.xi) + ")*p)/hbar)";
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const PlaneWave& u) {
    return os << to_string(u);
}

} // namespace starprod

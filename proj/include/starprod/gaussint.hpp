#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <string>
#include <utility>

#include "starprod/error.hpp"

namespace starprod {

using Int = boost::multiprecision::cpp_int;

/// Gaussian integer a + b*i with arbitrary-precision components.
/// Z[i] is a Euclidean domain, which is what makes exact gcd-based
/// normalization of rational-function coefficients possible.
struct GaussInt {
    Int re{0};
    Int im{0};

    GaussInt() = default;
    GaussInt(Int r) : re(std::move(r)) {}
    GaussInt(long r) : re(r) {}
    GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long r, long i) : re(r), im(i) {}

    static GaussInt unit_i() { return GaussInt(Int(0), Int(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussInt conj() const { return GaussInt(re, -im); }
    Int norm() const { return re * re + im * im; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
        return GaussInt(a.re + b.re, a.im + b.im);
    }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
        return GaussInt(a.re - b.re, a.im - b.im);
    }
    friend GaussInt operator-(const GaussInt& a) { return GaussInt(-a.re, -a.im); }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return GaussInt(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

    GaussInt& operator+=(const GaussInt& b) { *this = *this + b; return *this; }
    GaussInt& operator-=(const GaussInt& b) { *this = *this - b; return *this; }
    GaussInt& operator*=(const GaussInt& b) { *this = *this * b; return *this; }
};

/// Round a/b to the nearest integer (|remainder| <= |b|/2).
inline Int round_div(const Int& a, const Int& b) {
    if (b == 0) throw division_by_zero();
    if (b < 0) return round_div(-a, -b);
    Int q = a / b;
    Int r = a - q * b; // same sign as a
    if (2 * r >= b) ++q;
    else if (2 * r <= -b) --q;
    return q;
}

/// Euclidean quotient in Z[i]: the remainder a - q*b has norm <= norm(b)/2.
inline GaussInt gauss_div_round(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw division_by_zero();
    const Int n = b.norm();
    GaussInt prod = a * b.conj();
    return GaussInt(round_div(prod.re, n), round_div(prod.im, n));
}

inline GaussInt gauss_mod(const GaussInt& a, const GaussInt& b) {
    return a - gauss_div_round(a, b) * b;
}

/// Exact quotient; throws if b does not divide a.
inline GaussInt gauss_div_exact(const GaussInt& a, const GaussInt& b) {
    GaussInt q = gauss_div_round(a, b);
    if (!(a - q * b).is_zero()) throw error("inexact Gaussian division");
    return q;
}

inline bool gauss_divides(const GaussInt& b, const GaussInt& a) {
    if (b.is_zero()) return a.is_zero();
    return gauss_mod(a, b).is_zero();
}

/// The canonical associate lies in the quarter-plane re > 0, im >= 0.
/// Exactly one of z, iz, -z, -iz is in that sector for z != 0.
inline GaussInt gauss_unit_to_canonical(const GaussInt& z) {
    if (z.is_zero()) return GaussInt(1);
    auto in_sector = [](const GaussInt& w) { return w.re > 0 && w.im >= 0; };
    if (in_sector(z)) return GaussInt(1);
    GaussInt i = GaussInt::unit_i();
    if (in_sector(i * z)) return i;
    if (in_sector(GaussInt(-1) * z)) return GaussInt(-1);
    return GaussInt(Int(0), Int(-1));
}

inline GaussInt gauss_canonical(const GaussInt& z) { return gauss_unit_to_canonical(z) * z; }

inline GaussInt gauss_gcd(GaussInt a, GaussInt b) {
    while (!b.is_zero()) {
        GaussInt r = gauss_mod(a, b);
        a = b;
        b = r;
    }
    return gauss_canonical(a);
}

inline std::string to_string(const GaussInt& z) {
    auto s = [](const Int& v) { return v.str(); };
    if (z.im == 0) return s(z.re);
    if (z.re == 0) {
        if (z.im == 1) return "i";
        if (z.im == -1) return "-i";
        return s(z.im) + "*i";
    }
    std::string imag = (z.im == 1) ? "i" : (z.im == -1 ? "-i" : s(z.im) + "*i");
    return s(z.re) + (z.im > 0 ? "+" : "") + imag;
}

inline std::ostream& operator<<(std::ostream& os, const GaussInt& z) { return os << to_string(z); }

} // namespace starprod

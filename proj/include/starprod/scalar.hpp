#pragma once

#include <complex>
#include <string>

#include "starprod/polynomial.hpp"

namespace starprod {

/// Exact rational function in the declared parameters over the Gaussian
/// integers. The representation is canonical: numerator and denominator share
/// no factor, and the denominator's leading coefficient is the canonical
/// associate. Equal values therefore have equal representations.
class ParamScalar {
public:
    ParamScalar() : num_(), den_(ParamPoly::one()) {}
    ParamScalar(long n) : num_(ParamPoly(n)), den_(ParamPoly::one()) {}
    ParamScalar(long n, long d) : num_(ParamPoly(n)), den_(ParamPoly(d)) { reduce(); }
    explicit ParamScalar(ParamPoly p) : num_(std::move(p)), den_(ParamPoly::one()) {}
    ParamScalar(ParamPoly n, ParamPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static ParamScalar zero() { return ParamScalar(); }
    static ParamScalar one() { return ParamScalar(1); }
    static ParamScalar i() { return ParamScalar(ParamPoly::imaginary_unit()); }
    static ParamScalar rational(long n, long d) { return ParamScalar(n, d); }
    static ParamScalar param(std::size_t k, int power = 1) {
        return ParamScalar(ParamPoly::variable(k, power));
    }
    static ParamScalar hbar(int power = 1) { return param(kHbarIndex, power); }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_rational_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend ParamScalar operator+(const ParamScalar& a, const ParamScalar& b) {
        // gmp-style: reduce via gcd of the denominators
        ParamPoly g = poly_gcd(a.den_, b.den_);
        ParamPoly bd = div_exact(b.den_, g);
        ParamPoly t = a.num_ * bd + b.num_ * div_exact(a.den_, g);
        if (t.is_zero()) return ParamScalar();
        ParamPoly g2 = poly_gcd(t, g);
        ParamScalar r;
        r.num_ = div_exact(t, g2);
        r.den_ = div_exact(a.den_, g2) * bd;
        r.normalize_unit();
        return r;
    }
    friend ParamScalar operator-(const ParamScalar& a, const ParamScalar& b) { return a + (-b); }
    friend ParamScalar operator-(const ParamScalar& a) {
        ParamScalar r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
        if (a.is_zero() || b.is_zero()) return ParamScalar();
        // cross-reduction keeps the factors small and the result reduced
        ParamPoly g1 = poly_gcd(a.num_, b.den_);
        ParamPoly g2 = poly_gcd(b.num_, a.den_);
        ParamScalar r;
        r.num_ = div_exact(a.num_, g1) * div_exact(b.num_, g2);
        r.den_ = div_exact(a.den_, g2) * div_exact(b.den_, g1);
        r.normalize_unit();
        return r;
    }
    friend ParamScalar operator/(const ParamScalar& a, const ParamScalar& b) { return a * b.inv(); }

    ParamScalar& operator+=(const ParamScalar& b) { *this = *this + b; return *this; }
    ParamScalar& operator-=(const ParamScalar& b) { *this = *this - b; return *this; }
    ParamScalar& operator*=(const ParamScalar& b) { *this = *this * b; return *this; }
    ParamScalar& operator/=(const ParamScalar& b) { *this = *this / b; return *this; }

    ParamScalar inv() const {
        if (num_.is_zero()) throw division_by_zero();
        ParamScalar r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_unit();
        return r;
    }

    friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }

    /// Complex conjugation: all parameters are real, so only i flips sign.
    ParamScalar conjugate() const {
        ParamScalar r;
        r.num_ = num_.conjugate();
        r.den_ = den_.conjugate();
        r.normalize_unit();
        return r;
    }

    bool is_real() const { return conjugate() == *this; }

    /// True when the value, in lowest terms, has a pole at hbar = 0.
    bool has_hbar_pole() const { return den_.divisible_by_hbar(); }

    /// Substitute hbar = 0. Throws when the value has a pole there.
    ParamScalar hbar_limit() const {
        if (has_hbar_pole()) throw singular_classical_limit();
        return ParamScalar(num_.at_hbar_zero(), den_.at_hbar_zero());
    }

    /// True when this/hbar is still regular at hbar = 0.
    bool divisible_by_hbar() const {
        if (num_.is_zero()) return true;
        return num_.hbar_order() - den_.hbar_order() >= 1;
    }

    std::complex<double> eval(const std::array<std::complex<double>, kNumParams>& vals) const {
        std::complex<double> d = den_.eval(vals);
        if (d == std::complex<double>(0.0, 0.0)) throw singular_sample_point();
        return num_.eval(vals) / d;
    }

private:
    void reduce() {
        if (den_.is_zero()) throw division_by_zero();
        if (num_.is_zero()) {
            den_ = ParamPoly::one();
            return;
        }
        ParamPoly g = poly_gcd(num_, den_);
        num_ = div_exact(num_, g);
        den_ = div_exact(den_, g);
        normalize_unit();
    }

    void normalize_unit() {
        if (num_.is_zero()) {
            den_ = ParamPoly::one();
            return;
        }
        GaussInt u = gauss_unit_to_canonical(den_.leading().second);
        if (!u.is_one()) {
            num_ = num_.scaled(u);
            den_ = den_.scaled(u);
        }
    }

    ParamPoly num_;
    ParamPoly den_;
};

} // namespace starprod

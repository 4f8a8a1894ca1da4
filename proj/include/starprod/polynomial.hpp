#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starprod/gaussint.hpp"
#include "starprod/params.hpp"

namespace starprod {

/// Sparse multivariate polynomial in the fixed parameter alphabet, with
/// Gaussian-integer coefficients. Zero coefficients are never stored.
class ParamPoly {
public:
    using TermMap = std::map<Mono, GaussInt>;

    ParamPoly() = default;
    explicit ParamPoly(GaussInt c) {
        if (!c.is_zero()) terms_[Mono::one()] = std::move(c);
    }
    explicit ParamPoly(long c) : ParamPoly(GaussInt(c)) {}

    static ParamPoly zero() { return ParamPoly(); }
    static ParamPoly one() { return ParamPoly(GaussInt(1)); }
    static ParamPoly imaginary_unit() { return ParamPoly(GaussInt::unit_i()); }
    static ParamPoly variable(std::size_t k, int power = 1) {
        ParamPoly p;
        p.terms_[Mono::var(k, power)] = GaussInt(1);
        return p;
    }
    static ParamPoly term(Mono m, GaussInt c) {
        ParamPoly p;
        if (!c.is_zero()) p.terms_[m] = std::move(c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
               terms_.begin()->second.is_one();
    }

    /// Constant term (coefficient of the unit monomial).
    GaussInt constant() const {
        auto it = terms_.find(Mono::one());
        return it == terms_.end() ? GaussInt(0) : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.total());
        return d;
    }

    int degree_in(std::size_t v) const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[v]));
        return d; // -1 for the zero polynomial
    }

    bool depends_on(std::size_t v) const {
        for (auto& [m, c] : terms_)
            if (m.e[v] != 0) return true;
        return false;
    }

    /// Largest variable index present, or nullopt for constants.
    std::optional<std::size_t> main_variable() const {
        std::optional<std::size_t> best;
        for (auto& [m, c] : terms_)
            for (std::size_t k = kNumParams; k-- > 0;) {
                if (m.e[k] != 0) {
                    if (!best || k > *best) best = k;
                    break;
                }
            }
        return best;
    }

    /// Leading term under graded-lex.
    std::pair<Mono, GaussInt> leading() const { return *terms_.rbegin(); }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend ParamPoly operator-(const ParamPoly& a) {
        ParamPoly r;
        for (auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    ParamPoly& operator+=(const ParamPoly& b) { for (auto& [m, c] : b.terms_) add_term(m, c); return *this; }
    ParamPoly& operator-=(const ParamPoly& b) { for (auto& [m, c] : b.terms_) add_term(m, -c); return *this; }
    ParamPoly& operator*=(const ParamPoly& b) { *this = *this * b; return *this; }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

    ParamPoly conjugate() const {
        ParamPoly r;
        for (auto& [m, c] : terms_) r.terms_[m] = c.conj();
        return r;
    }

    ParamPoly scaled(const GaussInt& c) const {
        ParamPoly r;
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    ParamPoly shifted(const Mono& m) const {
        ParamPoly r;
        for (auto& [mm, c] : terms_) r.terms_[mm * m] = c;
        return r;
    }

    /// Substitute hbar = 0, i.e. drop every monomial with positive hbar power.
    ParamPoly at_hbar_zero() const {
        ParamPoly r;
        for (auto& [m, c] : terms_)
            if (m.e[kHbarIndex] == 0) r.terms_[m] = c;
        return r;
    }

    /// Minimum hbar exponent over the monomials (0 for the zero polynomial).
    int hbar_order() const {
        if (terms_.empty()) return 0;
        int d = INT32_MAX;
        for (auto& [m, c] : terms_) d = std::min(d, static_cast<int>(m.e[kHbarIndex]));
        return d;
    }

    bool divisible_by_hbar() const { return !terms_.empty() && hbar_order() >= 1; }

    ParamPoly divided_by_hbar(int power = 1) const {
        ParamPoly r;
        Mono h = Mono::var(kHbarIndex, power);
        for (auto& [m, c] : terms_) r.terms_[m / h] = c;
        return r;
    }

    /// Gaussian gcd of the coefficients (canonical associate).
    GaussInt content() const {
        GaussInt g(0);
        for (auto& [m, c] : terms_) {
            g = gauss_gcd(g, c);
            if (g.is_one()) break;
        }
        return g;
    }

    ParamPoly divided_by(const GaussInt& c) const {
        ParamPoly r;
        for (auto& [m, k] : terms_) r.terms_[m] = gauss_div_exact(k, c);
        return r;
    }

    std::complex<double> eval(const std::array<std::complex<double>, kNumParams>& vals) const {
        std::complex<double> acc{0.0, 0.0};
        for (auto& [m, c] : terms_) {
            std::complex<double> t(static_cast<double>(c.re), static_cast<double>(c.im));
            for (std::size_t k = 0; k < kNumParams; ++k)
                for (int j = 0; j < m.e[k]; ++j) t *= vals[k];
            acc += t;
        }
        return acc;
    }

    void add_term(const Mono& m, const GaussInt& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

/// Multiply by the unit that makes the leading coefficient canonical.
inline ParamPoly canonical_associate(const ParamPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(gauss_unit_to_canonical(p.leading().second));
}

/// Exact multivariate division via leading-term elimination. Returns nullopt
/// when b does not divide a.
inline std::optional<ParamPoly> try_divide(const ParamPoly& a, const ParamPoly& b) {
    if (b.is_zero()) return std::nullopt;
    ParamPoly r = a, q;
    auto [mb, cb] = b.leading();
    while (!r.is_zero()) {
        auto [mr, cr] = r.leading();
        if (!mb.divides(mr) || !gauss_divides(cb, cr)) return std::nullopt;
        Mono mq = mr / mb;
        GaussInt cq = gauss_div_exact(cr, cb);
        q.add_term(mq, cq);
        r -= b.shifted(mq).scaled(cq);
    }
    return q;
}

inline ParamPoly div_exact(const ParamPoly& a, const ParamPoly& b) {
    auto q = try_divide(a, b);
    if (!q) throw error("inexact polynomial division");
    return *q;
}

namespace detail {

/// Coefficient list of p viewed as univariate in variable v; entry d is the
/// polynomial coefficient of v^d (with v removed).
inline std::vector<ParamPoly> univariate_view(const ParamPoly& p, std::size_t v) {
    std::vector<ParamPoly> out(static_cast<std::size_t>(std::max(0, p.degree_in(v) + 1)));
    for (auto& [m, c] : p.terms()) {
        Mono rest = m;
        int d = rest.e[v];
        rest.e[v] = 0;
        out[static_cast<std::size_t>(d)].add_term(rest, c);
    }
    return out;
}

inline ParamPoly from_univariate(const std::vector<ParamPoly>& coeffs, std::size_t v) {
    ParamPoly p;
    for (std::size_t d = 0; d < coeffs.size(); ++d)
        for (auto& [m, c] : coeffs[d].terms()) {
            Mono mm = m;
            mm.e[v] = static_cast<std::uint16_t>(d);
            p.add_term(mm, c);
        }
    return p;
}

/// Pseudo-remainder of a by b with respect to variable v (deg_v b >= 0).
inline ParamPoly pseudo_rem(const ParamPoly& a, const ParamPoly& b, std::size_t v) {
    auto bu = univariate_view(b, v);
    const int db = static_cast<int>(bu.size()) - 1;
    const ParamPoly lb = bu.back();
    ParamPoly r = a;
    while (!r.is_zero()) {
        int dr = r.degree_in(v);
        if (dr < db) break;
        auto ru = univariate_view(r, v);
        ParamPoly lr = ru.back();
        // r <- lb*r - lr * v^(dr-db) * b
        ParamPoly shift = ParamPoly::variable(v, dr - db);
        r = lb * r - lr * shift * b;
    }
    return r;
}

} // namespace detail

ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b);

namespace detail {

/// gcd of the univariate-in-v coefficient polynomials.
inline ParamPoly content_in(const ParamPoly& p, std::size_t v) {
    ParamPoly g;
    for (auto& c : univariate_view(p, v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? canonical_associate(c) : poly_gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

inline ParamPoly monomial_gcd(const ParamPoly& mono, const ParamPoly& other) {
    // exponentwise min over all monomials, gaussian gcd of contents
    Mono g = mono.leading().first;
    for (auto& [m, c] : other.terms())
        for (std::size_t k = 0; k < kNumParams; ++k)
            g.e[k] = std::min(g.e[k], m.e[k]);
    GaussInt cg = gauss_gcd(mono.leading().second, other.content());
    return ParamPoly::term(g, cg);
}

} // namespace detail

/// Gcd in Z[i][params], canonical associate. Primitive PRS with recursion on
/// the main variable; monomial inputs short-circuit (the common case for
/// denominators occurring in practice).
inline ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero()) return canonical_associate(b);
    if (b.is_zero()) return canonical_associate(a);
    if (a.is_monomial()) return canonical_associate(detail::monomial_gcd(a, b));
    if (b.is_monomial()) return canonical_associate(detail::monomial_gcd(b, a));

    auto va = a.main_variable();
    auto vb = b.main_variable();
    if (!va && !vb) return ParamPoly(gauss_gcd(a.constant(), b.constant()));
    std::size_t v = std::max(va.value_or(0), vb.value_or(0));

    ParamPoly ca = detail::content_in(a, v);
    ParamPoly cb = detail::content_in(b, v);
    ParamPoly c = poly_gcd(ca, cb);
    ParamPoly A = div_exact(a, ca);
    ParamPoly B = div_exact(b, cb);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    while (!B.is_zero()) {
        ParamPoly R = detail::pseudo_rem(A, B, v);
        A = B;
        B = R.is_zero() ? R : div_exact(R, detail::content_in(R, v));
    }
    return canonical_associate(c * A);
}

} // namespace starprod

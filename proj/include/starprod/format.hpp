#pragma once

#include <string>
#include <vector>

#include "starprod/scalar.hpp"

namespace starprod {

/// One printable summand with its sign pulled out so terms can be joined
/// as "a + b - c".
struct TermText {
    bool neg = false;
    std::string body;
};

inline std::string join_terms(const std::vector<TermText>& ts) {
    if (ts.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k == 0) {
            if (ts[k].neg) out += "-";
        } else {
            out += ts[k].neg ? " - " : " + ";
        }
        out += ts[k].body;
    }
    return out;
}

namespace detail {

inline std::string rational_text(const Int& n, const Int& d) {
    if (d == 1) return n.str();
    return "(" + n.str() + "/" + d.str() + ")";
}

/// Decompose a Gaussian coefficient over an integer denominator into a sign
/// and a list of "*"-joined factors. |1| factors are dropped.
inline bool gauss_factors(const GaussInt& g, const Int& den, std::vector<std::string>& out) {
    bool neg = false;
    if (g.im == 0) {
        Int n = g.re;
        if (n < 0) { neg = true; n = -n; }
        if (!(n == 1 && den == 1)) out.push_back(rational_text(n, den));
    } else if (g.re == 0) {
        Int n = g.im;
        if (n < 0) { neg = true; n = -n; }
        if (!(n == 1 && den == 1)) out.push_back(rational_text(n, den));
        out.push_back("i");
    } else {
        std::string z = "(" + to_string(g) + ")";
        if (den == 1) out.push_back(z);
        else out.push_back("(" + z + "/" + den.str() + ")");
    }
    return neg;
}

inline std::string join_factors(const std::vector<std::string>& fs) {
    if (fs.empty()) return "1";
    std::string out = fs[0];
    for (std::size_t k = 1; k < fs.size(); ++k) out += "*" + fs[k];
    return out;
}

inline void append_mono_factors(const Mono& m, std::vector<std::string>& out) {
    for (std::size_t k = 0; k < kNumParams; ++k) {
        if (m.e[k] == 0) continue;
        std::string f = std::string(kParamNames[k]);
        if (m.e[k] > 1) f += "^" + std::to_string(m.e[k]);
        out.push_back(f);
    }
}

} // namespace detail

inline std::string format(const ParamPoly& p) {
    std::vector<TermText> ts;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        std::vector<std::string> fs;
        bool neg = detail::gauss_factors(it->second, Int(1), fs);
        detail::append_mono_factors(it->first, fs);
        ts.push_back({neg, detail::join_factors(fs)});
    }
    return join_terms(ts);
}

/// Whether "x/<den>" needs parentheses around den to round-trip.
inline bool denominator_needs_parens(const ParamPoly& den) {
    if (den.terms().size() != 1) return true;
    const auto& [m, c] = *den.terms().begin();
    if (!c.is_one()) return true;
    int nvars = 0;
    for (auto e : m.e) nvars += (e != 0);
    return nvars != 1;
}

/// Render coefficient * symbol as a signed term, e.g. (iħ/2, "") ->
/// "(1/2)*i*hbar" and (1/(2m), "p^2") -> "p^2/(2*m)".
inline TermText format_scalar_times(const ParamScalar& c, const std::string& symbol) {
    const ParamPoly& N = c.num();
    const ParamPoly& D = c.den();

    if (N.is_zero()) return {false, "0"};

    // constant complex denominators (2+2*i and the like occur in lowest
    // terms over Z[i]) take the general num/den route below
    if (D.is_constant() && D.constant().is_real()) {
        Int d = D.constant().re;
        if (N.is_monomial()) {
            auto [m, g] = N.leading();
            std::vector<std::string> fs;
            bool neg = detail::gauss_factors(g, d, fs);
            detail::append_mono_factors(m, fs);
            if (!symbol.empty()) fs.push_back(symbol);
            return {neg, detail::join_factors(fs)};
        }
        std::string num = format(N);
        std::string body = (d == 1) ? "(" + num + ")" : "((" + num + ")/" + d.str() + ")";
        if (!symbol.empty()) body += "*" + symbol;
        return {false, body};
    }

    std::string den = format(D);
    if (denominator_needs_parens(D)) den = "(" + den + ")";
    if (N.is_monomial()) {
        auto [m, g] = N.leading();
        std::vector<std::string> fs;
        bool neg = detail::gauss_factors(g, Int(1), fs);
        detail::append_mono_factors(m, fs);
        if (!symbol.empty()) fs.push_back(symbol);
        return {neg, detail::join_factors(fs) + "/" + den};
    }
    std::string body = "((" + format(N) + ")/" + den + ")";
    if (!symbol.empty()) body += "*" + symbol;
    return {false, body};
}

inline std::string format(const ParamScalar& s) {
    if (s.is_zero()) return "0";
    TermText t = format_scalar_times(s, "");
    return (t.neg ? "-" : "") + t.body;
}

inline std::string to_string(const ParamScalar& s) { return format(s); }
inline std::string to_string(const ParamPoly& p) { return format(p); }

inline std::ostream& operator<<(std::ostream& os, const ParamScalar& s) { return os << format(s); }

} // namespace starprod

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "starprod/format.hpp"
#include "starprod/scalar.hpp"

namespace starprod {

inline constexpr int kDefaultDegreeGuard = 64;

/// Polynomial in the phase-space coordinates q, p over ParamScalar. The
/// representation of all observables handled exactly by the engine.
class PhasePoly {
public:
    using Key = std::pair<int, int>; // (degree in q, degree in p)

    // graded-lex with q more significant; canonical print order is the
    // reverse iteration of this
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            int ta = a.first + a.second, tb = b.first + b.second;
            if (ta != tb) return ta < tb;
            return a < b;
        }
    };
    using TermMap = std::map<Key, ParamScalar, KeyLess>;

    PhasePoly() = default;
    PhasePoly(long c) { add_term(0, 0, ParamScalar(c)); }
    explicit PhasePoly(ParamScalar c) { add_term(0, 0, std::move(c)); }

    static PhasePoly zero() { return PhasePoly(); }
    static PhasePoly one() { return PhasePoly(1); }
    static PhasePoly q(int power = 1) { return monomial(power, 0); }
    static PhasePoly p(int power = 1) { return monomial(0, power); }
    static PhasePoly monomial(int dq, int dp, ParamScalar c = ParamScalar::one()) {
        PhasePoly f;
        f.add_term(dq, dp, std::move(c));
        return f;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = -1;
        for (auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
        return d; // -1 for the zero polynomial
    }

    ParamScalar coeff(int dq, int dp) const {
        auto it = terms_.find({dq, dp});
        return it == terms_.end() ? ParamScalar::zero() : it->second;
    }

    void add_term(int dq, int dp, const ParamScalar& c) {
        if (c.is_zero()) return;
        Key k{dq, dp};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend PhasePoly operator+(const PhasePoly& a, const PhasePoly& b) {
        PhasePoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
        return r;
    }
    friend PhasePoly operator-(const PhasePoly& a, const PhasePoly& b) {
        PhasePoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k.first, k.second, -c);
        return r;
    }
    friend PhasePoly operator-(const PhasePoly& a) {
        PhasePoly r;
        for (auto& [k, c] : a.terms_) r.terms_[k] = -c;
        return r;
    }
    PhasePoly& operator+=(const PhasePoly& b) { for (auto& [k, c] : b.terms_) add_term(k.first, k.second, c); return *this; }
    PhasePoly& operator-=(const PhasePoly& b) { for (auto& [k, c] : b.terms_) add_term(k.first, k.second, -c); return *this; }

    /// Product with an explicit runaway-degree guard; exceeding the guard is
    /// an error, never a silent truncation.
    static PhasePoly mul(const PhasePoly& a, const PhasePoly& b, int degree_guard) {
        if (!a.is_zero() && !b.is_zero()) {
            int d = a.degree() + b.degree();
            if (d > degree_guard) throw degree_overflow(d, degree_guard);
        }
        PhasePoly r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }

    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
        return mul(a, b, kDefaultDegreeGuard);
    }
    friend PhasePoly operator*(const ParamScalar& c, const PhasePoly& a) {
        PhasePoly r;
        for (auto& [k, v] : a.terms_) r.add_term(k.first, k.second, c * v);
        return r;
    }
    PhasePoly& operator*=(const PhasePoly& b) { *this = *this * b; return *this; }

    friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PhasePoly& a, const PhasePoly& b) { return !(a == b); }

    PhasePoly conjugate() const {
        PhasePoly r;
        for (auto& [k, c] : terms_) r.terms_[k] = c.conjugate();
        return r;
    }

    std::complex<double> eval(double q0, double p0,
                              const std::array<std::complex<double>, kNumParams>& vals) const {
        std::complex<double> acc{0.0, 0.0};
        for (auto& [k, c] : terms_) {
            std::complex<double> t = c.eval(vals);
            for (int j = 0; j < k.first; ++j) t *= q0;
            for (int j = 0; j < k.second; ++j) t *= p0;
            acc += t;
        }
        return acc;
    }

private:
    TermMap terms_;
};

inline PhasePoly partial_q(const PhasePoly& f) {
    PhasePoly r;
    for (auto& [k, c] : f.terms())
        if (k.first > 0) r.add_term(k.first - 1, k.second, ParamScalar(k.first) * c);
    return r;
}

inline PhasePoly partial_p(const PhasePoly& f) {
    PhasePoly r;
    for (auto& [k, c] : f.terms())
        if (k.second > 0) r.add_term(k.first, k.second - 1, ParamScalar(k.second) * c);
    return r;
}

/// Iterated derivative d_q^a d_p^b.
inline PhasePoly partial(const PhasePoly& f, int a, int b) {
    PhasePoly r = f;
    for (int j = 0; j < a; ++j) r = partial_q(r);
    for (int j = 0; j < b; ++j) r = partial_p(r);
    return r;
}

inline PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g) {
    return partial_q(f) * partial_p(g) - partial_p(f) * partial_q(g);
}

/// p^2/(2m) + m omega^2 q^2/2 with symbolic or bound mass and frequency.
inline PhasePoly sho_hamiltonian(const ParamScalar& mass = ParamScalar::param(kMassIndex),
                                 const ParamScalar& omega = ParamScalar::param(kOmegaIndex)) {
    PhasePoly h;
    h.add_term(0, 2, ParamScalar::one() / (ParamScalar(2) * mass));
    h.add_term(2, 0, mass * omega * omega * ParamScalar(1, 2));
    return h;
}

inline std::string to_string(const PhasePoly& f) {
    std::vector<TermText> ts;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        std::vector<std::string> fs;
        if (it->first.first > 0)
            fs.push_back(it->first.first == 1 ? "q" : "q^" + std::to_string(it->first.first));
        if (it->first.second > 0)
            fs.push_back(it->first.second == 1 ? "p" : "p^" + std::to_string(it->first.second));
        ts.push_back(format_scalar_times(it->second, fs.empty() ? "" : detail::join_factors(fs)));
    }
    return join_terms(ts);
}

inline std::ostream& operator<<(std::ostream& os, const PhasePoly& f) { return os << to_string(f); }

} // namespace starprod

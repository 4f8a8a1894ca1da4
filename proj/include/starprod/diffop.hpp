#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "starprod/bidiff.hpp"

namespace starprod {

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
    return r;
}

inline Int factorial(int n) {
    Int r = 1;
    for (int j = 2; j <= n; ++j) r *= j;
    return r;
}

/// Transition differential operator T(dq, dp): truncated power series in the
/// two derivative symbols, no dependence on q, p. Invertible iff the constant
/// term is a nonzero scalar.
class DiffOpSeries {
public:
    using Key = std::pair<int, int>; // (power of dq, power of dp)

    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            int ta = a.first + a.second, tb = b.first + b.second;
            if (ta != tb) return ta < tb;
            return a < b;
        }
    };
    using TermMap = std::map<Key, ParamScalar, KeyLess>;

    explicit DiffOpSeries(int order) : order_(order) {}

    static DiffOpSeries identity(int order) {
        DiffOpSeries t(order);
        t.add_term(0, 0, ParamScalar::one());
        return t;
    }

    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ParamScalar coeff(int m, int n) const {
        auto it = terms_.find({m, n});
        return it == terms_.end() ? ParamScalar::zero() : it->second;
    }

    ParamScalar constant_term() const { return coeff(0, 0); }

    void add_term(int m, int n, const ParamScalar& c) {
        if (c.is_zero() || m + n > order_) return;
        Key k{m, n};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend DiffOpSeries operator+(const DiffOpSeries& x, const DiffOpSeries& y) {
        DiffOpSeries r(std::min(x.order_, y.order_));
        for (auto& [k, c] : x.terms_) r.add_term(k.first, k.second, c);
        for (auto& [k, c] : y.terms_) r.add_term(k.first, k.second, c);
        return r;
    }
    friend DiffOpSeries operator-(const DiffOpSeries& x, const DiffOpSeries& y) {
        DiffOpSeries r(std::min(x.order_, y.order_));
        for (auto& [k, c] : x.terms_) r.add_term(k.first, k.second, c);
        for (auto& [k, c] : y.terms_) r.add_term(k.first, k.second, -c);
        return r;
    }
    friend DiffOpSeries operator*(const DiffOpSeries& x, const DiffOpSeries& y) {
        DiffOpSeries r(std::min(x.order_, y.order_));
        for (auto& [kx, cx] : x.terms_)
            for (auto& [ky, cy] : y.terms_) {
                if (kx.first + kx.second + ky.first + ky.second > r.order_) continue;
                r.add_term(kx.first + ky.first, kx.second + ky.second, cx * cy);
            }
        return r;
    }
    friend DiffOpSeries operator*(const ParamScalar& c, const DiffOpSeries& x) {
        DiffOpSeries r(x.order_);
        for (auto& [k, v] : x.terms_) r.add_term(k.first, k.second, c * v);
        return r;
    }

    friend bool operator==(const DiffOpSeries& x, const DiffOpSeries& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const DiffOpSeries& x, const DiffOpSeries& y) { return !(x == y); }

    DiffOpSeries conjugate() const {
        DiffOpSeries r(order_);
        for (auto& [k, c] : terms_) r.terms_[k] = c.conjugate();
        return r;
    }
    bool is_real() const { return conjugate() == *this; }

    /// Series inverse through the truncation order: T * invert(T) = 1.
    DiffOpSeries invert() const {
        ParamScalar c0 = constant_term();
        if (c0.is_zero()) throw not_invertible();
        // T = c0 (1 + N) with N strictly derivative-raising
        DiffOpSeries n(order_);
        ParamScalar c0inv = c0.inv();
        for (auto& [k, c] : terms_)
            if (k != Key{0, 0}) n.add_term(k.first, k.second, c * c0inv);
        DiffOpSeries acc = identity(order_);
        DiffOpSeries power = identity(order_);
        for (int j = 1; j <= order_; ++j) {
            power = power * n;
            if (power.is_zero()) break;
            ParamScalar sign = (j % 2 == 0) ? ParamScalar(1) : ParamScalar(-1);
            acc = acc + sign * power;
        }
        return c0inv * acc;
    }

    /// hbar -> 0 coefficientwise: the part relevant to the classical limit.
    DiffOpSeries hbar_zero_part() const {
        DiffOpSeries r(order_);
        for (auto& [k, c] : terms_) r.add_term(k.first, k.second, c.hbar_limit());
        return r;
    }

    /// Exact action on a phase-space polynomial.
    PhasePoly apply(const PhasePoly& f) const {
        PhasePoly out;
        for (auto& [k, c] : terms_) {
            if (k.first + k.second > f.degree()) continue;
            out += c * partial(f, k.first, k.second);
        }
        return out;
    }

    /// Substitutions into the four-symbol algebra.
    BiDiffOp as_left(int out_order) const {
        BiDiffOp r(out_order);
        for (auto& [k, c] : terms_) r.add_term({k.first, k.second, 0, 0}, c);
        return r;
    }
    BiDiffOp as_right(int out_order) const {
        BiDiffOp r(out_order);
        for (auto& [k, c] : terms_) r.add_term({0, 0, k.first, k.second}, c);
        return r;
    }
    /// T(lq+rq, lp+rp) by exact binomial expansion.
    BiDiffOp as_sum(int out_order) const {
        BiDiffOp r(out_order);
        for (auto& [k, c] : terms_) {
            for (int j = 0; j <= k.first; ++j)
                for (int l = 0; l <= k.second; ++l) {
                    ParamScalar w = c * ParamScalar(ParamPoly(GaussInt(
                                            binomial(k.first, j) * binomial(k.second, l))));
                    r.add_term({j, l, k.first - j, k.second - l}, w);
                }
        }
        return r;
    }

private:
    int order_;
    TermMap terms_;
};

/// The symmetric dressing T^{-1}(left) T(left+right) T^{-1}(right).
inline BiDiffOp odot(const DiffOpSeries& t, int out_order = -1) {
    if (out_order < 0) out_order = t.order();
    DiffOpSeries tinv = t.invert();
    return tinv.as_left(out_order) * t.as_sum(out_order) * tinv.as_right(out_order);
}

/// star_T = moyal_star * odot(T) in the commutative four-symbol algebra.
inline BiDiffOp star_t(const DiffOpSeries& t, int out_order = -1) {
    if (out_order < 0) out_order = t.order();
    return BiDiffOp::moyal_star(out_order) * odot(t, out_order);
}

/// For T0 = theta0 with zero constant term: -theta0(left) + theta0(left+right)
/// - theta0(right), the first-order deviation of odot(1 + theta0) from 1.
inline BiDiffOp first_order_delta(const DiffOpSeries& theta0, int out_order = -1) {
    if (!theta0.constant_term().is_zero())
        throw error("first_order_delta requires a zero constant term");
    if (out_order < 0) out_order = theta0.order();
    return theta0.as_sum(out_order) - theta0.as_left(out_order) - theta0.as_right(out_order);
}

namespace transition {

/// sinc(hbar dp dq / 2): the Born-Jordan transition operator. Term k of the
/// sinc series carries (dq dp)^(2k), total derivative order 4k.
inline DiffOpSeries born_jordan(int order) {
    DiffOpSeries t(order);
    ParamScalar x2 = ParamScalar::hbar(2) * ParamScalar(1, 4); // (hbar/2)^2
    ParamScalar c = ParamScalar::one();
    for (int k = 0; 4 * k <= order; ++k) {
        if (k > 0) {
            c *= -x2;
            c *= ParamScalar(ParamPoly(GaussInt(2 * k * (2 * k + 1)))).inv();
        }
        t.add_term(2 * k, 2 * k, c);
    }
    return t;
}

/// exp(i hbar dp dq / 2): the standard-ordering transition operator.
inline DiffOpSeries standard(int order) {
    DiffOpSeries t(order);
    ParamScalar x = ParamScalar::i() * ParamScalar::hbar() * ParamScalar(1, 2);
    ParamScalar c = ParamScalar::one();
    for (int k = 0; 2 * k <= order; ++k) {
        if (k > 0) c *= x * ParamScalar(1, k);
        t.add_term(k, k, c);
    }
    return t;
}

/// exp{(eta/4)(sigma^2 dq^2 + dp^2/sigma^2)}: Gaussian coarse-graining.
inline DiffOpSeries husimi(const ParamScalar& eta, const ParamScalar& sigma, int order) {
    DiffOpSeries t(order);
    ParamScalar a = eta * sigma * sigma * ParamScalar(1, 4);
    ParamScalar b = eta * ParamScalar(1, 4) / (sigma * sigma);
    for (int j = 0; 2 * j <= order; ++j)
        for (int k = 0; 2 * (j + k) <= order; ++k) {
            ParamScalar c = ParamScalar::one();
            for (int u = 0; u < j; ++u) c *= a;
            for (int u = 0; u < k; ++u) c *= b;
            c *= ParamScalar(ParamPoly(GaussInt(factorial(j) * factorial(k)))).inv();
            t.add_term(2 * j, 2 * k, c);
        }
    return t;
}

/// exp{-(i hbar gamma m / 2) dp^2}: the damped-oscillator transition operator.
inline DiffOpSeries damped(const ParamScalar& gamma, const ParamScalar& mass, int order) {
    DiffOpSeries t(order);
    ParamScalar x = -(ParamScalar::i() * ParamScalar::hbar() * gamma * mass * ParamScalar(1, 2));
    ParamScalar c = ParamScalar::one();
    for (int k = 0; 2 * k <= order; ++k) {
        if (k > 0) c *= x * ParamScalar(1, k);
        t.add_term(0, 2 * k, c);
    }
    return t;
}

/// exp{-eta gamma m dp^2}: the hbar-free damped generalization.
inline DiffOpSeries damped_eta(const ParamScalar& gamma, const ParamScalar& eta,
                               const ParamScalar& mass, int order) {
    DiffOpSeries t(order);
    ParamScalar x = -(eta * gamma * mass);
    ParamScalar c = ParamScalar::one();
    for (int k = 0; 2 * k <= order; ++k) {
        if (k > 0) c *= x * ParamScalar(1, k);
        t.add_term(0, 2 * k, c);
    }
    return t;
}

} // namespace transition

/// The no-go statement for augmented quantization by real transition
/// differential operators: the classical limit of the bracket operator of
/// star_T equals the Poisson operator times odot of the hbar-free part of T.
/// A multiplicative modification, never an additive one.
inline bool verify_classical_limit_theorem(const DiffOpSeries& t, int out_order = -1) {
    if (out_order < 0) out_order = t.order();
    BiDiffOp lhs = moyal_bracket_op(star_t(t, out_order)).classical_limit();
    BiDiffOp rhs = BiDiffOp::poisson(out_order) * odot(t.hbar_zero_part(), out_order);
    return lhs == rhs;
}

/// Series-style order: grades ascending, descending lex inside each grade.
inline std::string to_string(const DiffOpSeries& t) {
    std::vector<std::pair<DiffOpSeries::Key, ParamScalar>> sorted(t.terms().begin(),
                                                                  t.terms().end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        int tx = x.first.first + x.first.second;
        int ty = y.first.first + y.first.second;
        if (tx != ty) return tx < ty;
        return x.first > y.first;
    });
    std::vector<TermText> ts;
    for (auto& [k, c] : sorted) {
        std::vector<std::string> fs;
        if (k.first > 0) fs.push_back(k.first == 1 ? "dq" : "dq^" + std::to_string(k.first));
        if (k.second > 0) fs.push_back(k.second == 1 ? "dp" : "dp^" + std::to_string(k.second));
        ts.push_back(format_scalar_times(c, fs.empty() ? "" : detail::join_factors(fs)));
    }
    return join_terms(ts);
}

inline std::ostream& operator<<(std::ostream& os, const DiffOpSeries& t) {
    return os << to_string(t);
}

} // namespace starprod

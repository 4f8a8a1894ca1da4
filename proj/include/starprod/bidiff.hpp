#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "starprod/phasepoly.hpp"

namespace starprod {

/// Constant-coefficient bi-differential operator: a truncated power series in
/// the four symbols lq, lp, rq, rp (left/right derivatives in q and p). The
/// exponent quadruple (a, b, c, d) stands for lq^a lp^b rq^c rp^d, and the
/// algebra is commutative. Applied to a pair (f, g) a term contributes
/// coeff * (dq^a dp^b f) * (dq^c dp^d g).
class BiDiffOp {
public:
    using Key = std::array<int, 4>;

    struct KeyLess {
        bool operator()(const Key& x, const Key& y) const {
            int tx = x[0] + x[1] + x[2] + x[3];
            int ty = y[0] + y[1] + y[2] + y[3];
            if (tx != ty) return tx < ty;
            return x < y;
        }
    };
    using TermMap = std::map<Key, ParamScalar, KeyLess>;

    explicit BiDiffOp(int order) : order_(order) {}

    static BiDiffOp identity(int order) {
        BiDiffOp d(order);
        d.add_term({0, 0, 0, 0}, ParamScalar::one());
        return d;
    }

    static BiDiffOp term(int order, Key k, ParamScalar c) {
        BiDiffOp d(order);
        d.add_term(k, std::move(c));
        return d;
    }

    /// lq*rp - lp*rq, the bracket {f,g} as a bi-differential operator.
    static BiDiffOp poisson(int order) {
        BiDiffOp d(order);
        d.add_term({1, 0, 0, 1}, ParamScalar::one());
        d.add_term({0, 1, 1, 0}, ParamScalar(-1));
        return d;
    }

    /// poisson - 2 gamma m lp*rp; generates the damped oscillator equations.
    static BiDiffOp damped_poisson(const ParamScalar& gamma, const ParamScalar& mass,
                                   int order) {
        BiDiffOp d = poisson(order);
        d.add_term({0, 1, 0, 1}, ParamScalar(-2) * gamma * mass);
        return d;
    }

    /// exp{(i hbar/2)(lq*rp - lp*rq)} through total derivative order `order`.
    static BiDiffOp moyal_star(int order) {
        BiDiffOp log = poisson(order);
        log.scale(ParamScalar::i() * ParamScalar::hbar() * ParamScalar(1, 2));
        return exp_of(log);
    }

    /// exp of an operator with no constant term, truncated at log.order().
    static BiDiffOp exp_of(const BiDiffOp& log) {
        if (!log.coeff({0, 0, 0, 0}).is_zero())
            throw error("exp of operator with constant term");
        BiDiffOp acc = identity(log.order());
        BiDiffOp power = identity(log.order());
        for (int k = 1; k <= log.order(); ++k) {
            power = power * log;
            if (power.terms_.empty()) break;
            power.scale(ParamScalar(1, k));
            acc += power;
        }
        return acc;
    }

    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ParamScalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? ParamScalar::zero() : it->second;
    }

    void add_term(const Key& k, const ParamScalar& c) {
        if (c.is_zero() || k[0] + k[1] + k[2] + k[3] > order_) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void scale(const ParamScalar& c) {
        if (c.is_zero()) {
            terms_.clear();
            return;
        }
        for (auto& [k, v] : terms_) v *= c;
    }

    friend BiDiffOp operator+(const BiDiffOp& x, const BiDiffOp& y) {
        BiDiffOp r(std::min(x.order_, y.order_));
        for (auto& [k, c] : x.terms_) r.add_term(k, c);
        for (auto& [k, c] : y.terms_) r.add_term(k, c);
        return r;
    }
    friend BiDiffOp operator-(const BiDiffOp& x, const BiDiffOp& y) {
        BiDiffOp r(std::min(x.order_, y.order_));
        for (auto& [k, c] : x.terms_) r.add_term(k, c);
        for (auto& [k, c] : y.terms_) r.add_term(k, -c);
        return r;
    }
    friend BiDiffOp operator-(const BiDiffOp& x) {
        BiDiffOp r = x;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    BiDiffOp& operator+=(const BiDiffOp& y) { *this = *this + y; return *this; }

    friend BiDiffOp operator*(const BiDiffOp& x, const BiDiffOp& y) {
        BiDiffOp r(std::min(x.order_, y.order_));
        for (auto& [kx, cx] : x.terms_) {
            int tx = kx[0] + kx[1] + kx[2] + kx[3];
            for (auto& [ky, cy] : y.terms_) {
                if (tx + ky[0] + ky[1] + ky[2] + ky[3] > r.order_) continue;
                r.add_term({kx[0] + ky[0], kx[1] + ky[1], kx[2] + ky[2], kx[3] + ky[3]},
                           cx * cy);
            }
        }
        return r;
    }
    friend BiDiffOp operator*(const ParamScalar& c, const BiDiffOp& x) {
        BiDiffOp r = x;
        r.scale(c);
        return r;
    }

    /// Term-map equality; truncation orders are the caller's concern.
    friend bool operator==(const BiDiffOp& x, const BiDiffOp& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const BiDiffOp& x, const BiDiffOp& y) { return !(x == y); }

    /// Swap left and right derivatives: f D^t g = g D f.
    BiDiffOp transpose() const {
        BiDiffOp r(order_);
        for (auto& [k, c] : terms_) r.terms_[{k[2], k[3], k[0], k[1]}] = c;
        return r;
    }

    BiDiffOp conjugate() const {
        BiDiffOp r(order_);
        for (auto& [k, c] : terms_) r.terms_[k] = c.conjugate();
        return r;
    }

    /// Complex-conjugate transpose.
    BiDiffOp adjoint() const { return transpose().conjugate(); }

    bool is_symmetric() const { return transpose() == *this; }
    bool is_hermitian() const { return adjoint() == *this; }
    bool is_real() const { return conjugate() == *this; }

    /// hbar -> 0 on every coefficient; throws on a pole.
    BiDiffOp classical_limit() const {
        BiDiffOp r(order_);
        for (auto& [k, c] : terms_) r.add_term(k, c.hbar_limit());
        return r;
    }

private:
    int order_;
    TermMap terms_;
};

/// Exact action of the operator on a pair of polynomials. For exponential-
/// series operators the truncation order must be at least deg f + deg g so
/// that the dropped tail annihilates the arguments.
inline PhasePoly apply(const BiDiffOp& op, const PhasePoly& f, const PhasePoly& g) {
    std::map<std::pair<int, int>, PhasePoly> df, dg;
    auto partial_memo = [](std::map<std::pair<int, int>, PhasePoly>& memo,
                           const PhasePoly& base, int a, int b) -> const PhasePoly& {
        if (!memo.count({0, 0})) memo[{0, 0}] = base;
        for (int x = 1; x <= a; ++x)
            if (!memo.count({x, 0})) memo[{x, 0}] = partial_q(memo[{x - 1, 0}]);
        for (int y = 1; y <= b; ++y)
            if (!memo.count({a, y})) memo[{a, y}] = partial_p(memo[{a, y - 1}]);
        return memo[{a, b}];
    };

    const int degf = f.degree(), degg = g.degree();
    PhasePoly out;
    for (auto& [k, c] : op.terms()) {
        if (k[0] + k[1] > degf || k[2] + k[3] > degg) continue;
        const PhasePoly& lf = partial_memo(df, f, k[0], k[1]);
        const PhasePoly& rg = partial_memo(dg, g, k[2], k[3]);
        out += c * (lf * rg);
    }
    return out;
}

/// (star - star^t)/(i hbar). Every coefficient of the difference must stay
/// regular at hbar = 0 after the division.
inline BiDiffOp moyal_bracket_op(const BiDiffOp& star) {
    BiDiffOp diff = star - star.transpose();
    const ParamScalar ih = ParamScalar::i() * ParamScalar::hbar();
    BiDiffOp r(diff.order());
    for (auto& [k, c] : diff.terms()) {
        ParamScalar v = c / ih;
        if (v.has_hbar_pole()) throw not_hbar_divisible();
        r.add_term(k, v);
    }
    return r;
}

/// Exact associativity probe: (f*g)*h == f*(g*h) under the given star.
/// The operator's truncation order must cover deg f + deg g + deg h.
inline bool associativity_check(const BiDiffOp& star, const PhasePoly& f, const PhasePoly& g,
                                const PhasePoly& h) {
    return apply(star, apply(star, f, g), h) == apply(star, f, apply(star, g, h));
}

/// Series-style order: grades ascending, descending lex inside each grade.
inline std::string to_string(const BiDiffOp& op) {
    static const char* sym[4] = {"lq", "lp", "rq", "rp"};
    std::vector<std::pair<BiDiffOp::Key, ParamScalar>> sorted(op.terms().begin(),
                                                              op.terms().end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        int tx = x.first[0] + x.first[1] + x.first[2] + x.first[3];
        int ty = y.first[0] + y.first[1] + y.first[2] + y.first[3];
        if (tx != ty) return tx < ty;
        return x.first > y.first;
    });
    std::vector<TermText> ts;
    for (auto& [k, c] : sorted) {
        std::vector<std::string> fs;
        for (int j = 0; j < 4; ++j) {
            if (k[j] == 0) continue;
            std::string f = sym[j];
            if (k[j] > 1) f += "^" + std::to_string(k[j]);
            fs.push_back(f);
        }
        ts.push_back(format_scalar_times(c, fs.empty() ? "" : detail::join_factors(fs)));
    }
    return join_terms(ts);
}

inline std::ostream& operator<<(std::ostream& os, const BiDiffOp& op) { return os << to_string(op); }

} // namespace starprod

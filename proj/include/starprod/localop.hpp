#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "starprod/bidiff.hpp"
#include "starprod/diffop.hpp"
#include "starprod/expr.hpp"

namespace starprod {

/// Polynomial on the doubled phase space (q1, p1, q2, p2) over ParamScalar;
/// the workspace for pair operators and the midpoint lift.
class Poly4 {
public:
    using Key = std::array<int, 4>; // exponents of q1 p1 q2 p2

    struct KeyLess {
        bool operator()(const Key& x, const Key& y) const {
            int tx = x[0] + x[1] + x[2] + x[3];
            int ty = y[0] + y[1] + y[2] + y[3];
            if (tx != ty) return tx < ty;
            return x < y;
        }
    };
    using TermMap = std::map<Key, ParamScalar, KeyLess>;

    Poly4() = default;
    explicit Poly4(ParamScalar c) { add_term({0, 0, 0, 0}, std::move(c)); }

    /// f(q1,p1) * g(q2,p2).
    static Poly4 from_pair(const PhasePoly& f, const PhasePoly& g) {
        Poly4 r;
        for (auto& [kf, cf] : f.terms())
            for (auto& [kg, cg] : g.terms())
                r.add_term({kf.first, kf.second, kg.first, kg.second}, cf * cg);
        return r;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key& k, const ParamScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Poly4 operator+(const Poly4& x, const Poly4& y) {
        Poly4 r = x;
        for (auto& [k, c] : y.terms_) r.add_term(k, c);
        return r;
    }
    Poly4& operator+=(const Poly4& y) { for (auto& [k, c] : y.terms_) add_term(k, c); return *this; }
    friend Poly4 operator*(const Poly4& x, const Poly4& y) {
        Poly4 r;
        for (auto& [kx, cx] : x.terms_)
            for (auto& [ky, cy] : y.terms_)
                r.add_term({kx[0] + ky[0], kx[1] + ky[1], kx[2] + ky[2], kx[3] + ky[3]},
                           cx * cy);
        return r;
    }
    friend Poly4 operator*(const ParamScalar& c, const Poly4& x) {
        Poly4 r;
        for (auto& [k, v] : x.terms_) r.add_term(k, c * v);
        return r;
    }
    friend bool operator==(const Poly4& x, const Poly4& y) { return x.terms_ == y.terms_; }

    Poly4 derivative(int var) const {
        Poly4 r;
        for (auto& [k, c] : terms_) {
            if (k[var] == 0) continue;
            Key kk = k;
            kk[var] -= 1;
            r.add_term(kk, ParamScalar(k[var]) * c);
        }
        return r;
    }

    /// (dq1+dq2)^m (dp1+dp2)^n by binomial expansion.
    Poly4 sum_derivative(int m, int n) const {
        Poly4 acc = *this;
        for (int j = 0; j < m; ++j) acc = acc.derivative(0) + acc.derivative(2);
        for (int j = 0; j < n; ++j) acc = acc.derivative(1) + acc.derivative(3);
        return acc;
    }

    /// Identification map: q1 = q2 = q, p1 = p2 = p.
    PhasePoly identify() const {
        PhasePoly r;
        for (auto& [k, c] : terms_) r.add_term(k[0] + k[2], k[1] + k[3], c);
        return r;
    }

private:
    TermMap terms_;
};

/// The two-point moyal action kept unidentified:
/// exp[(i hbar/2)(dq1 dp2 - dp1 dq2)] F(1) G(2).
inline Poly4 moyal_pair(const PhasePoly& f, const PhasePoly& g) {
    const int total = std::max(f.degree(), 0) + std::max(g.degree(), 0);
    Poly4 acc = Poly4::from_pair(f, g);
    Poly4 out = acc;
    ParamScalar step = ParamScalar::i() * ParamScalar::hbar() * ParamScalar(1, 2);
    ParamScalar coeff = ParamScalar::one();
    for (int n = 1; n <= total; ++n) {
        acc = acc.derivative(0).derivative(3) + (ParamScalar(-1) * acc.derivative(1).derivative(2));
        if (acc.is_zero()) break;
        coeff *= step * ParamScalar(1, n);
        out += coeff * acc;
    }
    return out;
}

/// Local transition operator T(q, p, dq, dp) in normal form: every term is a
/// coefficient function times dq^m dp^n with all derivatives on the right.
/// Exact flavor carries polynomial coefficients, numeric flavor expression
/// coefficients (arctan, ln, quotients).
class LocalDiffOp {
public:
    enum class Flavor { exact, numeric };
    using Key = std::pair<int, int>;

    LocalDiffOp() : flavor_(Flavor::exact) {}
    explicit LocalDiffOp(Flavor f) : flavor_(f) {}

    static LocalDiffOp identity() {
        LocalDiffOp t;
        t.add_term(0, 0, PhasePoly::one());
        return t;
    }

    Flavor flavor() const { return flavor_; }
    bool is_exact() const { return flavor_ == Flavor::exact; }

    const std::map<Key, PhasePoly>& poly_terms() const { return pterms_; }
    const std::map<Key, Expr>& expr_terms() const { return eterms_; }

    void add_term(int m, int n, const PhasePoly& coeff) {
        if (!is_exact()) throw error("polynomial term added to a numeric operator");
        if (coeff.is_zero()) return;
        auto it = pterms_.find({m, n});
        if (it == pterms_.end()) {
            pterms_.emplace(Key{m, n}, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) pterms_.erase(it);
        }
    }

    void add_term(int m, int n, const Expr& coeff) {
        if (is_exact() && pterms_.empty()) flavor_ = Flavor::numeric;
        if (!pterms_.empty()) throw error("mixed exact and numeric coefficients");
        flavor_ = Flavor::numeric;
        if (coeff.is_zero()) return;
        auto it = eterms_.find({m, n});
        if (it == eterms_.end()) eterms_.emplace(Key{m, n}, coeff);
        else it->second = it->second + coeff;
    }

    int total_order() const {
        int d = 0;
        for (auto& [k, c] : pterms_) d = std::max(d, k.first + k.second);
        for (auto& [k, c] : eterms_) d = std::max(d, k.first + k.second);
        return d;
    }

    /// Exact application to a polynomial observable.
    PhasePoly apply(const PhasePoly& f) const {
        if (!is_exact()) throw error("exact application of a numeric operator");
        PhasePoly out;
        for (auto& [k, c] : pterms_) out += c * partial(f, k.first, k.second);
        return out;
    }

    /// Numeric-flavor application to a polynomial, yielding an expression.
    Expr apply_expr(const PhasePoly& f) const {
        Expr out;
        if (is_exact()) {
            return expr_from_phasepoly(apply(f));
        }
        for (auto& [k, c] : eterms_) {
            PhasePoly d = partial(f, k.first, k.second);
            if (d.is_zero()) continue;
            out = out + c * expr_from_phasepoly(d);
        }
        return out;
    }

    /// Coefficient of dq^m dp^n, as an expression (zero when absent).
    Expr coeff_expr(int m, int n) const {
        if (is_exact()) {
            auto it = pterms_.find({m, n});
            return it == pterms_.end() ? Expr() : expr_from_phasepoly(it->second);
        }
        auto it = eterms_.find({m, n});
        return it == eterms_.end() ? Expr() : it->second;
    }

    PhasePoly coeff_poly(int m, int n) const {
        if (!is_exact()) throw error("polynomial coefficient of a numeric operator");
        auto it = pterms_.find({m, n});
        return it == pterms_.end() ? PhasePoly::zero() : it->second;
    }

private:
    Flavor flavor_;
    std::map<Key, PhasePoly> pterms_;
    std::map<Key, Expr> eterms_;
};

/// T lifted to the doubled phase space: coefficients evaluated at the convex
/// combination (alpha q1 + (1-alpha) q2, beta p1 + (1-beta) p2), derivatives
/// replaced by sums. alpha = beta = 1/2 is the symmetric choice.
class PairOperator {
public:
    PairOperator(ParamScalar alpha, ParamScalar beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)) {}

    void add_term(const PhasePoly& coeff, int m, int n) { terms_.push_back({coeff, m, n}); }

    Poly4 apply(const Poly4& input) const {
        Poly4 out;
        for (auto& t : terms_) {
            Poly4 derived = input.sum_derivative(t.m, t.n);
            out += lift_coeff(t.coeff) * derived;
        }
        return out;
    }

    PhasePoly apply_pair(const PhasePoly& f, const PhasePoly& g) const {
        return apply(Poly4::from_pair(f, g)).identify();
    }

private:
    struct Term {
        PhasePoly coeff;
        int m, n;
    };

    /// Substitute the convex combinations into a coefficient polynomial.
    Poly4 lift_coeff(const PhasePoly& c) const {
        ParamScalar ac = ParamScalar::one() - alpha_;
        ParamScalar bc = ParamScalar::one() - beta_;
        Poly4 out;
        for (auto& [k, v] : c.terms()) {
            // (alpha q1 + (1-alpha) q2)^u (beta p1 + (1-beta) p2)^v
            Poly4 qpart(ParamScalar::one());
            for (int j = 0; j < k.first; ++j) {
                Poly4 lin;
                lin.add_term({1, 0, 0, 0}, alpha_);
                lin.add_term({0, 0, 1, 0}, ac);
                qpart = qpart * lin;
            }
            Poly4 ppart(ParamScalar::one());
            for (int j = 0; j < k.second; ++j) {
                Poly4 lin;
                lin.add_term({0, 1, 0, 0}, beta_);
                lin.add_term({0, 0, 0, 1}, bc);
                ppart = ppart * lin;
            }
            out += v * (qpart * ppart);
        }
        return out;
    }

    ParamScalar alpha_, beta_;
    std::vector<Term> terms_;
};

inline PairOperator midpoint_lift(const LocalDiffOp& t,
                                  ParamScalar alpha = ParamScalar(1, 2),
                                  ParamScalar beta = ParamScalar(1, 2)) {
    if (!t.is_exact()) throw error("midpoint lift requires exact coefficients");
    PairOperator out(std::move(alpha), std::move(beta));
    for (auto& [k, c] : t.poly_terms()) out.add_term(c, k.first, k.second);
    return out;
}

/// I(1,2) (dq1+dq2)^m q1^a1 q2^a2 == dq^m q^(a1+a2), checked exactly.
inline bool midpoint_identity_check(int m, int a1, int a2) {
    Poly4 x;
    x.add_term({a1, 0, a2, 0}, ParamScalar::one());
    PhasePoly lhs = x.sum_derivative(m, 0).identify();
    PhasePoly rhs = partial(PhasePoly::q(a1 + a2), m, 0);
    return lhs == rhs;
}

struct LocalStarResult {
    PhasePoly value;
    bool exact = true; // false: the geometric inversion was truncated
};

/// The conjectured local product: I(1,2) T(1,2) star0(1,2) [T^-1 f](1)
/// [T^-1 g](2), with T = 1 + theta and T^-1 summed as a geometric series
/// through order K. Exact iff theta^(K+1) annihilates both inputs.
inline LocalStarResult local_star_apply(const LocalDiffOp& t, const PhasePoly& f,
                                        const PhasePoly& g, int inversion_order,
                                        ParamScalar alpha = ParamScalar(1, 2),
                                        ParamScalar beta = ParamScalar(1, 2)) {
    if (!t.is_exact()) throw error("local star product requires exact coefficients");
    if (t.coeff_poly(0, 0) != PhasePoly::one())
        throw error("local star product requires T = 1 + theta with unit constant term");

    LocalDiffOp theta;
    for (auto& [k, c] : t.poly_terms())
        if (k != LocalDiffOp::Key{0, 0}) theta.add_term(k.first, k.second, c);

    auto invert = [&](const PhasePoly& x, bool& exact_flag) {
        PhasePoly acc = x;
        PhasePoly power = x;
        for (int k = 1; k <= inversion_order; ++k) {
            power = theta.apply(power);
            if (power.is_zero()) return acc;
            acc += (k % 2 == 1) ? -power : power;
        }
        if (!theta.apply(power).is_zero()) exact_flag = false;
        return acc;
    };

    LocalStarResult res;
    res.exact = true;
    PhasePoly fi = invert(f, res.exact);
    PhasePoly gi = invert(g, res.exact);
    Poly4 star = moyal_pair(fi, gi);
    res.value = midpoint_lift(t, std::move(alpha), std::move(beta)).apply(star).identify();
    return res;
}

/// A_theta(x) = theta({x,H}) - {theta(x),H} - {x,theta(H)}; the terms by
/// which the weak local transition operator augments the classical equation
/// of motion for the coordinate x.
struct Augmentation {
    bool exact;
    PhasePoly poly; // exact flavor
    Expr expr;      // numeric flavor
};

enum class Coordinate { q, p };

inline Augmentation augmentation(const LocalDiffOp& theta, const PhasePoly& ham, Coordinate x) {
    PhasePoly xv = (x == Coordinate::q) ? PhasePoly::q() : PhasePoly::p();
    PhasePoly br = poisson_bracket(xv, ham);
    Augmentation out;
    out.exact = theta.is_exact();
    if (theta.is_exact()) {
        out.poly = theta.apply(br) - poisson_bracket(theta.apply(xv), ham) -
                   poisson_bracket(xv, theta.apply(ham));
        return out;
    }
    // theta(x) is the first-order coefficient in the matching slot
    Expr theta_x = (x == Coordinate::q) ? theta.coeff_expr(1, 0) : theta.coeff_expr(0, 1);
    Expr t1 = theta.apply_expr(br);
    Expr dq_h = expr_from_phasepoly(partial_q(ham));
    Expr dp_h = expr_from_phasepoly(partial_p(ham));
    Expr t2 = diff_q(theta_x) * dp_h - diff_p(theta_x) * dq_h;
    Expr theta_h = theta.apply_expr(ham);
    Expr t3 = (x == Coordinate::q) ? diff_p(theta_h) : -diff_q(theta_h);
    out.expr = t1 - t2 - t3;
    return out;
}

/// The explicit sums for the ansatz theta = sum theta_{m,n} dq^m dp^n:
///   A(q) = -{theta_{1,0}, H} - sum (dp theta_{m,n}) (dq^m dp^n H)
///   A(p) = -{theta_{0,1}, H} + sum (dq theta_{m,n}) (dq^m dp^n H)
inline Augmentation ansatz_augmentation(const LocalDiffOp& theta, const PhasePoly& ham,
                                        Coordinate x) {
    Augmentation out;
    out.exact = theta.is_exact();
    if (theta.is_exact()) {
        PhasePoly first = (x == Coordinate::q) ? theta.coeff_poly(1, 0) : theta.coeff_poly(0, 1);
        PhasePoly acc = -poisson_bracket(first, ham);
        for (auto& [k, c] : theta.poly_terms()) {
            PhasePoly dh = partial(ham, k.first, k.second);
            if (x == Coordinate::q)
                acc -= partial_p(c) * dh;
            else
                acc += partial_q(c) * dh;
        }
        out.poly = acc;
        return out;
    }
    Expr first = (x == Coordinate::q) ? theta.coeff_expr(1, 0) : theta.coeff_expr(0, 1);
    Expr dq_h = expr_from_phasepoly(partial_q(ham));
    Expr dp_h = expr_from_phasepoly(partial_p(ham));
    Expr acc = -(diff_q(first) * dp_h - diff_p(first) * dq_h);
    for (auto& [k, c] : theta.expr_terms()) {
        PhasePoly dh = partial(ham, k.first, k.second);
        if (dh.is_zero()) continue;
        Expr dhe = expr_from_phasepoly(dh);
        if (x == Coordinate::q)
            acc = acc - diff_p(c) * dhe;
        else
            acc = acc + diff_q(c) * dhe;
    }
    out.expr = acc;
    return out;
}

/// The weakly damped oscillator theta: theta_{0,1} dp + theta_{0,2} dp^2 with
///   theta_{0,1} = (2 gamma/omega) [p arctan(m omega q / p)
///                 + (m omega q / 2) ln(p^2 + m^2 omega^2 q^2)]
///   theta_{0,2} = -(gamma/omega) [2 m H arctan(m omega q / p) + m omega q p]
/// The closed form of the dp-antiderivative is validated by jet
/// differentiation in the tests.
inline LocalDiffOp damped_theta(const Expr& mass, const Expr& omega, const Expr& gamma) {
    Expr q = Expr::q(), p = Expr::p();
    Expr a = mass * omega * q;
    Expr atn = Expr::arctan(a / p);
    Expr r2 = p * p + a * a;
    Expr two = Expr::integer(2);
    Expr theta01 = (two * gamma / omega) * (p * atn + (a / two) * Expr::ln(r2));
    Expr ham = (p * p) / (two * mass) + mass * omega * omega * q * q / two;
    Expr theta02 = -(gamma / omega) * (two * mass * ham * atn + a * p);
    LocalDiffOp theta(LocalDiffOp::Flavor::numeric);
    theta.add_term(0, 1, theta01);
    theta.add_term(0, 2, theta02);
    return theta;
}

} // namespace starprod

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <string>
#include <utility>

#include "starprod/error.hpp"
#include "starprod/params.hpp"
#include "starprod/phasepoly.hpp"

namespace starprod {

using Rational = boost::multiprecision::cpp_rational;

/// Expression tree over {rational constant, parameter, q, p, +, -, *, /,
/// integer power, arctan, ln}. Immutable; subtrees are shared.
class Expr {
public:
    enum class Kind { constant, param, q, p, add, sub, mul, div, pow, atan, ln };

    struct Node {
        Kind kind;
        Rational value{};      // constant
        std::size_t param{};   // param
        int exponent{};        // pow
        std::shared_ptr<const Node> a, b;
    };

    Expr() : node_(constant_node(Rational(0))) {}

    static Expr constant(Rational v) { return Expr(constant_node(std::move(v))); }
    static Expr integer(long v) { return constant(Rational(v)); }
    static Expr rational(long n, long d) { return constant(Rational(n, d)); }
    static Expr param(std::size_t k) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::param;
        n->param = k;
        return Expr(std::move(n));
    }
    static Expr q() { return leaf(Kind::q); }
    static Expr p() { return leaf(Kind::p); }

    Kind kind() const { return node_->kind; }
    const Node& node() const { return *node_; }

    /// Child subtrees (null for leaves).
    Expr child_a() const {
        if (!node_->a) throw error("expression node has no first child");
        return Expr(node_->a);
    }
    Expr child_b() const {
        if (!node_->b) throw error("expression node has no second child");
        return Expr(node_->b);
    }

    bool is_constant() const { return node_->kind == Kind::constant; }
    bool is_zero() const { return is_constant() && node_->value == 0; }
    bool is_one() const { return is_constant() && node_->value == 1; }

    friend Expr operator+(const Expr& x, const Expr& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.is_constant() && y.is_constant())
            return constant(x.node_->value + y.node_->value);
        return binary(Kind::add, x, y);
    }
    friend Expr operator-(const Expr& x, const Expr& y) {
        if (y.is_zero()) return x;
        if (x.is_constant() && y.is_constant())
            return constant(x.node_->value - y.node_->value);
        return binary(Kind::sub, x, y);
    }
    friend Expr operator-(const Expr& x) { return Expr::integer(0) - x; }
    friend Expr operator*(const Expr& x, const Expr& y) {
        if (x.is_zero() || y.is_zero()) return Expr();
        if (x.is_one()) return y;
        if (y.is_one()) return x;
        if (x.is_constant() && y.is_constant())
            return constant(x.node_->value * y.node_->value);
        return binary(Kind::mul, x, y);
    }
    friend Expr operator/(const Expr& x, const Expr& y) {
        if (y.is_one()) return x;
        if (y.is_zero()) throw division_by_zero();
        if (x.is_zero()) return x;
        if (x.is_constant() && y.is_constant())
            return constant(x.node_->value / y.node_->value);
        return binary(Kind::div, x, y);
    }

    static Expr pow(const Expr& x, int e) {
        if (e == 1) return x;
        if (e == 0) return integer(1);
        auto n = std::make_shared<Node>();
        n->kind = Kind::pow;
        n->exponent = e;
        n->a = x.node_;
        return Expr(std::move(n));
    }
    static Expr arctan(const Expr& x) { return unary(Kind::atan, x); }
    static Expr ln(const Expr& x) { return unary(Kind::ln, x); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const Node> constant_node(Rational v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::constant;
        n->value = std::move(v);
        return n;
    }
    static Expr leaf(Kind k) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        return Expr(std::move(n));
    }
    static Expr unary(Kind k, const Expr& a) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = a.node_;
        return Expr(std::move(n));
    }
    static Expr binary(Kind k, const Expr& a, const Expr& b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = a.node_;
        n->b = b.node_;
        return Expr(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

/// Formal partial derivative with respect to q (wrt_q) or p.
inline Expr diff(const Expr& e, bool wrt_q) {
    const Expr::Node& n = e.node();
    switch (n.kind) {
    case Expr::Kind::constant:
    case Expr::Kind::param:
        return Expr();
    case Expr::Kind::q:
        return wrt_q ? Expr::integer(1) : Expr();
    case Expr::Kind::p:
        return wrt_q ? Expr() : Expr::integer(1);
    case Expr::Kind::add:
        return diff(e.child_a(), wrt_q) + diff(e.child_b(), wrt_q);
    case Expr::Kind::sub:
        return diff(e.child_a(), wrt_q) - diff(e.child_b(), wrt_q);
    case Expr::Kind::mul: {
        Expr a = e.child_a(), b = e.child_b();
        return diff(a, wrt_q) * b + a * diff(b, wrt_q);
    }
    case Expr::Kind::div: {
        Expr a = e.child_a(), b = e.child_b();
        return (diff(a, wrt_q) * b - a * diff(b, wrt_q)) / (b * b);
    }
    case Expr::Kind::pow: {
        Expr a = e.child_a();
        return Expr::integer(n.exponent) * Expr::pow(a, n.exponent - 1) * diff(a, wrt_q);
    }
    case Expr::Kind::atan: {
        Expr a = e.child_a();
        return diff(a, wrt_q) / (Expr::integer(1) + a * a);
    }
    case Expr::Kind::ln: {
        Expr a = e.child_a();
        return diff(a, wrt_q) / a;
    }
    }
    throw error("unreachable expression kind");
}

inline Expr diff_q(const Expr& e) { return diff(e, true); }
inline Expr diff_p(const Expr& e) { return diff(e, false); }

/// Lift an exact phase-space polynomial into the expression tree. The
/// coefficients must be real (the numeric layer has no imaginary unit).
inline Expr expr_from_scalar(const ParamScalar& c) {
    auto poly_to_expr = [](const ParamPoly& p) {
        Expr acc;
        for (auto& [mo, g] : p.terms()) {
            if (g.im != 0) throw error("imaginary coefficient in numeric context");
            Expr t = Expr::constant(Rational(g.re));
            for (std::size_t k = 0; k < kNumParams; ++k)
                if (mo.e[k] > 0) t = t * Expr::pow(Expr::param(k), mo.e[k]);
            acc = acc + t;
        }
        return acc;
    };
    Expr num = poly_to_expr(c.num());
    if (c.den().is_one()) return num;
    return num / poly_to_expr(c.den());
}

inline Expr expr_from_phasepoly(const PhasePoly& f) {
    Expr acc;
    for (auto& [k, c] : f.terms()) {
        Expr t = expr_from_scalar(c);
        if (k.first > 0) t = t * Expr::pow(Expr::q(), k.first);
        if (k.second > 0) t = t * Expr::pow(Expr::p(), k.second);
        acc = acc + t;
    }
    return acc;
}

inline std::string to_string(const Expr& e) {
    const Expr::Node& n = e.node();
    auto paren = [](const std::string& s) { return "(" + s + ")"; };
    switch (n.kind) {
    case Expr::Kind::constant: {
        Rational v = n.value;
        std::string s = boost::multiprecision::numerator(v).str();
        if (boost::multiprecision::denominator(v) != 1)
            s += "/" + boost::multiprecision::denominator(v).str();
        return (v < 0 || boost::multiprecision::denominator(v) != 1) ? paren(s) : s;
    }
    case Expr::Kind::param:
        return std::string(kParamNames[n.param]);
    case Expr::Kind::q:
        return "q";
    case Expr::Kind::p:
        return "p";
    case Expr::Kind::add:
        return paren(to_string(e.child_a()) + " + " + to_string(e.child_b()));
    case Expr::Kind::sub:
        return paren(to_string(e.child_a()) + " - " + to_string(e.child_b()));
    case Expr::Kind::mul:
        return to_string(e.child_a()) + "*" + to_string(e.child_b());
    case Expr::Kind::div:
        return to_string(e.child_a()) + "/" + paren(to_string(e.child_b()));
    case Expr::Kind::pow:
        return paren(to_string(e.child_a())) + "^" + std::to_string(n.exponent);
    case Expr::Kind::atan:
        return "arctan(" + to_string(e.child_a()) + ")";
    case Expr::Kind::ln:
        return "ln(" + to_string(e.child_a()) + ")";
    }
    throw error("unreachable expression kind");
}

} // namespace starprod

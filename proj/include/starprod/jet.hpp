#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string_view>
#include <vector>

#include "starprod/expr.hpp"

namespace starprod {

/// Bound parameter values for numeric evaluation; unbound entries are NaN
/// and using one is an error.
using ParamValues = std::array<double, kNumParams>;

inline ParamValues no_params() {
    ParamValues v{};
    v.fill(std::numeric_limits<double>::quiet_NaN());
    return v;
}

inline ParamValues bind_params(std::initializer_list<std::pair<std::string_view, double>> vals) {
    ParamValues v = no_params();
    for (auto& [name, x] : vals) {
        auto k = param_index(name);
        if (!k) throw error("unknown parameter: " + std::string(name));
        v[*k] = x;
    }
    return v;
}

/// Truncated bivariate Taylor expansion at a point: all mixed partials
/// d_q^a d_p^b through total order k. Arithmetic mirrors function arithmetic
/// (Leibniz convolution for products, univariate re-expansion for arctan, ln
/// and reciprocals). Internally stores Taylor coefficients; the observable
/// accessors return derivatives.
class Jet {
public:
    Jet(int order, double q0, double p0)
        : order_(order), q0_(q0), p0_(p0), c_(size(order), 0.0) {}

    static Jet constant(int order, double q0, double p0, double v) {
        Jet j(order, q0, p0);
        j.c_[0] = v;
        return j;
    }
    static Jet coordinate_q(int order, double q0, double p0) {
        Jet j(order, q0, p0);
        j.c_[0] = q0;
        if (order >= 1) j.c_[idx(1, 0)] = 1.0;
        return j;
    }
    static Jet coordinate_p(int order, double q0, double p0) {
        Jet j(order, q0, p0);
        j.c_[0] = p0;
        if (order >= 1) j.c_[idx(0, 1)] = 1.0;
        return j;
    }

    int order() const { return order_; }
    double q0() const { return q0_; }
    double p0() const { return p0_; }
    double value() const { return c_[0]; }

    /// Mixed partial d_q^a d_p^b at the expansion point.
    double partial(int a, int b) const {
        if (a < 0 || b < 0 || a + b > order_) throw error("jet partial out of range");
        double f = 1.0;
        for (int j = 2; j <= a; ++j) f *= j;
        for (int j = 2; j <= b; ++j) f *= j;
        return c_[idx(a, b)] * f;
    }

    friend Jet operator+(const Jet& x, const Jet& y) {
        Jet r = x;
        for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] += y.c_[j];
        return r;
    }
    friend Jet operator-(const Jet& x, const Jet& y) {
        Jet r = x;
        for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] -= y.c_[j];
        return r;
    }
    friend Jet operator-(const Jet& x) {
        Jet r = x;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Jet operator*(const Jet& x, const Jet& y) {
        Jet r(x.order_, x.q0_, x.p0_);
        for (int ax = 0; ax <= x.order_; ++ax)
            for (int bx = 0; ax + bx <= x.order_; ++bx) {
                double cx = x.c_[idx(ax, bx)];
                if (cx == 0.0) continue;
                int room = x.order_ - ax - bx;
                for (int ay = 0; ay <= room; ++ay)
                    for (int by = 0; ay + by <= room; ++by)
                        r.c_[idx(ax + ay, bx + by)] += cx * y.c_[idx(ay, by)];
            }
        return r;
    }

    friend Jet operator/(const Jet& x, const Jet& y) { return x * y.reciprocal(); }

    Jet scaled(double s) const {
        Jet r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }

    /// Composition with a univariate analytic function given by its Taylor
    /// coefficients around this jet's value: sum_j coeffs[j] (u - u0)^j.
    Jet compose(const std::vector<double>& coeffs) const {
        Jet delta = *this;
        delta.c_[0] = 0.0;
        Jet acc = Jet::constant(order_, q0_, p0_, coeffs.empty() ? 0.0 : coeffs[0]);
        Jet power = Jet::constant(order_, q0_, p0_, 1.0);
        for (int j = 1; j < static_cast<int>(coeffs.size()); ++j) {
            power = power * delta;
            acc = acc + power.scaled(coeffs[j]);
        }
        return acc;
    }

    Jet reciprocal() const {
        double u0 = c_[0];
        if (u0 == 0.0) throw singular_sample_point();
        std::vector<double> coeffs(order_ + 1);
        double t = 1.0 / u0;
        for (int j = 0; j <= order_; ++j) {
            coeffs[j] = t;
            t *= -1.0 / u0;
        }
        return compose(coeffs);
    }

    Jet atan() const {
        double u0 = c_[0];
        // derivative series: 1/((1+u0^2) + 2 u0 s + s^2), inverted term by term
        std::vector<double> den = {1.0 + u0 * u0, 2.0 * u0, 1.0};
        std::vector<double> g(std::max(order_, 1));
        g[0] = 1.0 / den[0];
        for (int n = 1; n < static_cast<int>(g.size()); ++n) {
            double s = 0.0;
            for (int j = 1; j <= std::min(n, 2); ++j) s += den[j] * g[n - j];
            g[n] = -s / den[0];
        }
        std::vector<double> coeffs(order_ + 1);
        coeffs[0] = std::atan(u0);
        for (int j = 1; j <= order_; ++j) coeffs[j] = g[j - 1] / j;
        return compose(coeffs);
    }

    Jet ln() const {
        double u0 = c_[0];
        if (u0 <= 0.0) throw singular_sample_point();
        std::vector<double> coeffs(order_ + 1);
        coeffs[0] = std::log(u0);
        double t = 1.0 / u0;
        for (int j = 1; j <= order_; ++j) {
            coeffs[j] = ((j % 2 == 1) ? 1.0 : -1.0) * t / j;
            t /= u0;
        }
        return compose(coeffs);
    }

    Jet pow(int e) const {
        if (e == 0) return Jet::constant(order_, q0_, p0_, 1.0);
        Jet base = (e < 0) ? reciprocal() : *this;
        int n = e < 0 ? -e : e;
        Jet acc = base;
        for (int j = 1; j < n; ++j) acc = acc * base;
        return acc;
    }

private:
    static std::size_t size(int order) {
        return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
    }
    static std::size_t idx(int a, int b) {
        int t = a + b;
        return static_cast<std::size_t>(t * (t + 1) / 2 + b);
    }

    int order_;
    double q0_, p0_;
    std::vector<double> c_; // Taylor coefficients, graded layout
};

/// All mixed partials of e through total order k at (q0, p0).
inline Jet eval_jet(const Expr& e, double q0, double p0, int k, const ParamValues& params) {
    const Expr::Node& n = e.node();
    switch (n.kind) {
    case Expr::Kind::constant:
        return Jet::constant(k, q0, p0, static_cast<double>(n.value));
    case Expr::Kind::param: {
        double v = params[n.param];
        if (std::isnan(v))
            throw error("unbound parameter: " + std::string(kParamNames[n.param]));
        return Jet::constant(k, q0, p0, v);
    }
    case Expr::Kind::q:
        return Jet::coordinate_q(k, q0, p0);
    case Expr::Kind::p:
        return Jet::coordinate_p(k, q0, p0);
    case Expr::Kind::add:
        return eval_jet(e.child_a(), q0, p0, k, params) +
               eval_jet(e.child_b(), q0, p0, k, params);
    case Expr::Kind::sub:
        return eval_jet(e.child_a(), q0, p0, k, params) -
               eval_jet(e.child_b(), q0, p0, k, params);
    case Expr::Kind::mul:
        return eval_jet(e.child_a(), q0, p0, k, params) *
               eval_jet(e.child_b(), q0, p0, k, params);
    case Expr::Kind::div:
        return eval_jet(e.child_a(), q0, p0, k, params) /
               eval_jet(e.child_b(), q0, p0, k, params);
    case Expr::Kind::pow:
        return eval_jet(e.child_a(), q0, p0, k, params).pow(n.exponent);
    case Expr::Kind::atan:
        return eval_jet(e.child_a(), q0, p0, k, params).atan();
    case Expr::Kind::ln:
        return eval_jet(e.child_a(), q0, p0, k, params).ln();
    }
    throw error("unreachable expression kind");
}

inline double eval(const Expr& e, double q0, double p0, const ParamValues& params) {
    return eval_jet(e, q0, p0, 0, params).value();
}

} // namespace starprod

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "starprod/diffop.hpp"
#include "starprod/phasepoly.hpp"

namespace starprod {

/// Noncommutative polynomial in the operator symbols Q, P with ParamScalar
/// coefficients. Words multiply by concatenation; the Heisenberg relation
/// PQ = QP - i hbar rewrites every element to the unique normal form whose
/// words are Q^a P^b.
class NCPoly {
public:
    struct WordLess {
        bool operator()(const std::string& x, const std::string& y) const {
            if (x.size() != y.size()) return x.size() < y.size();
            return x < y;
        }
    };
    using TermMap = std::map<std::string, ParamScalar, WordLess>;

    NCPoly() = default;
    explicit NCPoly(ParamScalar c) { add_term("", std::move(c)); }

    static NCPoly one() { return NCPoly(ParamScalar::one()); }
    static NCPoly word(const std::string& w, ParamScalar c = ParamScalar::one()) {
        NCPoly a;
        a.add_term(w, std::move(c));
        return a;
    }
    static NCPoly q_op() { return word("Q"); }
    static NCPoly p_op() { return word("P"); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::string& w, const ParamScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend NCPoly operator+(const NCPoly& x, const NCPoly& y) {
        NCPoly r = x;
        for (auto& [w, c] : y.terms_) r.add_term(w, c);
        return r;
    }
    friend NCPoly operator-(const NCPoly& x, const NCPoly& y) {
        NCPoly r = x;
        for (auto& [w, c] : y.terms_) r.add_term(w, -c);
        return r;
    }
    friend NCPoly operator-(const NCPoly& x) {
        NCPoly r;
        for (auto& [w, c] : x.terms_) r.terms_[w] = -c;
        return r;
    }
    friend NCPoly operator*(const NCPoly& x, const NCPoly& y) {
        NCPoly r;
        for (auto& [wx, cx] : x.terms_)
            for (auto& [wy, cy] : y.terms_) r.add_term(wx + wy, cx * cy);
        return r;
    }
    friend NCPoly operator*(const ParamScalar& c, const NCPoly& x) {
        NCPoly r;
        for (auto& [w, v] : x.terms_) r.add_term(w, c * v);
        return r;
    }
    NCPoly& operator+=(const NCPoly& y) { for (auto& [w, c] : y.terms_) add_term(w, c); return *this; }
    NCPoly& operator-=(const NCPoly& y) { for (auto& [w, c] : y.terms_) add_term(w, -c); return *this; }

    friend bool operator==(const NCPoly& x, const NCPoly& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const NCPoly& x, const NCPoly& y) { return !(x == y); }

    /// Formal adjoint: reverse each word (Q, P are self-adjoint) and
    /// conjugate the coefficients.
    NCPoly adjoint() const {
        NCPoly r;
        for (auto& [w, c] : terms_) {
            std::string rw(w.rbegin(), w.rend());
            r.add_term(rw, c.conjugate());
        }
        return r;
    }

private:
    TermMap terms_;
};

/// Normal order of a single word under PQ = QP - i hbar: processes the word
/// left to right, keeping the running result as a map (a, b) -> coeff for
/// Q^a P^b. Appending Q uses Q^a P^b Q = Q^{a+1} P^b - i hbar b Q^a P^{b-1}.
inline NCPoly normal_order_word(const std::string& w) {
    std::map<std::pair<int, int>, ParamScalar> acc;
    acc[{0, 0}] = ParamScalar::one();
    const ParamScalar mih = -(ParamScalar::i() * ParamScalar::hbar());
    for (char ch : w) {
        std::map<std::pair<int, int>, ParamScalar> next;
        auto put = [&next](int a, int b, const ParamScalar& c) {
            if (c.is_zero()) return;
            auto it = next.find({a, b});
            if (it == next.end()) next[{a, b}] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) next.erase(it);
            }
        };
        for (auto& [k, c] : acc) {
            if (ch == 'P') {
                put(k.first, k.second + 1, c);
            } else {
                put(k.first + 1, k.second, c);
                if (k.second > 0) put(k.first, k.second - 1, c * mih * ParamScalar(k.second));
            }
        }
        acc = std::move(next);
    }
    NCPoly out;
    for (auto& [k, c] : acc)
        out.add_term(std::string(k.first, 'Q') + std::string(k.second, 'P'), c);
    return out;
}

inline NCPoly normal_order(const NCPoly& a) {
    NCPoly out;
    for (auto& [w, c] : a.terms()) out += c * normal_order_word(w);
    return out;
}

inline bool is_hermitian(const NCPoly& a) {
    return normal_order(a) == normal_order(a.adjoint());
}

/// Weyl image of q^n p^m via the binomial form
/// (1/2^n) sum_l C(n,l) Q^{n-l} P^m Q^l.
inline NCPoly weyl_quantize(int n, int m) {
    NCPoly out;
    ParamScalar scale = ParamScalar(ParamPoly(GaussInt(Int(1) << n))).inv();
    for (int l = 0; l <= n; ++l) {
        std::string w = std::string(n - l, 'Q') + std::string(m, 'P') + std::string(l, 'Q');
        out.add_term(w, scale * ParamScalar(ParamPoly(GaussInt(binomial(n, l)))));
    }
    return out;
}

/// The full permutation average of Q^n P^m; factorial cost, used only as a
/// cross-check oracle at small degree.
inline NCPoly weyl_quantize_perm(int n, int m) {
    std::string w = std::string(n, 'Q') + std::string(m, 'P');
    std::sort(w.begin(), w.end());
    NCPoly out;
    int arrangements = 0;
    do {
        out.add_term(w, ParamScalar::one());
        ++arrangements;
    } while (std::next_permutation(w.begin(), w.end()));
    return ParamScalar(ParamPoly(GaussInt(arrangements))).inv() * out;
}

/// Born-Jordan image: (1/(n+1)) sum_k Q^{n-k} P^m Q^k.
inline NCPoly bj_quantize(int n, int m) {
    NCPoly out;
    ParamScalar scale = ParamScalar(1, n + 1);
    for (int k = 0; k <= n; ++k) {
        std::string w = std::string(n - k, 'Q') + std::string(m, 'P') + std::string(k, 'Q');
        out.add_term(w, scale);
    }
    return out;
}

/// Standard ordering: Q^n P^m.
inline NCPoly std_quantize(int n, int m) {
    return NCPoly::word(std::string(n, 'Q') + std::string(m, 'P'));
}

/// Linear extension of the Weyl map to polynomials.
inline NCPoly quantize_weyl(const PhasePoly& f) {
    NCPoly out;
    for (auto& [k, c] : f.terms()) out += c * weyl_quantize(k.first, k.second);
    return out;
}

/// Inverse of the Weyl map. Normal-orders the input and peels off the
/// leading word; the triangular structure (the Weyl image of q^a p^b is
/// Q^a P^b plus shorter words) guarantees termination with a unique result.
inline PhasePoly weyl_dequantize(const NCPoly& a) {
    NCPoly n = normal_order(a);
    PhasePoly f;
    while (!n.is_zero()) {
        auto it = std::prev(n.terms().end());
        const std::string w = it->first;
        const ParamScalar c = it->second;
        int qs = static_cast<int>(std::count(w.begin(), w.end(), 'Q'));
        int ps = static_cast<int>(w.size()) - qs;
        f.add_term(qs, ps, c);
        n -= c * normal_order(weyl_quantize(qs, ps));
    }
    return f;
}

/// Dequantized operator product against the moyal product of the symbols.
inline bool homomorphism_check(const PhasePoly& f, const PhasePoly& g) {
    PhasePoly direct = weyl_dequantize(quantize_weyl(f) * quantize_weyl(g));
    int order = std::max(0, f.degree()) + std::max(0, g.degree());
    return direct == apply(BiDiffOp::moyal_star(order), f, g);
}

enum class Ordering { born_jordan, standard };

/// Monomial cross-check between the direct ordering rule and the route
/// through the Weyl map dressed by the ordering's transition operator:
/// Q_X(q^n p^m) == Q_0(T_X(q^n p^m)).
inline bool ordering_transition_check(int n, int m, Ordering which) {
    DiffOpSeries t = (which == Ordering::born_jordan) ? transition::born_jordan(n + m)
                                                      : transition::standard(n + m);
    NCPoly via_weyl = quantize_weyl(t.apply(PhasePoly::monomial(n, m)));
    NCPoly direct = (which == Ordering::born_jordan) ? bj_quantize(n, m) : std_quantize(n, m);
    return normal_order(via_weyl) == normal_order(direct);
}

inline std::string to_string(const NCPoly& a) {
    std::vector<TermText> ts;
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        // compress runs: QQP -> Q^2*P
        std::vector<std::string> fs;
        const std::string& w = it->first;
        for (std::size_t j = 0; j < w.size();) {
            std::size_t k = j;
            while (k < w.size() && w[k] == w[j]) ++k;
            std::string f(1, w[j]);
            if (k - j > 1) f += "^" + std::to_string(k - j);
            fs.push_back(f);
            j = k;
        }
        ts.push_back(format_scalar_times(it->second, fs.empty() ? "" : detail::join_factors(fs)));
    }
    return join_terms(ts);
}

inline std::ostream& operator<<(std::ostream& os, const NCPoly& a) { return os << to_string(a); }

} // namespace starprod

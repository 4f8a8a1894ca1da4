#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "starprod/expr.hpp"
#include "starprod/localop.hpp"

namespace starprod {

namespace ast {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { number, ident, neg, add, sub, mul, div, pow, call };
    Kind kind;
    std::size_t offset = 0;
    Int number;       // number
    std::string name; // ident / call
    int exponent = 0; // pow
    NodePtr a, b;
};

inline NodePtr make(Node n) { return std::make_shared<Node>(std::move(n)); }

} // namespace ast

namespace detail {

struct Token {
    enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    Kind kind;
    std::size_t offset;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
        std::size_t at = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Kind::end, at, ""};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = pos_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            tok_ = {Token::Kind::number, at, std::string(src_.substr(pos_, j - pos_))};
            pos_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = pos_;
            while (j < src_.size() && std::isalpha(static_cast<unsigned char>(src_[j]))) ++j;
            tok_ = {Token::Kind::ident, at, std::string(src_.substr(pos_, j - pos_))};
            pos_ = j;
            return;
        }
        ++pos_;
        switch (c) {
        case '+': tok_ = {Token::Kind::plus, at, "+"}; return;
        case '-': tok_ = {Token::Kind::minus, at, "-"}; return;
        case '*': tok_ = {Token::Kind::star, at, "*"}; return;
        case '/': tok_ = {Token::Kind::slash, at, "/"}; return;
        case '^': tok_ = {Token::Kind::caret, at, "^"}; return;
        case '(': tok_ = {Token::Kind::lparen, at, "("}; return;
        case ')': tok_ = {Token::Kind::rparen, at, ")"}; return;
        default:
            throw parse_error(at, std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_{Token::Kind::end, 0, ""};
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ast::NodePtr parse() {
        ast::NodePtr e = expr();
        if (lex_.peek().kind != Token::Kind::end)
            throw parse_error(lex_.peek().offset, "trailing input", "'+', '-', '*', '/', '^', end");
        return e;
    }

private:
    using TK = Token::Kind;

    ast::NodePtr expr() {
        bool neg = false;
        std::size_t at = lex_.peek().offset;
        if (lex_.peek().kind == TK::minus) {
            lex_.take();
            neg = true;
        }
        ast::NodePtr t = term();
        if (neg) {
            ast::Node n;
            n.kind = ast::Node::Kind::neg;
            n.offset = at;
            n.a = t;
            t = ast::make(std::move(n));
        }
        while (lex_.peek().kind == TK::plus || lex_.peek().kind == TK::minus) {
            Token op = lex_.take();
            ast::Node n;
            n.kind = op.kind == TK::plus ? ast::Node::Kind::add : ast::Node::Kind::sub;
            n.offset = op.offset;
            n.a = t;
            n.b = term();
            t = ast::make(std::move(n));
        }
        return t;
    }

    ast::NodePtr term() {
        ast::NodePtr t = factor();
        while (lex_.peek().kind == TK::star || lex_.peek().kind == TK::slash) {
            Token op = lex_.take();
            ast::Node n;
            n.kind = op.kind == TK::star ? ast::Node::Kind::mul : ast::Node::Kind::div;
            n.offset = op.offset;
            n.a = t;
            n.b = factor();
            t = ast::make(std::move(n));
        }
        return t;
    }

    ast::NodePtr factor() {
        ast::NodePtr base = atom();
        if (lex_.peek().kind == TK::caret) {
            Token op = lex_.take();
            bool neg = false;
            if (lex_.peek().kind == TK::minus) {
                lex_.take();
                neg = true;
            }
            if (lex_.peek().kind != TK::number)
                throw parse_error(lex_.peek().offset, "exponent must be an integer", "integer");
            Token e = lex_.take();
            ast::Node n;
            n.kind = ast::Node::Kind::pow;
            n.offset = op.offset;
            n.exponent = std::stoi(e.text) * (neg ? -1 : 1);
            n.a = base;
            base = ast::make(std::move(n));
        }
        return base;
    }

    ast::NodePtr atom() {
        Token t = lex_.peek();
        switch (t.kind) {
        case TK::number: {
            lex_.take();
            ast::Node n;
            n.kind = ast::Node::Kind::number;
            n.offset = t.offset;
            n.number = Int(t.text);
            return ast::make(std::move(n));
        }
        case TK::ident: {
            lex_.take();
            if (t.text == "arctan" || t.text == "ln") {
                expect(TK::lparen, "'('");
                ast::NodePtr arg = expr();
                expect(TK::rparen, "')'");
                ast::Node n;
                n.kind = ast::Node::Kind::call;
                n.offset = t.offset;
                n.name = t.text;
                n.a = arg;
                return ast::make(std::move(n));
            }
            ast::Node n;
            n.kind = ast::Node::Kind::ident;
            n.offset = t.offset;
            n.name = t.text;
            return ast::make(std::move(n));
        }
        case TK::lparen: {
            lex_.take();
            ast::NodePtr inner = expr();
            expect(TK::rparen, "')'");
            return inner;
        }
        default:
            throw parse_error(t.offset, "expected a value", "number, identifier, '('");
        }
    }

    void expect(TK kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            throw parse_error(lex_.peek().offset, "expected " + what, what);
        lex_.take();
    }

    Lexer lex_;
};

} // namespace detail

inline ast::NodePtr parse_source(std::string_view text) {
    return detail::Parser(text).parse();
}

/// Lowering into the exact scalar field. Coordinates, derivative symbols and
/// transcendental calls are rejected.
inline ParamScalar lower_scalar(const ast::NodePtr& n) {
    using K = ast::Node::Kind;
    switch (n->kind) {
    case K::number:
        return ParamScalar(ParamPoly(GaussInt(n->number)));
    case K::ident: {
        if (n->name == "i") return ParamScalar::i();
        if (auto k = param_index(n->name)) return ParamScalar::param(*k);
        if (n->name == "q" || n->name == "p")
            throw parse_error(n->offset, "'" + n->name + "' is not a scalar here");
        if (n->name == "dq" || n->name == "dp")
            throw parse_error(n->offset, "derivative symbol in scalar context");
        throw parse_error(n->offset, "unknown symbol '" + n->name + "'");
    }
    case K::neg:
        return -lower_scalar(n->a);
    case K::add:
        return lower_scalar(n->a) + lower_scalar(n->b);
    case K::sub:
        return lower_scalar(n->a) - lower_scalar(n->b);
    case K::mul:
        return lower_scalar(n->a) * lower_scalar(n->b);
    case K::div:
        return lower_scalar(n->a) / lower_scalar(n->b);
    case K::pow: {
        ParamScalar base = lower_scalar(n->a);
        int e = n->exponent;
        ParamScalar b = e < 0 ? base.inv() : base;
        ParamScalar acc = ParamScalar::one();
        for (int j = 0; j < (e < 0 ? -e : e); ++j) acc *= b;
        return acc;
    }
    case K::call:
        throw parse_error(n->offset, "'" + n->name + "' is not allowed in scalar context");
    }
    throw parse_error(n->offset, "malformed expression");
}

/// Lowering into phase-space polynomials; divisors must be scalar.
inline PhasePoly lower_phasepoly(const ast::NodePtr& n) {
    using K = ast::Node::Kind;
    switch (n->kind) {
    case K::number:
    case K::call:
        return PhasePoly(lower_scalar(n));
    case K::ident:
        if (n->name == "q") return PhasePoly::q();
        if (n->name == "p") return PhasePoly::p();
        if (n->name == "dq" || n->name == "dp")
            throw parse_error(n->offset, "derivative symbol in polynomial context");
        return PhasePoly(lower_scalar(n));
    case K::neg:
        return -lower_phasepoly(n->a);
    case K::add:
        return lower_phasepoly(n->a) + lower_phasepoly(n->b);
    case K::sub:
        return lower_phasepoly(n->a) - lower_phasepoly(n->b);
    case K::mul:
        return lower_phasepoly(n->a) * lower_phasepoly(n->b);
    case K::div:
        return lower_scalar(n->b).inv() * lower_phasepoly(n->a);
    case K::pow: {
        if (n->exponent < 0) return PhasePoly(lower_scalar(n));
        PhasePoly base = lower_phasepoly(n->a);
        PhasePoly acc = PhasePoly::one();
        for (int j = 0; j < n->exponent; ++j) acc = acc * base;
        return acc;
    }
    }
    throw parse_error(n->offset, "malformed expression");
}

/// Lowering into numeric expression trees (real-valued contexts).
inline Expr lower_expr(const ast::NodePtr& n) {
    using K = ast::Node::Kind;
    switch (n->kind) {
    case K::number:
        return Expr::constant(Rational(n->number));
    case K::ident:
        if (n->name == "q") return Expr::q();
        if (n->name == "p") return Expr::p();
        if (n->name == "i")
            throw parse_error(n->offset, "imaginary unit in numeric context");
        if (n->name == "dq" || n->name == "dp")
            throw parse_error(n->offset, "derivative symbol in numeric context");
        if (auto k = param_index(n->name)) return Expr::param(*k);
        throw parse_error(n->offset, "unknown symbol '" + n->name + "'");
    case K::neg:
        return -lower_expr(n->a);
    case K::add:
        return lower_expr(n->a) + lower_expr(n->b);
    case K::sub:
        return lower_expr(n->a) - lower_expr(n->b);
    case K::mul:
        return lower_expr(n->a) * lower_expr(n->b);
    case K::div:
        return lower_expr(n->a) / lower_expr(n->b);
    case K::pow:
        return Expr::pow(lower_expr(n->a), n->exponent);
    case K::call:
        return n->name == "arctan" ? Expr::arctan(lower_expr(n->a))
                                   : Expr::ln(lower_expr(n->a));
    }
    throw parse_error(n->offset, "malformed expression");
}

namespace detail {

inline bool is_derivative_ident(const ast::NodePtr& n) {
    return n->kind == ast::Node::Kind::ident && (n->name == "dq" || n->name == "dp");
}

/// (is-derivative, dq-power, dp-power) for a factor, if it is one.
inline bool derivative_factor(const ast::NodePtr& n, int& m, int& k) {
    if (is_derivative_ident(n)) {
        m = (n->name == "dq") ? 1 : 0;
        k = 1 - m;
        return true;
    }
    if (n->kind == ast::Node::Kind::pow && is_derivative_ident(n->a)) {
        if (n->exponent < 0)
            throw parse_error(n->offset, "negative power of a derivative symbol");
        m = (n->a->name == "dq") ? n->exponent : 0;
        k = (n->a->name == "dp") ? n->exponent : 0;
        return true;
    }
    return false;
}

struct OpTerm {
    bool negative = false;
    std::vector<std::pair<ast::NodePtr, bool>> coeff_factors; // (factor, divides)
    int m = 0, n = 0;
};

inline void flatten_term(const ast::NodePtr& node, bool negative, std::vector<OpTerm>& out) {
    using K = ast::Node::Kind;
    if (node->kind == K::add || node->kind == K::sub) {
        flatten_term(node->a, negative, out);
        flatten_term(node->b, negative != (node->kind == K::sub), out);
        return;
    }
    if (node->kind == K::neg) {
        flatten_term(node->a, !negative, out);
        return;
    }

    // unwind the left-leaning mul/div spine
    std::vector<std::pair<ast::NodePtr, bool>> factors;
    ast::NodePtr cur = node;
    while (cur->kind == K::mul || cur->kind == K::div) {
        factors.push_back({cur->b, cur->kind == K::div});
        cur = cur->a;
    }
    factors.push_back({cur, false});
    std::reverse(factors.begin(), factors.end());

    OpTerm term;
    term.negative = negative;
    bool seen_derivative = false;
    for (auto& [f, divides] : factors) {
        int m = 0, k = 0;
        if (derivative_factor(f, m, k)) {
            if (divides)
                throw parse_error(f->offset, "cannot divide by a derivative symbol");
            term.m += m;
            term.n += k;
            seen_derivative = true;
        } else {
            if (seen_derivative)
                throw parse_error(f->offset,
                                  "coefficient appears right of a derivative symbol");
            term.coeff_factors.push_back({f, divides});
        }
    }
    out.push_back(std::move(term));
}

} // namespace detail

/// Lowering into a local transition operator. The flavor is exact when every
/// coefficient is polynomial (with scalar divisors only), numeric otherwise.
inline LocalDiffOp lower_local_op(const ast::NodePtr& n) {
    std::vector<detail::OpTerm> terms;
    detail::flatten_term(n, false, terms);

    // first pass: exact coefficients
    try {
        LocalDiffOp op;
        for (auto& t : terms) {
            PhasePoly coeff = PhasePoly::one();
            for (auto& [f, divides] : t.coeff_factors) {
                if (divides)
                    coeff = lower_scalar(f).inv() * coeff;
                else
                    coeff = coeff * lower_phasepoly(f);
            }
            if (t.negative) coeff = -coeff;
            op.add_term(t.m, t.n, coeff);
        }
        return op;
    } catch (const parse_error&) {
        // fall through to the numeric flavor
    }

    LocalDiffOp op(LocalDiffOp::Flavor::numeric);
    for (auto& t : terms) {
        Expr coeff = Expr::integer(1);
        for (auto& [f, divides] : t.coeff_factors) {
            Expr e = lower_expr(f);
            coeff = divides ? coeff / e : coeff * e;
        }
        if (t.negative) coeff = -coeff;
        op.add_term(t.m, t.n, coeff);
    }
    return op;
}

inline ParamScalar parse_scalar(std::string_view text) { return lower_scalar(parse_source(text)); }
inline PhasePoly parse_phasepoly(std::string_view text) {
    return lower_phasepoly(parse_source(text));
}
inline Expr parse_expr(std::string_view text) { return lower_expr(parse_source(text)); }
inline LocalDiffOp parse_local_op(std::string_view text) {
    return lower_local_op(parse_source(text));
}

/// Constant-coefficient local operator reinterpreted as a transition series.
inline DiffOpSeries to_series(const LocalDiffOp& op, int order) {
    if (!op.is_exact()) throw error("numeric operator is not a transition series");
    DiffOpSeries t(order);
    for (auto& [k, c] : op.poly_terms()) {
        if (c.degree() > 0)
            throw error("coordinate-dependent coefficient in a transition series");
        t.add_term(k.first, k.second, c.coeff(0, 0));
    }
    return t;
}

} // namespace starprod

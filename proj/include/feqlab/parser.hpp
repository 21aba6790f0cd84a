#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "feqlab/polynomial.hpp"

namespace feqlab {

// Syntax or regime violation in expression text; position is a byte offset.
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at offset " + std::to_string(offset)),
          position(offset) {}
    std::size_t position;
};

namespace parsing {

constexpr unsigned kMaxExponent = 65536;
constexpr unsigned kMaxZetaOrder = 10000;
constexpr unsigned kMaxWorkingOrder = 1000000;
constexpr unsigned kMaxVarIndex = 1000000;

enum class TokKind {
    Number,
    Var,
    ImagUnit,
    Zeta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End
};

struct Token {
    TokKind kind = TokKind::End;
    std::size_t pos = 0;
    BigInt number;
    VarId var = var_z();
};

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_letter(char c) { return c >= 'a' && c <= 'z'; }

inline BigInt read_digits(const std::string& s, std::size_t& k) {
    std::size_t start = k;
    while (k < s.size() && is_digit(s[k])) ++k;
    return BigInt(s.substr(start, k - start));
}

inline unsigned read_index(const std::string& s, std::size_t& k, const std::string& after) {
    if (k >= s.size() || !is_digit(s[k]))
        throw ParseError("expected digits after '" + after + "'", k);
    std::size_t at = k;
    BigInt v = read_digits(s, k);
    if (v < 1) throw ParseError("variable indices start at 1", at);
    if (v > kMaxVarIndex) throw ParseError("variable index too large", at);
    return v.convert_to<unsigned>();
}

inline std::vector<Token> tokenize(const std::string& s, bool complex_regime) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        char c = s[k];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++k;
            continue;
        }
        Token t;
        t.pos = k;
        bool punct = true;
        switch (c) {
            case '+': t.kind = TokKind::Plus; break;
            case '-': t.kind = TokKind::Minus; break;
            case '*': t.kind = TokKind::Star; break;
            case '/': t.kind = TokKind::Slash; break;
            case '^': t.kind = TokKind::Caret; break;
            case '(': t.kind = TokKind::LParen; break;
            case ')': t.kind = TokKind::RParen; break;
            default: punct = false;
        }
        if (punct) {
            ++k;
            out.push_back(t);
            continue;
        }
        if (is_digit(c)) {
            t.kind = TokKind::Number;
            t.number = read_digits(s, k);
            out.push_back(t);
            continue;
        }
        if (!is_letter(c))
            throw ParseError("unexpected character '" + std::string(1, c) + "'", k);
        std::size_t start = k;
        while (k < s.size() && is_letter(s[k])) ++k;
        std::string word = s.substr(start, k - start);
        if (complex_regime) {
            if (word == "i")
                t.kind = TokKind::ImagUnit;
            else if (word == "zeta")
                t.kind = TokKind::Zeta;
            else {
                t.kind = TokKind::Var;
                if (word == "z")
                    t.var = var_z();
                else if (word == "zbar")
                    t.var = var_zbar();
                else if (word == "x")
                    t.var = var_x();
                else if (word == "xbar")
                    t.var = var_xbar();
                else if (word == "y")
                    t.var = var_y();
                else if (word == "ybar")
                    t.var = var_ybar();
                else if (word == "u")
                    t.var = var_u();
                else if (word == "w")
                    t.var = var_w();
                else
                    throw ParseError("unknown variable '" + word + "'", start);
            }
        } else {
            t.kind = TokKind::Var;
            if (word == "x") {
                t.var = coord(read_index(s, k, "x"));
            } else if (word == "h") {
                unsigned family = 0;
                if (k < s.size() && s[k] == '[') {
                    ++k;
                    family = read_index(s, k, "h[");
                    if (k >= s.size() || s[k] != ']') throw ParseError("expected ']'", k);
                    ++k;
                }
                unsigned index = read_index(s, k, "h");
                t.var = family == 0 ? step(index) : family_step(family, index);
            } else if (word == "i") {
                throw ParseError("'i' is not allowed in real expressions", start);
            } else if (word == "zeta") {
                throw ParseError("cyclotomic literals are not allowed in real expressions", start);
            } else {
                throw ParseError("unknown variable '" + word + "'", start);
            }
        }
        out.push_back(t);
    }
    Token end;
    end.kind = TokKind::End;
    end.pos = s.size();
    out.push_back(end);
    return out;
}

// Smallest cyclotomic order housing every constant the token stream mentions.
inline unsigned working_order(const std::vector<Token>& toks) {
    unsigned long long w = 1;
    for (std::size_t k = 0; k < toks.size(); ++k) {
        unsigned long long m = 0;
        if (toks[k].kind == TokKind::ImagUnit) {
            m = 4;
        } else if (toks[k].kind == TokKind::Zeta && k + 3 < toks.size() &&
                   toks[k + 1].kind == TokKind::LParen &&
                   toks[k + 2].kind == TokKind::Number &&
                   toks[k + 3].kind == TokKind::RParen && toks[k + 2].number >= 1 &&
                   toks[k + 2].number <= kMaxZetaOrder) {
            m = toks[k + 2].number.convert_to<unsigned long long>();
        }
        if (m != 0) {
            w = std::lcm(w, m);
            if (w > kMaxWorkingOrder)
                throw ParseError("combined cyclotomic order too large", toks[k].pos);
        }
    }
    return static_cast<unsigned>(w);
}

template <class K>
class ExprParser {
public:
    ExprParser(std::vector<Token> toks, unsigned order)
        : toks_(std::move(toks)), order_(order) {}

    std::optional<unsigned> coord_cap;

    Polynomial<K> run() {
        if (peek().kind == TokKind::End) throw ParseError("empty expression", peek().pos);
        Polynomial<K> p = expr();
        if (peek().kind != TokKind::End)
            throw ParseError("unexpected trailing input", peek().pos);
        return p;
    }

    unsigned max_coord_index() const { return max_coord_; }

private:
    std::vector<Token> toks_;
    unsigned order_;
    std::size_t at_ = 0;
    unsigned max_coord_ = 0;

    const Token& peek() const { return toks_[at_]; }
    const Token& advance() { return toks_[at_++]; }

    Polynomial<K> expr() {
        Polynomial<K> acc = term();
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            bool minus = advance().kind == TokKind::Minus;
            Polynomial<K> rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    Polynomial<K> term() {
        Polynomial<K> acc = factor();
        while (peek().kind == TokKind::Star) {
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial<K> factor() {
        Polynomial<K> base = atom();
        if (peek().kind == TokKind::Caret) {
            advance();
            const Token& e = peek();
            if (e.kind == TokKind::Minus)
                throw ParseError("negative exponents are not allowed", e.pos);
            if (e.kind != TokKind::Number)
                throw ParseError("expected a nonnegative integer exponent", e.pos);
            if (e.number > kMaxExponent)
                throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), e.pos);
            unsigned ev = e.number.convert_to<unsigned>();
            advance();
            base = base.pow(ev);
        }
        return base;
    }

    Polynomial<K> atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Number: {
                BigInt num = t.number;
                advance();
                BigInt den = 1;
                if (peek().kind == TokKind::Slash) {
                    advance();
                    const Token& d = peek();
                    if (d.kind != TokKind::Number)
                        throw ParseError("expected an integer denominator", d.pos);
                    if (d.number == 0)
                        throw ParseError("denominator must be positive", d.pos);
                    den = d.number;
                    advance();
                }
                return Polynomial<K>::constant(K(Rational(num, den)));
            }
            case TokKind::Var: {
                VarId v = t.var;
                advance();
                if (v.kind == VarKind::Coord) {
                    if (coord_cap && v.index > *coord_cap)
                        throw ParseError("variable index exceeds dimension " +
                                             std::to_string(*coord_cap),
                                         t.pos);
                    max_coord_ = std::max(max_coord_, v.index);
                }
                return Polynomial<K>::variable(v);
            }
            case TokKind::ImagUnit: {
                if constexpr (std::is_same_v<K, Cyclotomic>) {
                    advance();
                    return Polynomial<K>::constant(zeta(order_, order_ / 4));
                } else {
                    throw ParseError("'i' is not allowed in real expressions", t.pos);
                }
            }
            case TokKind::Zeta: {
                if constexpr (std::is_same_v<K, Cyclotomic>) {
                    advance();
                    if (peek().kind != TokKind::LParen)
                        throw ParseError("expected '(' after zeta", peek().pos);
                    advance();
                    const Token& m = peek();
                    if (m.kind != TokKind::Number)
                        throw ParseError("expected a cyclotomic order", m.pos);
                    if (m.number < 1)
                        throw ParseError("cyclotomic order must be positive", m.pos);
                    if (m.number > kMaxZetaOrder)
                        throw ParseError("cyclotomic order too large", m.pos);
                    unsigned mv = m.number.convert_to<unsigned>();
                    advance();
                    if (peek().kind != TokKind::RParen)
                        throw ParseError("expected ')'", peek().pos);
                    advance();
                    return Polynomial<K>::constant(zeta(order_, order_ / mv));
                } else {
                    throw ParseError("cyclotomic literals are not allowed in real expressions",
                                     t.pos);
                }
            }
            case TokKind::LParen: {
                advance();
                Polynomial<K> p = expr();
                if (peek().kind != TokKind::RParen)
                    throw ParseError("expected ')'", peek().pos);
                advance();
                return p;
            }
            case TokKind::Minus:
                advance();
                return -factor();
            case TokKind::End:
                throw ParseError("unexpected end of input", t.pos);
            default:
                throw ParseError("expected a value", t.pos);
        }
    }
};

} // namespace parsing

struct ParsedComplex {
    CycloPoly poly;
    unsigned order;
};

// Variables z, zbar, x, xbar, y, ybar, u, w; constants may use 'i' and
// zeta(M) atoms. order is the smallest cyclotomic order holding every
// coefficient (1 when all are rational).
inline ParsedComplex parse_complex(const std::string& text) {
    std::vector<parsing::Token> toks = parsing::tokenize(text, true);
    unsigned order = parsing::working_order(toks);
    parsing::ExprParser<Cyclotomic> parser(std::move(toks), order);
    return {parser.run(), order};
}

struct ParsedReal {
    RationalPoly poly;
    unsigned dimension;
};

// Variables x<k> (coordinates), h<k> and h[r]<k> (step symbols). When
// dimension is given every coordinate index must respect it; otherwise the
// dimension is inferred as the largest coordinate index (at least 1).
inline ParsedReal parse_real(const std::string& text,
                             std::optional<unsigned> dimension = std::nullopt) {
    std::vector<parsing::Token> toks = parsing::tokenize(text, false);
    parsing::ExprParser<Rational> parser(std::move(toks), 1);
    parser.coord_cap = dimension;
    RationalPoly poly = parser.run();
    unsigned d = dimension ? *dimension : std::max(1u, parser.max_coord_index());
    return {std::move(poly), d};
}

// Re-embeds every coefficient into Q(zeta_target); each coefficient's order
// must divide target.
inline CycloPoly lift_coefficients(const CycloPoly& p, unsigned target) {
    CycloPoly out;
    for (const auto& [m, c] : p.terms()) out += CycloPoly::monomial(m, c.lift_to(target));
    return out;
}

namespace formatting {

struct Component {
    std::string body;
    bool negative;
};

inline std::string power_text(const std::string& base, unsigned e) {
    return e == 1 ? base : base + "^" + std::to_string(e);
}

inline void append_rational(std::vector<Component>& out, const Rational& q) {
    out.push_back({q.abs().to_string(), q < Rational(0)});
}

inline void append_scaled(std::vector<Component>& out, const Rational& q,
                          const std::string& atom) {
    Rational a = q.abs();
    std::string body = a == Rational(1) ? atom : a.to_string() + "*" + atom;
    out.push_back({body, q < Rational(0)});
}

inline std::vector<Component> components(const Rational& q) {
    std::vector<Component> out;
    append_rational(out, q);
    return out;
}

inline std::vector<Component> components(const Cyclotomic& c) {
    std::vector<Component> out;
    if (std::optional<Rational> q = c.as_rational()) {
        append_rational(out, *q);
        return out;
    }
    const std::vector<Rational>& cs = c.coeffs();
    if (c.order() == 4) {
        if (!cs[0].is_zero()) append_rational(out, cs[0]);
        append_scaled(out, cs[1], "i");
        return out;
    }
    std::string atom = "zeta(" + std::to_string(c.order()) + ")";
    for (unsigned j = 0; j < cs.size(); ++j) {
        if (cs[j].is_zero()) continue;
        if (j == 0)
            append_rational(out, cs[0]);
        else
            append_scaled(out, cs[j], power_text(atom, j));
    }
    return out;
}

struct TermText {
    std::string text;
    bool negative;
};

template <class K>
TermText term_text(const Monomial& m, const K& coeff) {
    std::string mono;
    for (const auto& [v, e] : m) {
        if (!mono.empty()) mono += "*";
        mono += power_text(v.name(), e);
    }
    std::vector<Component> comps = components(coeff);
    if (comps.size() == 1) {
        const Component& c = comps.front();
        if (mono.empty()) return {c.body, c.negative};
        if (c.body == "1") return {mono, c.negative};
        return {c.body + "*" + mono, c.negative};
    }
    std::string inner;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k == 0)
            inner += comps[k].negative ? "-" + comps[k].body : comps[k].body;
        else
            inner += (comps[k].negative ? "-" : "+") + comps[k].body;
    }
    std::string wrapped = "(" + inner + ")";
    return {mono.empty() ? wrapped : wrapped + "*" + mono, false};
}

} // namespace formatting

// Deterministic canonical text: terms ascend in the monomial order, rational
// and Gaussian coefficients print as a+b*i combinations, higher orders as
// zeta(L)^k atoms. parse of the result reproduces the polynomial.
template <class K>
std::string format_poly(const Polynomial<K>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        formatting::TermText t = formatting::term_text(m, c);
        if (first) {
            out += t.negative ? "-" + t.text : t.text;
            first = false;
        } else {
            out += t.negative ? " - " + t.text : " + " + t.text;
        }
    }
    return out;
}

inline std::string format_complex(const CycloPoly& p) { return format_poly(p); }
inline std::string format_real(const RationalPoly& p) { return format_poly(p); }

} // namespace feqlab

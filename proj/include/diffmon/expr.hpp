/*
   Copyright 2026 The diffmon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIFFMON_EXPR_HPP
#define DIFFMON_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "diffmon/errors.hpp"
#include "diffmon/rational.hpp"
#include "diffmon/rational_function.hpp"

namespace diffmon {

// Expression grammar (the contract for every textual expression input):
//
//   expr   := term (("+"|"-") term)* ;
//   term   := factor (("*"|"/") factor)* ;
//   factor := "-" factor | atom ("^" signed-integer)? ;
//   atom   := "z" | "m" | "i" | number | "exp" "(" expr ")" | "(" expr ")" ;
//   number := integer ("/" positive-integer)? ;
//
// Precedence: ^  >  unary -  >  (* /)  >  (+ -).  "^" is non-associative;
// a^b^c is a syntax error.  Negative exponents are rewritten as division
// at parse time.  Decimal literals are rejected; constants are exact.
// Exact mode rejects "m" and "exp".

enum class ExprKind {
    constant,
    variable,   // z
    parameter,  // m
    add,
    sub,
    mul,
    div,
    neg,
    power,      // integer exponent >= 0
    exp_fn,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    GaussianRational value;  // constant
    long long exponent = 0;  // power
    Expr left;
    Expr right;
};

enum class ParseMode { exact, numeric };

namespace detail {

inline Expr node(ExprKind kind, Expr left = nullptr, Expr right = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->left = std::move(left);
    n->right = std::move(right);
    return n;
}

inline Expr constant_node(GaussianRational v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::constant;
    n->value = std::move(v);
    return n;
}

inline Expr power_node(Expr base, long long exponent) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::power;
    n->exponent = exponent;
    n->left = std::move(base);
    return n;
}

} // namespace detail

inline bool is_constant(const Expr& e, const GaussianRational& v) {
    return e->kind == ExprKind::constant && e->value == v;
}

// Folding constructors, used by symbolic differentiation and the
// rescaling transforms.  The parser builds raw nodes so that the printed
// form stays close to the input.

inline Expr make_constant(GaussianRational v) {
    return detail::constant_node(std::move(v));
}
inline Expr make_variable() { return detail::node(ExprKind::variable); }
inline Expr make_parameter() { return detail::node(ExprKind::parameter); }

inline Expr make_add(Expr a, Expr b) {
    if (a->kind == ExprKind::constant && b->kind == ExprKind::constant)
        return make_constant(a->value + b->value);
    if (is_constant(a, GaussianRational(0))) return b;
    if (is_constant(b, GaussianRational(0))) return a;
    return detail::node(ExprKind::add, std::move(a), std::move(b));
}

inline Expr make_neg(Expr a) {
    if (a->kind == ExprKind::constant) return make_constant(-a->value);
    if (a->kind == ExprKind::neg) return a->left;
    return detail::node(ExprKind::neg, std::move(a));
}

inline Expr make_sub(Expr a, Expr b) {
    if (a->kind == ExprKind::constant && b->kind == ExprKind::constant)
        return make_constant(a->value - b->value);
    if (is_constant(b, GaussianRational(0))) return a;
    if (is_constant(a, GaussianRational(0))) return make_neg(std::move(b));
    return detail::node(ExprKind::sub, std::move(a), std::move(b));
}

inline Expr make_mul(Expr a, Expr b) {
    if (a->kind == ExprKind::constant && b->kind == ExprKind::constant)
        return make_constant(a->value * b->value);
    if (is_constant(a, GaussianRational(0)) ||
        is_constant(b, GaussianRational(0)))
        return make_constant(GaussianRational(0));
    if (is_constant(a, GaussianRational(1))) return b;
    if (is_constant(b, GaussianRational(1))) return a;
    return detail::node(ExprKind::mul, std::move(a), std::move(b));
}

inline Expr make_div(Expr a, Expr b) {
    if (b->kind == ExprKind::constant) {
        if (b->value.is_zero())
            throw division_by_zero("division by a zero constant");
        if (a->kind == ExprKind::constant)
            return make_constant(a->value / b->value);
        if (b->value.is_one()) return a;
    }
    if (is_constant(a, GaussianRational(0)))
        return make_constant(GaussianRational(0));
    return detail::node(ExprKind::div, std::move(a), std::move(b));
}

inline Expr make_power(Expr base, long long exponent) {
    if (exponent < 0)
        return make_div(make_constant(GaussianRational(1)),
                        make_power(std::move(base), -exponent));
    if (exponent == 0) return make_constant(GaussianRational(1));
    if (exponent == 1) return base;
    if (base->kind == ExprKind::constant)
        return make_constant(base->value.pow(exponent));
    return detail::power_node(std::move(base), exponent);
}

inline Expr make_exp(Expr a) { return detail::node(ExprKind::exp_fn, std::move(a)); }

inline bool contains_parameter(const Expr& e) {
    if (!e) return false;
    if (e->kind == ExprKind::parameter) return true;
    return contains_parameter(e->left) || contains_parameter(e->right);
}

inline bool contains_exp(const Expr& e) {
    if (!e) return false;
    if (e->kind == ExprKind::exp_fn) return true;
    return contains_exp(e->left) || contains_exp(e->right);
}

/// d/dz as an expression tree; the parameter m is treated as a constant.
inline Expr differentiate(const Expr& e) {
    switch (e->kind) {
        case ExprKind::constant:
        case ExprKind::parameter:
            return make_constant(GaussianRational(0));
        case ExprKind::variable:
            return make_constant(GaussianRational(1));
        case ExprKind::add:
            return make_add(differentiate(e->left), differentiate(e->right));
        case ExprKind::sub:
            return make_sub(differentiate(e->left), differentiate(e->right));
        case ExprKind::mul:
            return make_add(make_mul(differentiate(e->left), e->right),
                            make_mul(e->left, differentiate(e->right)));
        case ExprKind::div:
            return make_div(
                make_sub(make_mul(differentiate(e->left), e->right),
                         make_mul(e->left, differentiate(e->right))),
                make_mul(e->right, e->right));
        case ExprKind::neg:
            return make_neg(differentiate(e->left));
        case ExprKind::power:
            return make_mul(
                make_mul(make_constant(GaussianRational(e->exponent)),
                         make_power(e->left, e->exponent - 1)),
                differentiate(e->left));
        case ExprKind::exp_fn:
            return make_mul(differentiate(e->left), make_exp(e->left));
    }
    throw error("unreachable expression kind");
}

namespace detail {

class Lexer {
  public:
    enum class Tok { integer, ident, plus, minus, star, slash, caret,
                     lparen, rparen, end };

    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    Tok kind() const { return kind_; }
    std::size_t offset() const { return tok_offset_; }
    const std::string& ident() const { return ident_; }
    const BigInt& integer() const { return integer_; }

    void advance() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
        tok_offset_ = pos_;
        if (pos_ >= text_.size()) {
            kind_ = Tok::end;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': kind_ = Tok::plus; ++pos_; return;
            case '-': kind_ = Tok::minus; ++pos_; return;
            case '*': kind_ = Tok::star; ++pos_; return;
            case '/': kind_ = Tok::slash; ++pos_; return;
            case '^': kind_ = Tok::caret; ++pos_; return;
            case '(': kind_ = Tok::lparen; ++pos_; return;
            case ')': kind_ = Tok::rparen; ++pos_; return;
            default: break;
        }
        if (c >= '0' && c <= '9') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' &&
                   text_[pos_] <= '9')
                ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '.')
                throw parse_error(pos_, "decimal literals are not supported");
            std::string digits(text_.substr(start, pos_ - start));
            // strip leading zeros; the backend would read them as octal
            std::size_t first = digits.find_first_not_of('0');
            digits = first == std::string::npos ? "0" : digits.substr(first);
            integer_ = BigInt(digits);
            kind_ = Tok::integer;
            return;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                    (text_[pos_] >= 'A' && text_[pos_] <= 'Z')))
                ++pos_;
            ident_ = std::string(text_.substr(start, pos_ - start));
            kind_ = Tok::ident;
            return;
        }
        throw parse_error(pos_, std::string("unexpected character '") + c +
                                    "'");
    }

    /// Lookahead for rational literals at "INT / ...": true when an
    /// integer follows that is not itself raised by '^' (exponentiation
    /// binds tighter than '/', so "3/2^2" must stay 3/(2^2)).
    bool rational_literal_follows() const {
        std::size_t p = pos_;
        auto skip_ws = [&] {
            while (p < text_.size() &&
                   (text_[p] == ' ' || text_[p] == '\t' ||
                    text_[p] == '\n' || text_[p] == '\r'))
                ++p;
        };
        skip_ws();
        std::size_t digits_start = p;
        while (p < text_.size() && text_[p] >= '0' && text_[p] <= '9') ++p;
        if (p == digits_start) return false;
        skip_ws();
        return !(p < text_.size() && text_[p] == '^');
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t tok_offset_ = 0;
    Tok kind_ = Tok::end;
    std::string ident_;
    BigInt integer_;
};

class Parser {
  public:
    Parser(std::string_view text, ParseMode mode)
        : lex_(text), mode_(mode) {}

    Expr parse() {
        Expr e = parse_expr();
        if (lex_.kind() != Lexer::Tok::end)
            throw parse_error(lex_.offset(), "unexpected trailing input");
        return e;
    }

  private:
    using Tok = Lexer::Tok;

    Expr parse_expr() {
        Expr e = parse_term();
        while (lex_.kind() == Tok::plus || lex_.kind() == Tok::minus) {
            bool plus = lex_.kind() == Tok::plus;
            lex_.advance();
            Expr rhs = parse_term();
            e = node(plus ? ExprKind::add : ExprKind::sub, std::move(e),
                     std::move(rhs));
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (lex_.kind() == Tok::star || lex_.kind() == Tok::slash) {
            bool star = lex_.kind() == Tok::star;
            lex_.advance();
            Expr rhs = parse_factor();
            e = node(star ? ExprKind::mul : ExprKind::div, std::move(e),
                     std::move(rhs));
        }
        return e;
    }

    Expr parse_factor() {
        if (lex_.kind() == Tok::minus) {
            lex_.advance();
            return node(ExprKind::neg, parse_factor());
        }
        Expr base = parse_atom();
        if (lex_.kind() != Tok::caret) return base;
        lex_.advance();
        bool parenthesized = false;
        if (lex_.kind() == Tok::lparen) { // allow z^(-1)
            parenthesized = true;
            lex_.advance();
        }
        bool negative = false;
        if (lex_.kind() == Tok::minus || lex_.kind() == Tok::plus) {
            negative = lex_.kind() == Tok::minus;
            lex_.advance();
        }
        if (lex_.kind() != Tok::integer)
            throw parse_error(lex_.offset(), "expected an integer exponent");
        if (lex_.integer() > 4096)
            throw parse_error(lex_.offset(), "exponent too large");
        long long exponent = lex_.integer().convert_to<long long>();
        lex_.advance();
        if (parenthesized) expect(Tok::rparen, "expected ')'");
        if (lex_.kind() == Tok::caret)
            throw parse_error(lex_.offset(),
                              "'^' is non-associative; parenthesize");
        if (negative)
            return node(ExprKind::div,
                        constant_node(GaussianRational(1)),
                        make_power(std::move(base), exponent));
        return power_node(std::move(base), exponent);
    }

    Expr parse_atom() {
        switch (lex_.kind()) {
            case Tok::lparen: {
                lex_.advance();
                Expr e = parse_expr();
                expect(Tok::rparen, "expected ')'");
                return e;
            }
            case Tok::integer: {
                BigInt numerator = lex_.integer();
                lex_.advance();
                if (lex_.kind() == Tok::slash &&
                    lex_.rational_literal_follows()) {
                    lex_.advance();
                    if (lex_.kind() != Tok::integer)
                        throw parse_error(lex_.offset(),
                                          "expected a denominator");
                    if (lex_.integer() == 0)
                        throw parse_error(lex_.offset(),
                                          "zero denominator in rational "
                                          "literal");
                    Rational q(numerator, lex_.integer());
                    lex_.advance();
                    return constant_node(GaussianRational(q));
                }
                return constant_node(GaussianRational(Rational(numerator)));
            }
            case Tok::ident: {
                const std::string& id = lex_.ident();
                std::size_t at = lex_.offset();
                if (id == "z") {
                    lex_.advance();
                    return node(ExprKind::variable);
                }
                if (id == "i") {
                    lex_.advance();
                    return constant_node(GaussianRational::unit_imaginary());
                }
                if (id == "m") {
                    if (mode_ == ParseMode::exact)
                        throw parse_error(
                            at, "parameter 'm' is not allowed in exact mode");
                    lex_.advance();
                    return node(ExprKind::parameter);
                }
                if (id == "exp") {
                    if (mode_ == ParseMode::exact)
                        throw parse_error(
                            at, "'exp' is not allowed in exact mode");
                    lex_.advance();
                    expect(Tok::lparen, "expected '(' after exp");
                    Expr arg = parse_expr();
                    expect(Tok::rparen, "expected ')'");
                    return node(ExprKind::exp_fn, std::move(arg));
                }
                throw parse_error(at, "unknown identifier '" + id + "'");
            }
            default:
                throw parse_error(lex_.offset(), "expected an expression");
        }
    }

    void expect(Tok t, const char* message) {
        if (lex_.kind() != t) throw parse_error(lex_.offset(), message);
        lex_.advance();
    }

    Lexer lex_;
    ParseMode mode_;
};

} // namespace detail

/// Parse an expression; throws parse_error with a byte offset on any
/// syntax or mode problem.
inline Expr parse_expression(std::string_view text, ParseMode mode) {
    return detail::Parser(text, mode).parse();
}

namespace detail {

// Printing levels: 1 add/sub, 2 mul/div, 3 neg, 4 power, 5 atom.
// A constant's level is that of its printed form.
inline int print_level(const ExprNode& e) {
    switch (e.kind) {
        case ExprKind::add:
        case ExprKind::sub:
            return 1;
        case ExprKind::mul:
        case ExprKind::div:
            return 2;
        case ExprKind::neg:
            return 3;
        case ExprKind::power:
            return 4;
        case ExprKind::constant: {
            const GaussianRational& v = e.value;
            if (v.is_real()) {
                if (v.real() < 0) return 1;                     // leading '-'
                return denominator(v.real()) == 1 ? 5 : 2;      // "3" / "3/4"
            }
            if (v.real() == 0) {
                if (v.imag() == 1) return 5;                    // "i"
                return v.imag() < 0 ? 1 : 2;                    // "3*i"
            }
            return 1;                                           // "a+b*i"
        }
        default:
            return 5;
    }
}

inline std::string render(const Expr& e, int required);

inline std::string render_raw(const Expr& e) {
    switch (e->kind) {
        case ExprKind::constant:
            return e->value.to_string();
        case ExprKind::variable:
            return "z";
        case ExprKind::parameter:
            return "m";
        case ExprKind::add:
            return render(e->left, 1) + " + " + render(e->right, 2);
        case ExprKind::sub:
            return render(e->left, 1) + " - " + render(e->right, 2);
        case ExprKind::mul:
            return render(e->left, 2) + "*" + render(e->right, 3);
        case ExprKind::div:
            return render(e->left, 2) + "/" + render(e->right, 3);
        case ExprKind::neg:
            return "-" + render(e->left, 3);
        case ExprKind::power:
            return render(e->left, 5) + "^" + std::to_string(e->exponent);
        case ExprKind::exp_fn:
            return "exp(" + render(e->left, 1) + ")";
    }
    throw error("unreachable expression kind");
}

inline std::string render(const Expr& e, int required) {
    std::string s = render_raw(e);
    if (print_level(*e) < required) return "(" + s + ")";
    return s;
}

} // namespace detail

/// Canonical text; reparsing it in the same mode yields a tree with the
/// same evaluation semantics.
inline std::string print_expr(const Expr& e) { return detail::render(e, 1); }

/// Exact evaluation of an exact-mode tree in the rational-function field.
inline RatFn to_rational_function(const Expr& e) {
    switch (e->kind) {
        case ExprKind::constant:
            return RatFn(e->value);
        case ExprKind::variable:
            return RatFn::variable();
        case ExprKind::parameter:
            throw undefined_operation(
                "parameter 'm' has no exact-mode value");
        case ExprKind::exp_fn:
            throw undefined_operation("'exp' has no exact-mode value");
        case ExprKind::add:
            return to_rational_function(e->left) +
                   to_rational_function(e->right);
        case ExprKind::sub:
            return to_rational_function(e->left) -
                   to_rational_function(e->right);
        case ExprKind::mul:
            return to_rational_function(e->left) *
                   to_rational_function(e->right);
        case ExprKind::div:
            return to_rational_function(e->left) /
                   to_rational_function(e->right);
        case ExprKind::neg:
            return -to_rational_function(e->left);
        case ExprKind::power:
            return pow(to_rational_function(e->left), e->exponent);
    }
    throw error("unreachable expression kind");
}

/// Parse in exact mode and evaluate.
inline RatFn parse_rational_function(std::string_view text) {
    return to_rational_function(parse_expression(text, ParseMode::exact));
}

} // namespace diffmon

#endif // DIFFMON_EXPR_HPP

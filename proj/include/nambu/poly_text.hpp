// Text form of polynomials.
//
// Grammar (whitespace ignored everywhere):
//   poly   := [sign] term { sign term }
//   term   := factor { '*' factor } | rational
//   factor := rational | var [ '^' uint ]
//   var    := x0 | x1 | x2 | v0 | v1 | v2
//   rational := uint [ '/' uint ]
//
// A term is a product of factors; a bare rational is a constant term.
// Example: "1/3*x1^2 + 1/3*x2^2 - 1/3*x0*x2".
//
// Printing emits one term per monomial in descending exponent order with
// the same grammar, so print/parse round-trips exactly. Zero prints as "0".
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "poly.hpp"

namespace nambu {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, Alphabet a) : text_(text), alphabet_(a) {}

    Poly parse() {
        Poly result(alphabet_);
        skip_ws();
        if (done()) throw ParseError("empty polynomial", pos_);
        bool negative = take_sign();
        result += parse_term(negative);
        skip_ws();
        while (!done()) {
            char c = peek();
            if (c != '+' && c != '-')
                throw ParseError(std::string("expected '+' or '-', got '") +
                                     c + "'",
                                 pos_);
            ++pos_;
            skip_ws();
            result += parse_term(c == '-');
            skip_ws();
        }
        return result;
    }

private:
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    bool take_sign() {
        if (!done() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            skip_ws();
            return neg;
        }
        return false;
    }

    Poly parse_term(bool negative) {
        Poly term = parse_factor();
        skip_ws();
        // '*' between factors is optional before a variable.
        while (!done() && (peek() == '*' || peek() == 'x' || peek() == 'v')) {
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
            term *= parse_factor();
            skip_ws();
        }
        return negative ? -term : term;
    }

    Poly parse_factor() {
        if (done()) throw ParseError("expected factor", pos_);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Poly::constant(parse_rational(), alphabet_);
        if (c == 'x' || c == 'v') return parse_var_power();
        throw ParseError(std::string("unexpected character '") + c + "'",
                         pos_);
    }

    Poly parse_var_power() {
        if (pos_ + 1 >= text_.size())
            throw ParseError("truncated variable name", pos_);
        auto v = var_from_name(text_.substr(pos_, 2));
        if (!v)
            throw ParseError(
                "unknown variable '" + std::string(text_.substr(pos_, 2)) + "'",
                pos_);
        if (!in_alphabet(*v, alphabet_))
            throw ParseError(std::string("variable ") + name_of(*v) +
                                 " not allowed in this alphabet",
                             pos_);
        pos_ += 2;
        skip_ws();
        unsigned exp = 1;
        if (!done() && peek() == '^') {
            ++pos_;
            skip_ws();
            exp = parse_uint();
        }
        Exponents e{};
        e[static_cast<int>(*v)] = exp;
        return Poly::monomial(1, e, alphabet_);
    }

    Rational parse_rational() {
        Rational num(parse_uint());
        skip_ws();
        if (!done() && peek() == '/') {
            ++pos_;
            skip_ws();
            unsigned long long den = parse_uint();
            if (den == 0) throw ParseError("zero denominator", pos_);
            num /= den;
        }
        return num;
    }

    unsigned long long parse_uint() {
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected digit", pos_);
        unsigned long long value = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + static_cast<unsigned long long>(peek() - '0');
            ++pos_;
        }
        return value;
    }

    std::string_view text_;
    Alphabet alphabet_;
    size_t pos_ = 0;
};

inline std::string rational_str(const Rational& r) {
    return r.str();
}

inline std::string monomial_str(const Exponents& e, const Rational& coeff) {
    Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    std::string out;
    bool has_vars = monomial_degree(e) > 0;
    if (!has_vars || mag != 1) out = rational_str(mag);
    for (int i = 0; i < 6; ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += kVarNames[i];
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

}  // namespace detail

inline Poly parse_poly(std::string_view text,
                       Alphabet a = Alphabet::position) {
    return detail::PolyParser(text, a).parse();
}

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // Descending monomial order: highest exponent vector first.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (out.empty()) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += detail::monomial_str(e, c);
    }
    return out;
}

}  // namespace nambu

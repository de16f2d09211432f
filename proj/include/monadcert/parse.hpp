#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "monadcert/polynomial.hpp"

namespace monadcert {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Recursive-descent parser for polynomial expressions:
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := primary ('^' uint)*
//   primary  := rational | var | '(' expr ')'
//   rational := int ['/' uint]
//   var      := ('x'|'y'|'z') uint        ('z' aliases 'x' in the
//                                          single-block case)
//
// Whitespace is insignificant.  Coefficients are exact rationals.
class PolyParser {
public:
    PolyParser(std::string text, VarContext ctx) : s_(std::move(text)), ctx_(ctx) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Polynomial expr() {
        skip_ws();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            if (get() == '-') sign = -1;
        }
        Polynomial acc = term();
        if (sign < 0) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                Polynomial t = term();
                if (c == '+')
                    acc += t;
                else
                    acc -= t;
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                get();
                acc *= factor();
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = primary();
        for (;;) {
            skip_ws();
            if (peek() != '^') return base;
            get();
            skip_ws();
            long long e = parse_uint("exponent");
            Polynomial p = Polynomial::constant(ctx_, 1);
            for (long long i = 0; i < e; ++i) p *= base;
            base = p;
        }
    }

    Polynomial primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Polynomial p = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            get();
            return p;
        }
        if (c == 'x' || c == 'y' || c == 'z') return variable();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return rational();
        fail("expected a rational, a variable, or '('");
        return Polynomial();  // unreachable
    }

    Polynomial variable() {
        size_t at = pos_;
        char letter = get();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
        long long idx = parse_uint("variable index");
        int block;
        if (letter == 'x') {
            block = 0;
        } else if (letter == 'y') {
            if (ctx_.blocks() < 2) {
                pos_ = at;
                fail("unknown variable: no second block in this context");
            }
            block = 1;
        } else {  // 'z'
            if (ctx_.blocks() != 1) {
                pos_ = at;
                fail("unknown variable: 'z' aliases 'x' only in the single-block case");
            }
            block = 0;
        }
        int limit = block == 0 ? ctx_.nx : ctx_.ny;
        if (idx >= limit) {
            pos_ = at;
            fail("unknown variable: index " + std::to_string(idx) + " out of range (block size " +
                 std::to_string(limit) + ")");
        }
        int flat = block == 0 ? static_cast<int>(idx) : ctx_.nx + static_cast<int>(idx);
        return Polynomial::variable(ctx_, flat);
    }

    Polynomial rational() {
        bool neg = false;
        if (peek() == '-') {
            get();
            neg = true;
        }
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        Int num = parse_int_digits();
        Int den = 1;
        skip_ws();
        if (peek() == '/') {
            get();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
            den = parse_int_digits();
            if (den == 0) fail("zero denominator");
        }
        Rat r(num, den);
        return Polynomial::constant(ctx_, neg ? -r : r);
    }

    Int parse_int_digits() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(get());
        return Int(digits);
    }

    long long parse_uint(const std::string& what) {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected " + what);
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > 1000000) fail(what + " too large");
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    std::string s_;
    VarContext ctx_;
    size_t pos_ = 0;
};

inline Polynomial parse_poly(const std::string& text, const VarContext& ctx) {
    return PolyParser(text, ctx).parse();
}

}  // namespace monadcert

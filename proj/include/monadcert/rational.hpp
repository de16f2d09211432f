#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace monadcert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

// Floor division for arbitrary-sign integers (denominator must be positive).
inline Int floor_div(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("floor_div: denominator must be positive");
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("ceil_div: denominator must be positive");
    Int q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(rat_num(r), rat_den(r)); }
inline Int rat_ceil(const Rat& r) { return ceil_div(rat_num(r), rat_den(r)); }

// C(n, k) for n >= 0.
inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// C(n, k) as a polynomial in n, valid for negative n as well:
// n(n-1)...(n-k+1) / k!.
inline Int extended_binomial(long long n, long long k) {
    if (k < 0) return 0;
    Rat r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= Rat(n - i, i + 1);
    }
    if (rat_den(r) != 1) throw std::logic_error("extended_binomial: non-integral result");
    return rat_num(r);
}

inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// Parses "a", "a/b" or a decimal such as "0.5" into an exact rational.
inline Rat rat_parse(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + text + "'"); };
    std::string s = text;
    if (s.empty()) bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            Int n(s.substr(0, slash));
            Int d(s.substr(slash + 1));
            if (d == 0) bad();
            return Rat(n, d);
        } catch (const std::runtime_error&) {
            bad();
        }
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (tail.empty()) bad();
        bool neg = !head.empty() && head[0] == '-';
        if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
        if (head.empty()) head = "0";
        try {
            Int ip(head), fp(tail);
            Int den = 1;
            for (size_t i = 0; i < tail.size(); ++i) den *= 10;
            Rat r = Rat(ip) + Rat(fp, den);
            return neg ? -r : r;
        } catch (const std::runtime_error&) {
            bad();
        }
    }
    try {
        return Rat(Int(s));
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat();  // unreachable
}

}  // namespace monadcert

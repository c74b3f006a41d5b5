#pragma once

// Exact numeric tower used by every counting path.  All matching counts are
// sums of astronomically many signed terms, so the counting core never touches
// floating point; doubles appear only in the capacity/spectral/entropy layers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace matchkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(unsigned long n) {
    Int f = 1;
    for (unsigned long i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    return Rat(int_pow(numerator(base), e), int_pow(denominator(base), e));
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

namespace detail {

// Signed decimal digit string -> Int.  Leading zeros are stripped explicitly
// (cpp_int's string constructor would treat them as an octal prefix).
inline Int int_from_decimal(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty numeric token");
    std::size_t pos = 0;
    bool negative = false;
    if (token[0] == '+' || token[0] == '-') {
        negative = token[0] == '-';
        pos = 1;
    }
    if (pos == token.size()) throw std::invalid_argument("bad numeric token '" + token + "'");
    for (std::size_t i = pos; i < token.size(); ++i)
        if (token[i] < '0' || token[i] > '9')
            throw std::invalid_argument("bad numeric token '" + token + "'");
    while (pos + 1 < token.size() && token[pos] == '0') ++pos;
    Int v(token.substr(pos));
    return negative ? -v : v;
}

}  // namespace detail

/// Parses "p/q", "-3", or a plain decimal literal like "0.25" into an exact
/// rational.  Scientific notation is not accepted.
inline Rat parse_rational(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty numeric token");
    auto slash = token.find('/');
    if (slash != std::string::npos) {
        Int p = detail::int_from_decimal(token.substr(0, slash));
        Int q = detail::int_from_decimal(token.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in '" + token + "'");
        return Rat(p, q);
    }
    auto dot = token.find('.');
    if (dot == std::string::npos) return Rat(detail::int_from_decimal(token));
    std::string digits = token.substr(0, dot) + token.substr(dot + 1);
    std::size_t frac_len = token.size() - dot - 1;
    return Rat(detail::int_from_decimal(digits), int_pow(10, frac_len));
}

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    if (denominator(r) == 1)
        os << numerator(r);
    else
        os << numerator(r) << '/' << denominator(r);
    return os.str();
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace matchkit

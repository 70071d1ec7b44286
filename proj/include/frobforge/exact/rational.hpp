#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

#include "frobforge/error.hpp"

namespace frobforge {

/// Arbitrary-precision rational in canonical form (positive denominator, reduced).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw AlgebraError("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "p/q" with q > 0; integers are written "p/1".
inline std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p/q", "p", or a terminating decimal such as "-0.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& v) {
        const auto b = v.find_first_not_of(" \t\n");
        const auto e = v.find_last_not_of(" \t\n");
        v = (b == std::string::npos) ? std::string{} : v.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw ParseError("empty rational");
    try {
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            if (s.find('/') != std::string::npos) throw ParseError("rational: mixed '.' and '/' in \"" + s + "\"");
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            const std::size_t frac = s.size() - dot - 1;
            mpz_class den = 1;
            for (std::size_t i = 0; i < frac; ++i) den *= 10;
            if (digits == "-" || digits == "+" || digits.empty()) throw ParseError("rational: bad decimal \"" + s + "\"");
            if (digits[0] == '+') digits.erase(0, 1);
            Rational r(mpz_class(digits, 10), den);
            r.canonicalize();
            return r;
        }
        if (s[0] == '+') s.erase(0, 1);
        Rational r(s, 10);
        if (r.get_den() == 0) throw ParseError("rational: zero denominator in \"" + std::string(text) + "\"");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("rational: cannot parse \"" + std::string(text) + "\"");
    }
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace frobforge

#pragma once

// Exact rational scalars. All geometry in this library runs on arbitrary
// precision rationals; there is no floating point anywhere.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fewxc {

using Integer = mpz_class;
using Rational = mpq_class;
using RVector = std::vector<Rational>;

// mpq_class does not canonicalize on construction from a num/den pair, so
// every entry point that builds a rational from parts goes through here.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

// Parses "p/q" or "p" (decimal digits, optional leading '-').
inline Rational parse_rational(std::string_view s) {
    const std::string tok(s);
    if (tok.empty()) throw std::invalid_argument("malformed rational: empty token");
    auto is_int = [](std::string_view v) {
        if (v.empty()) return false;
        std::size_t i = (v[0] == '-') ? 1 : 0;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (v[i] < '0' || v[i] > '9') return false;
        return true;
    };
    const auto slash = tok.find('/');
    if (slash == std::string::npos) {
        if (!is_int(tok)) throw std::invalid_argument("malformed rational: '" + tok + "'");
        return Rational(Integer(tok));
    }
    const std::string num = tok.substr(0, slash), den = tok.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || Integer(den) == 0)
        throw std::invalid_argument("malformed rational: '" + tok + "'");
    return make_rational(Integer(num), Integer(den));
}

// "p/q", or "p" when the denominator is 1. GMP's canonical form already
// guarantees lowest terms and a positive denominator.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

} // namespace fewxc

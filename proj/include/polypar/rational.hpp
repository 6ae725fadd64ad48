#pragma once

#include "errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace polypar {

/* Exact arithmetic scalar. GMP-backed rationals are kept canonical
 * (lowest terms, positive denominator) by the backend itself. */
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/* Canonical text form: "p/q" in lowest terms with q >= 1, "p" when q == 1,
 * optional leading minus on p. */
inline std::string format_rational(const Rational& r) {
    const BigInt n = num(r), d = den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

/* Strict parser for the canonical form. Surrounding whitespace is tolerated;
 * anything else (signs on q, empty fields, q == 0) is rejected. */
inline Rational parse_rational(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    const std::string_view s = text.substr(b, e - b);
    if (s.empty()) throw ParseError("empty rational");

    const auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    std::string_view ns = s, ds = "1";
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        ns = s.substr(0, slash);
        ds = s.substr(slash + 1);
    }
    bool neg = false;
    if (!ns.empty() && (ns[0] == '-' || ns[0] == '+')) {
        neg = ns[0] == '-';
        if (ns[0] == '+') throw ParseError("explicit plus sign not allowed: '" + std::string(s) + "'");
        ns = ns.substr(1);
    }
    if (!digits(ns) || !digits(ds))
        throw ParseError("malformed rational: '" + std::string(s) + "'");

    const BigInt n{std::string(ns)}, d{std::string(ds)};
    if (d == 0) throw ParseError("zero denominator: '" + std::string(s) + "'");
    Rational r = Rational(n) / Rational(d); // division canonicalizes
    return neg ? Rational(-r) : r;
}

inline Rational rat(long long n, long long d = 1) {
    if (d == 0) throw ParseError("zero denominator");
    return Rational(n) / Rational(d);
}

inline Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace polypar

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "ntw/errors.hpp"

namespace ntw {

using Integer = mpz_class;
using Rational = mpq_class;
using Int = std::int64_t;
using IntVec = std::vector<Int>;

inline Int gcd_abs(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

/// gcd of the absolute values of all entries (0 for the zero vector).
inline Int content(const IntVec& v) {
    Int g = 0;
    for (Int x : v) g = gcd_abs(g, x);
    return g;
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Int to_int(const Integer& z) {
    if (!z.fits_slong_p()) throw InvalidInput("integer out of 64-bit range: " + z.get_str());
    return z.get_si();
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "7", "-3", "5/2" (surrounding blanks are not accepted).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty rational literal");
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InvalidInput("malformed rational literal '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    Rational r{Integer(num), Integer(den)};
    if (r.get_den() == 0) throw InvalidInput("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}


inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace ntw

#pragma once
// Exact arbitrary-precision integers and rationals used throughout the
// library wherever rounding would silently invalidate a certificate.
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace recforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& v) { return v.str(); }

// "p/q" or "p"; canonical form p/q with q>0, gcd(p,q)=1.
inline std::string to_string(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

std::optional<Rat> parse_rational(const std::string& s);

// x mod 1, result in [0,1).
inline Rat frac_mod1(const Rat& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;  // floor division
    return x - Rat(q);
}

// Binomial coefficient, exact.
Int binomial(long long n, long long k);

}  // namespace recforge

// Exact arithmetic primitives used throughout the library.
//
// Every quantity that feeds a decision (definiteness, determinants, cycle
// pairings, lattice memberships) is computed over arbitrary-precision
// integers or rationals.  No floating point appears anywhere in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace plumb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int igcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// gcd of a whole vector (0 for the empty vector / all-zero input).
inline Int igcd(const std::vector<Int>& xs) {
    Int g = 0;
    for (const Int& x : xs) g = igcd(g, x);
    return g;
}

// Extended gcd: returns g = gcd(a,b) and writes x,y with a*x + b*y == g.
inline Int exgcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return (a < 0) ? Int(-a) : a;
    }
    Int x1, y1;
    Int g = exgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Ceiling division for exact integers (b > 0 assumed).
inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b < a) ++q;
    return q;
}

inline std::string to_string(const Int& x) { return x.str(); }
inline std::string to_string(const Rat& x) {
    if (boost::multiprecision::denominator(x) == 1)
        return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

}  // namespace plumb

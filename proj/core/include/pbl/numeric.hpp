// Exact arbitrary-precision integers and rationals plus small helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Base class of all domain errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
    using Error::Error;
};

inline bool fits_int64(const Int& v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Int& v) {
    if (!fits_int64(v)) throw Error("integer out of int64 range: " + v.str());
    return v.convert_to<std::int64_t>();
}

/// floor(p/q) for exact integers, q > 0.
inline Int floor_div(const Int& p, const Int& q) {
    Int quo = p / q;
    if ((p % q) != 0 && ((p < 0) != (q < 0))) --quo;
    return quo;
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Int next_prime_above(Int n) {
    Int c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

/// lcm of the denominators of a rational vector; always >= 1.
inline Int common_denominator(const std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& r : v) l = boost::multiprecision::lcm(l, den(r));
    return l;
}

/// Scale a rational vector to a primitive integer vector (gcd 1, same direction).
inline std::vector<Int> primitive_vector(const std::vector<Rat>& v) {
    Int D = common_denominator(v);
    std::vector<Int> w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = num(v[i]) * (D / den(v[i]));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    if (g > 1)
        for (Int& x : w) x /= g;
    return w;
}

inline std::string rat_str(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

}  // namespace pbl

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace coprime {

// Exact composition counts. GMP-backed: desk-scale values reach ~10^60 and
// intermediate inclusion-exclusion sums are signed.
using ExactCount = boost::multiprecision::mpz_int;

// Exact rational values (correction factors, partial sums, oracle checks).
using Rational = boost::multiprecision::mpq_rational;

inline std::string to_decimal(const ExactCount& v) { return v.str(); }

inline ExactCount exact_from_u128(unsigned __int128 v) {
    ExactCount hi = static_cast<std::uint64_t>(v >> 64);
    hi <<= 64;
    return hi + static_cast<std::uint64_t>(v);
}

inline ExactCount exact_from_i128(__int128 v) {
    if (v >= 0) return exact_from_u128(static_cast<unsigned __int128>(v));
    return -exact_from_u128(static_cast<unsigned __int128>(-v));
}

inline ExactCount pow_exact(const ExactCount& base, unsigned exp) {
    ExactCount r = 1;
    ExactCount b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e > 0) b *= b;
    }
    return r;
}

}  // namespace coprime

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coprime/errors.hpp"
#include "coprime/polyfam.hpp"
#include "coprime/types.hpp"

namespace coprime {

// A congruence-count query: solutions of y_1 + ... + y_k = target (mod p)
// over {0, ..., p-1}^k under a zero-coordinate rule.
struct CongruenceSpec {
    std::uint32_t p = 2;       // prime modulus
    unsigned k = 1;            // number of coordinates
    std::uint32_t residue = 0; // target residue in [0, p-1]
    ZeroRule rule = ZeroRule::Any;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

namespace detail {
inline void validate_congruence_spec(const CongruenceSpec& s) {
    if (s.p < 2) throw ArgumentError("congruence modulus must be >= 2");
    for (std::uint32_t q = 2; q * q <= s.p; ++q)
        if (s.p % q == 0) throw ArgumentError("congruence modulus must be prime");
    if (s.k < 1) throw ArgumentError("congruence needs at least one coordinate");
    if (s.residue >= s.p) throw ArgumentError("congruence residue out of range");
}
}  // namespace detail

// Exhaustive count. Iterates the first k-1 coordinates and solves for the
// last, so the cost is p^(k-1); deliberately independent of the closed forms
// it is used to validate.
inline ExactCount count_congruence_bruteforce(const CongruenceSpec& spec,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
    detail::validate_congruence_spec(spec);
    const std::uint64_t p = spec.p;
    {
        std::uint64_t cost = 1;
        for (unsigned i = 0; i < spec.k; ++i) {
            if (cost > budget / p)
                throw BudgetError("congruence enumeration p^k exceeds budget " +
                                  std::to_string(budget));
            cost *= p;
        }
    }

    std::uint64_t count = 0;
    std::vector<std::uint32_t> y(spec.k > 1 ? spec.k - 1 : 0, 0);
    while (true) {
        std::uint64_t sum = 0;
        unsigned zeros = 0;
        for (std::uint32_t v : y) {
            sum += v;
            if (v == 0) ++zeros;
        }
        const std::uint32_t last =
            static_cast<std::uint32_t>((spec.residue + p - sum % p) % p);
        if (last == 0) ++zeros;
        bool ok = false;
        switch (spec.rule) {
            case ZeroRule::AtLeastOne: ok = zeros >= 1; break;
            case ZeroRule::AtMostOne: ok = zeros <= 1; break;
            case ZeroRule::None: ok = zeros == 0; break;
            case ZeroRule::Any: ok = true; break;
        }
        if (ok) ++count;

        // odometer over the first k-1 coordinates
        std::size_t pos = 0;
        while (pos < y.size() && ++y[pos] == p) y[pos++] = 0;
        if (pos == y.size()) break;
    }
    return ExactCount(count);
}

// Closed-form count via the polynomial families. The divisibility flag is
// redundant with residue == 0 and must agree with it.
inline ExactCount count_congruence_closed(const CongruenceSpec& spec, bool p_divides_target) {
    detail::validate_congruence_spec(spec);
    if (p_divides_target != (spec.residue == 0))
        throw ArgumentError("p_divides_target flag inconsistent with residue");
    return zero_pattern_count({spec.rule, p_divides_target}, spec.k, ExactCount(spec.p));
}

}  // namespace coprime

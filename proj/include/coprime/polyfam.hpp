#pragma once

#include <cstdint>
#include <string>

#include "coprime/errors.hpp"
#include "coprime/types.hpp"

namespace coprime {

// Zero-coordinate rule for solutions of y_1 + ... + y_k = r (mod x).
enum class ZeroRule {
    AtLeastOne,  // some coordinate is 0
    AtMostOne,   // no two coordinates are 0
    None,        // every coordinate is nonzero
    Any,         // unrestricted
};

// Tag for the closed-form solution-count family: a zero rule together with
// whether the modulus divides the congruence target.
struct PolyFamily {
    ZeroRule rule;
    bool divides_target;  // true: target = 0 (mod x); false: target nonzero (mod x)
};

inline const char* zero_rule_name(ZeroRule r) {
    switch (r) {
        case ZeroRule::AtLeastOne: return "at-least-one-zero";
        case ZeroRule::AtMostOne: return "at-most-one-zero";
        case ZeroRule::None: return "no-zero";
        case ZeroRule::Any: return "unrestricted";
    }
    return "?";
}

inline constexpr unsigned kMaxFamilyOrder = 64;

// Exact value of the closed-form count for k coordinates at integer x >= 2.
// Each family is an integer polynomial divided by x; the numerator is always
// divisible by x at integer arguments, and we fail loudly if it is not, since
// that can only mean the formula was transcribed wrong.
inline ExactCount zero_pattern_count(PolyFamily family, unsigned k, const ExactCount& x) {
    if (k < 1 || k > kMaxFamilyOrder)
        throw ArgumentError("family order k must be in [1, " + std::to_string(kMaxFamilyOrder) +
                            "]");
    if (x < 2) throw ArgumentError("family argument x must be >= 2");

    if (family.rule == ZeroRule::Any) return pow_exact(x, k - 1);

    const ExactCount xm1 = x - 1;
    const int sk = (k % 2 == 0) ? 1 : -1;  // (-1)^k
    ExactCount num;
    switch (family.rule) {
        case ZeroRule::AtLeastOne:
            // (x^k - (x-1)^k + tail) / x
            num = pow_exact(x, k) - pow_exact(xm1, k);
            if (family.divides_target)
                num += -sk * xm1;  // (-1)^(k+1) (x-1)
            else
                num += sk;  // (-1)^k
            break;
        case ZeroRule::AtMostOne:
            // ((x-1)^k + k (x-1)^(k-1) + tail) / x
            num = pow_exact(xm1, k) + k * pow_exact(xm1, k - 1);
            if (family.divides_target)
                num += -sk * ExactCount(k - 1) * xm1;  // (-1)^(k-1) (k-1) (x-1)
            else
                num += sk * ExactCount(k - 1);  // (-1)^k (k-1)
            break;
        case ZeroRule::None:
            // ((x-1)^k + tail) / x
            num = pow_exact(xm1, k);
            if (family.divides_target)
                num += sk * xm1;  // (-1)^k (x-1)
            else
                num += -sk;  // (-1)^(k+1)
            break;
        case ZeroRule::Any:
            break;  // handled above
    }
    if (num % x != 0)
        throw InternalError("zero-pattern numerator not divisible by x (rule " +
                            std::string(zero_rule_name(family.rule)) + ", k=" + std::to_string(k) +
                            ")");
    return num / x;
}

// The four inter-family identities, checked in exact arithmetic:
//   count(at-least-one, div)  = count(at-least-one, nondiv) + (-1)^(k+1)
//   count(at-most-one, div)   = count(at-most-one, nondiv) + (-1)^(k-1) (k-1)
//   count(none, div)          = x^(k-1) - count(at-least-one, div)
//   count(none, nondiv)       = x^(k-1) - count(at-least-one, nondiv)
inline bool check_family_identities(unsigned k, const ExactCount& x) {
    const int sk1 = (k % 2 == 0) ? -1 : 1;  // (-1)^(k+1) = (-1)^(k-1)
    const ExactCount xk1 = pow_exact(x, k - 1);

    const ExactCount some_div = zero_pattern_count({ZeroRule::AtLeastOne, true}, k, x);
    const ExactCount some_non = zero_pattern_count({ZeroRule::AtLeastOne, false}, k, x);
    const ExactCount most_div = zero_pattern_count({ZeroRule::AtMostOne, true}, k, x);
    const ExactCount most_non = zero_pattern_count({ZeroRule::AtMostOne, false}, k, x);
    const ExactCount none_div = zero_pattern_count({ZeroRule::None, true}, k, x);
    const ExactCount none_non = zero_pattern_count({ZeroRule::None, false}, k, x);

    if (some_div != some_non + sk1) return false;
    if (most_div != most_non + ExactCount(sk1) * ExactCount(k - 1)) return false;
    if (none_div != xk1 - some_div) return false;
    if (none_non != xk1 - some_non) return false;
    return true;
}

}  // namespace coprime

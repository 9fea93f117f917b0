#include <catch2/catch_amalgamated.hpp>

#include "coprime/errors.hpp"
#include "coprime/polyfam.hpp"

using namespace coprime;

namespace {
ExactCount fam(ZeroRule rule, bool divides, unsigned k, std::uint64_t x) {
    return zero_pattern_count({rule, divides}, k, ExactCount(x));
}
}  // namespace

TEST_CASE("pinned family values", "[polyfam]") {
    for (std::uint64_t x : {2, 3, 5, 7})
        REQUIRE(fam(ZeroRule::AtLeastOne, false, 2, x) == 2);
    for (std::uint64_t x = 2; x <= 50; ++x) {
        REQUIRE(fam(ZeroRule::AtLeastOne, true, 2, x) == 1);
        REQUIRE(fam(ZeroRule::AtMostOne, false, 2, x) == ExactCount(x));  // order 2 is linear
    }
    REQUIRE(fam(ZeroRule::AtMostOne, false, 3, 7) == 46);  // 7^2 - 3
    REQUIRE(fam(ZeroRule::AtMostOne, true, 2, 5) == 4);    // brute-force count at p = 5
    REQUIRE(fam(ZeroRule::AtMostOne, true, 3, 2) == 3);    // brute-force count at p = 2

    // order 1 collapses
    for (std::uint64_t x : {2, 3, 10, 101}) {
        REQUIRE(fam(ZeroRule::AtLeastOne, false, 1, x) == 0);
        REQUIRE(fam(ZeroRule::AtLeastOne, true, 1, x) == 1);
        REQUIRE(fam(ZeroRule::AtMostOne, false, 1, x) == 1);
        REQUIRE(fam(ZeroRule::AtMostOne, true, 1, x) == 1);
        REQUIRE(fam(ZeroRule::None, true, 1, x) == 0);
        REQUIRE(fam(ZeroRule::None, false, 1, x) == 1);
        REQUIRE(fam(ZeroRule::Any, false, 1, x) == 1);
    }

    // small even/odd split at x = 2
    for (unsigned k = 3; k <= 12; ++k)
        REQUIRE(fam(ZeroRule::AtMostOne, false, k, 2) == (k % 2 == 0 ? ExactCount(k) : ExactCount(1)));
    REQUIRE(fam(ZeroRule::AtMostOne, false, 4, 3) == 17);  // 3^3 - 6*3 + 8
}

TEST_CASE("family identities hold in exact arithmetic", "[polyfam]") {
    REQUIRE(check_family_identities(3, 5));
    REQUIRE(check_family_identities(1, 2));
    REQUIRE(check_family_identities(7, 31));
    for (unsigned k = 1; k <= 16; ++k)
        for (std::uint64_t x = 2; x <= 60; ++x) REQUIRE(check_family_identities(k, ExactCount(x)));
    // large-argument spot checks keep the big-integer path honest
    REQUIRE(check_family_identities(16, ExactCount("1000003")));
    REQUIRE(check_family_identities(11, ExactCount("99991")));
}

TEST_CASE("argument validation", "[polyfam]") {
    REQUIRE_THROWS_AS(fam(ZeroRule::AtLeastOne, false, 0, 5), ArgumentError);
    REQUIRE_THROWS_AS(fam(ZeroRule::AtLeastOne, false, 2, 1), ArgumentError);
    REQUIRE_THROWS_AS(fam(ZeroRule::AtLeastOne, false, 65, 5), ArgumentError);
}

TEST_CASE("closed forms count zero patterns by direct enumeration", "[polyfam]") {
    // enumerate tuples over Z_x for composite x too: the at-least-one-zero and
    // no-zero forms count solutions of a sum congruence for any modulus
    for (std::uint64_t x = 2; x <= 9; ++x)
        for (unsigned k = 1; k <= 4; ++k)
            for (std::uint64_t target : {std::uint64_t{0}, std::uint64_t{1} % x}) {
                if (target == 0 && x == 1) continue;
                std::uint64_t some = 0, none = 0, most = 0, any = 0;
                std::vector<std::uint64_t> y(k, 0);
                while (true) {
                    std::uint64_t sum = 0;
                    unsigned zeros = 0;
                    for (std::uint64_t v : y) {
                        sum += v;
                        if (v == 0) ++zeros;
                    }
                    if (sum % x == target) {
                        ++any;
                        if (zeros >= 1) ++some;
                        if (zeros == 0) ++none;
                        if (zeros <= 1) ++most;
                    }
                    std::size_t pos = 0;
                    while (pos < y.size() && ++y[pos] == x) y[pos++] = 0;
                    if (pos == y.size()) break;
                }
                const bool divides = target == 0;
                REQUIRE(fam(ZeroRule::AtLeastOne, divides, k, x) == some);
                REQUIRE(fam(ZeroRule::None, divides, k, x) == none);
                REQUIRE(fam(ZeroRule::AtMostOne, divides, k, x) == most);
                REQUIRE(fam(ZeroRule::Any, divides, k, x) == any);
            }
}

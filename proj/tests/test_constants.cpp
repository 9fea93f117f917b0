#include <catch2/catch_amalgamated.hpp>

#include "coprime/constants.hpp"
#include "coprime/errors.hpp"
#include "coprime/localcount.hpp"
#include "coprime/verify.hpp"

using namespace coprime;

namespace {
const FactorTable& table() {
    static FactorTable t(10'000);
    return t;
}
}  // namespace

TEST_CASE("shared-divisor local product", "[constants]") {
    REQUIRE(shared_divisor_local_product(2, 6, 6, table()) == 1);
    REQUIRE(shared_divisor_local_product(2, 5, 6, table()) == 4);
    for (unsigned k = 1; k <= 6; ++k)
        for (std::uint64_t n : {1, 5, 12})
            REQUIRE(shared_divisor_local_product(k, n, 1, table()) == 1);
    REQUIRE_THROWS_AS(shared_divisor_local_product(2, 5, 4, table()), ArgumentError);
}

TEST_CASE("pairwise local product", "[constants]") {
    // cross-checked against the congruence oracle at p = 2
    REQUIRE(pairwise_local_product(3, 6, 2, table()) ==
            count_congruence_bruteforce({2, 3, 0, ZeroRule::AtMostOne}));
    REQUIRE(pairwise_local_product(3, 6, 2, table()) == 3);
    REQUIRE(pairwise_local_product(3, 5, 2, table()) == 1);
    REQUIRE(pairwise_local_product(4, 5, 2, table()) == 4);
}

TEST_CASE("local products are multiplicative and windowed", "[constants]") {
    const VerifyResult r = verify_local_products(table(), 4, 20, 30);
    for (const auto& f : r.failures) UNSCOPED_INFO(f);
    REQUIRE(r.ok());
}

TEST_CASE("head correction factor", "[constants]") {
    REQUIRE(head_correction_rational(1, 10, table()) == Rational(2, 5));
    REQUIRE(head_correction_rational(2, 2, table()) == Rational(3, 2));
    for (unsigned k = 1; k <= 8; ++k) REQUIRE(head_correction_rational(k, 1, table()) == 1);
    // order 1 collapses to the totient ratio
    for (std::uint64_t n = 2; n <= 300; ++n)
        REQUIRE(head_correction_rational(1, n, table()) ==
                Rational(table().totient(n), ExactCount(n)));
}

TEST_CASE("pairwise correction factor", "[constants]") {
    REQUIRE(pairwise_correction_rational(3, 2, table()) == 3);
    REQUIRE(pairwise_correction_rational(4, 3, table()) == Rational(14, 17));
    for (std::uint64_t n = 2; n <= 300; ++n)
        REQUIRE(pairwise_correction_rational(2, n, table()) ==
                Rational(table().totient(n), ExactCount(n)));

    // literal one-plus form agrees with the count-ratio form
    for (unsigned k = 3; k <= 8; ++k)
        for (std::uint64_t n = 2; n <= 100; ++n) {
            Rational literal = 1;
            for (const auto& [p, e] : table().factorize(n).prime_powers) {
                const ExactCount del =
                    zero_pattern_count({ZeroRule::AtMostOne, false}, k, ExactCount(p));
                const ExactCount num =
                    (k % 2 == 0) ? del - ExactCount(k - 1) : del + ExactCount(k - 1);
                literal *= Rational(num, del);
            }
            REQUIRE(literal == pairwise_correction_rational(k, n, table()));
        }
    REQUIRE_THROWS_AS(pairwise_correction_rational(1, 10, table()), ArgumentError);
}

TEST_CASE("square-free weighted partial sum", "[constants]") {
    REQUIRE(squarefree_weighted_sum(1, 3, table()) == Rational(11, 6));
    REQUIRE(squarefree_weighted_sum(2, 3, table()) == Rational(8, 3));
    REQUIRE(squarefree_weighted_sum(2, 4, table()) == Rational(8, 3));
    REQUIRE(squarefree_weighted_sum(3, 1, table()) == 1);

    // larger exact values computed with an independent bignum tool
    REQUIRE(squarefree_weighted_sum(5, 50, table()) ==
            Rational(ExactCount("4169945141285844659"), ExactCount("122977956517698282")));
    REQUIRE(squarefree_weighted_sum(3, 100, table()) ==
            Rational(ExactCount("1344331474718426422667556634089224110"),
                     ExactCount("76852265464850614158436738244391869")));
}

TEST_CASE("deviation polynomials match the closed-form counts", "[constants]") {
    for (unsigned k = 2; k <= 12; ++k) {
        const auto poly = detail::deviation_poly(EulerKind::HeadCoprime, k);
        for (std::uint32_t p : table().primes()) {
            if (p > 2000) break;
            REQUIRE(detail::eval_deviation(poly, p) ==
                    zero_pattern_count({ZeroRule::AtLeastOne, false}, k, ExactCount(p)));
        }
    }
    for (unsigned k = 3; k <= 12; ++k) {
        const auto poly = detail::deviation_poly(EulerKind::PairwiseCoprime, k);
        for (std::uint32_t p : table().primes()) {
            if (p > 2000) break;
            REQUIRE(detail::eval_deviation(poly, p) ==
                    pow_exact(ExactCount(p), k - 1) -
                        zero_pattern_count({ZeroRule::AtMostOne, false}, k, ExactCount(p)));
        }
    }
}

TEST_CASE("exact unit constants", "[constants]") {
    const auto c1 = euler_constant(EulerKind::HeadCoprime, 1, 1e-9);
    REQUIRE(c1.point == Real::of_ui(1));
    REQUIRE(c1.lo == c1.hi);
    const auto d2 = euler_constant(EulerKind::PairwiseCoprime, 2, 1e-9);
    REQUIRE(d2.point == Real::of_ui(1));
    REQUIRE(d2.width().is_zero());
    REQUIRE_THROWS_AS(euler_constant(EulerKind::PairwiseCoprime, 1, 1e-5), ArgumentError);
}

TEST_CASE("enclosures bracket independently computed values", "[constants]") {
    // reference points computed with a separate high-precision tool
    struct Ref {
        EulerKind kind;
        unsigned k;
        double value;
    };
    const Ref refs[] = {
        {EulerKind::HeadCoprime, 2, 0.3226341125},    {EulerKind::HeadCoprime, 3, 0.38158959},
        {EulerKind::PairwiseCoprime, 3, 0.1254869888}, {EulerKind::PairwiseCoprime, 5, 0.0131290683},
    };
    for (const auto& ref : refs) {
        const auto enc = euler_constant(ref.kind, ref.k, 1e-5);
        REQUIRE(enc.width() <= Real::of_double(1e-5));
        REQUIRE(enc.lo <= Real::of_double(ref.value + 1e-7));
        REQUIRE(Real::of_double(ref.value - 1e-7) <= enc.hi);
        REQUIRE(enc.lo <= enc.point);
        REQUIRE(enc.point <= enc.hi);
    }
}

TEST_CASE("enclosures nest as the width tightens", "[constants]") {
    const auto wide = euler_constant(EulerKind::HeadCoprime, 2, 1e-4);
    const auto tight = euler_constant(EulerKind::HeadCoprime, 2, 1e-6);
    REQUIRE(tight.cutoff > wide.cutoff);
    REQUIRE(wide.lo <= tight.lo);
    REQUIRE(tight.hi <= wide.hi);
}

TEST_CASE("unreachable width reports the partial enclosure", "[constants]") {
    try {
        euler_constant(EulerKind::PairwiseCoprime, 7, 1e-12, 1'000'000);
        FAIL("expected WidthUnreachableError");
    } catch (const WidthUnreachableError& e) {
        REQUIRE(e.achieved.cutoff == 1'000'000);
        REQUIRE(e.achieved.lo <= e.achieved.hi);
        REQUIRE(e.achieved.width() > Real::of_double(1e-12));
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "coprime/bounds.hpp"
#include "coprime/verify.hpp"

using namespace coprime;

namespace {
const FactorTable& table() {
    static FactorTable t(5000);
    return t;
}
const Estimator& estimator() {
    static Estimator est(table(), 1e-7, 1e-6);
    return est;
}
}  // namespace

TEST_CASE("pairwise bound applicability threshold", "[bounds]") {
    REQUIRE_FALSE(pairwise_bound_applicable(2, 100));
    REQUIRE_FALSE(pairwise_bound_applicable(2, 1'000'000));
    REQUIRE_FALSE(pairwise_bound_applicable(3, 100));
    REQUIRE_FALSE(pairwise_bound_applicable(3, std::uint64_t{1} << 62));
    // e^32 = 78962960182680.695...; the threshold for order 2
    REQUIRE(pairwise_bound_applicable(2, 100'000'000'000'000ull));
    REQUIRE(pairwise_bound_applicable(2, 78'962'960'182'681ull));
    REQUIRE_FALSE(pairwise_bound_applicable(2, 78'962'960'182'680ull));
}

TEST_CASE("head bound right-hand side values", "[bounds]") {
    const auto rhs = detail::head_bound_rhs(2, 100);
    // (2+e)/sqrt(4 pi) * (e^2 log 100)^2 * 100 = 154107.6...
    REQUIRE(rhs.iv.lo <= rhs.point);
    REQUIRE(rhs.point <= rhs.iv.hi);
    REQUIRE(rhs.point > Real::of_double(1.540e5));
    REQUIRE(rhs.point < Real::of_double(1.542e5));
    REQUIRE_THROWS_AS(detail::head_bound_rhs(2, 1), ArgumentError);
}

TEST_CASE("pairwise bound right-hand side values", "[bounds]") {
    const auto rhs = detail::pairwise_bound_rhs(3, 100);
    // 707 * 100^2 / log 100 = 1535228.1...
    REQUIRE(rhs.point > Real::of_double(1.5352e6));
    REQUIRE(rhs.point < Real::of_double(1.5353e6));
}

TEST_CASE("order-1 head reports are exact", "[bounds]") {
    const auto rep = estimator().make_report('A', 1, 997, CountMethod::Oracle);
    REQUIRE(rep.exact);
    REQUIRE(*rep.exact == table().totient(997));
    REQUIRE(rep.main_rational);
    REQUIRE(rep.abs_error->is_zero());
    REQUIRE(rep.rel_error->is_zero());
    REQUIRE(rep.bound_satisfied.value());

    for (std::uint64_t n : {10, 36, 360, 997, 2000}) {
        const auto r = estimator().make_report('A', 1, n, CountMethod::MoebiusExact);
        REQUIRE(r.abs_error->is_zero());
    }
}

TEST_CASE("order-2 pairwise reports are exact and not applicable", "[bounds]") {
    const auto rep = estimator().make_report('B', 2, 500, CountMethod::Oracle);
    REQUIRE(rep.exact);
    REQUIRE(rep.abs_error->is_zero());
    REQUIRE_FALSE(rep.bound_applicable);
    REQUIRE_FALSE(rep.bound_satisfied.has_value());
}

TEST_CASE("head report satisfies the theorem bound", "[bounds]") {
    const auto rep = estimator().make_report('A', 2, 60, CountMethod::MoebiusExact);
    REQUIRE(rep.exact);
    REQUIRE(*rep.exact == 1042);
    REQUIRE(rep.bound_applicable);
    REQUIRE(rep.bound_satisfied.value());
    REQUIRE(rep.main.contains(rep.main_point));
}

TEST_CASE("theorem bound sweep at modest range", "[bounds]") {
    const VerifyResult r = verify_head_estimate_bound(estimator(), 3, 120);
    for (const auto& f : r.failures) UNSCOPED_INFO(f);
    REQUIRE(r.ok());
}

TEST_CASE("trend sweep respects grid order and emptiness", "[bounds]") {
    REQUIRE(estimator().trend_sweep('A', 2, {}, CountMethod::MoebiusExact).empty());
    const std::vector<std::uint64_t> grid = {20, 40, 60};
    const auto reports = estimator().trend_sweep('A', 2, grid, CountMethod::MoebiusExact);
    REQUIRE(reports.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(reports[i].n == grid[i]);
        REQUIRE(reports[i].exact);
        REQUIRE(*reports[i].exact == count_head_coprime_oracle(2, grid[i]));
    }
    const auto oracle_reports = estimator().trend_sweep('B', 3, {10, 20}, CountMethod::Oracle);
    REQUIRE(oracle_reports.size() == 2);
    REQUIRE(*oracle_reports[1].exact == count_pairwise_coprime_oracle(3, 20));
}

TEST_CASE("main terms are positive beyond the degenerate range", "[bounds]") {
    for (unsigned k = 1; k <= 4; ++k)
        for (std::uint64_t n = k + 1; n <= 80; n += 7) {
            Real point;
            const Interval iv = estimator().main_term_head(k, n, &point);
            REQUIRE(iv.lo.sign() > 0);
            REQUIRE(point.sign() > 0);
        }
    for (unsigned k = 2; k <= 4; ++k)
        for (std::uint64_t n = k + 1; n <= 80; n += 7) {
            Real point;
            const Interval iv = estimator().main_term_pairwise(k, n, &point);
            REQUIRE(iv.lo.sign() > 0);
        }
}

TEST_CASE("correction factor real accessors", "[bounds]") {
    const Real f = head_correction(1, 10, table());
    REQUIRE(f == Real::of_rational(Rational(2, 5), MPFR_RNDN));
    const Real g = pairwise_correction(3, 2, table());
    REQUIRE(g == Real::of_ui(3));
}

TEST_CASE("estimate bound suites", "[bounds]") {
    const VerifyResult p42 = verify_shared_divisor_estimate(table(), 3, 15, 30);
    for (const auto& f : p42.failures) UNSCOPED_INFO(f);
    REQUIRE(p42.ok());
    const VerifyResult p53 = verify_pairwise_estimate(table(), 6, 20);
    for (const auto& f : p53.failures) UNSCOPED_INFO(f);
    REQUIRE(p53.ok());
}

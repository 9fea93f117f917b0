#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/errors.hpp"

using namespace coprime;

namespace {

// independent trial-division primality, used to cross-check the sieves
bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

// independent composition counter by direct enumeration
std::uint64_t count_compositions_brute(std::uint64_t n, unsigned parts) {
    if (parts == 1) return n >= 1 ? 1 : 0;
    std::uint64_t c = 0;
    for (std::uint64_t first = 1; first + parts - 1 <= n; ++first)
        c += count_compositions_brute(n - first, parts - 1);
    return c;
}

const FactorTable& small_table() {
    static FactorTable t(100'000);
    return t;
}

}  // namespace

TEST_CASE("factor table primes match trial division", "[arith]") {
    FactorTable t10(10);
    REQUIRE(t10.primes() == std::vector<std::uint32_t>{2, 3, 5, 7});
    FactorTable t2(2);
    REQUIRE(t2.primes() == std::vector<std::uint32_t>{2});

    const auto& t = small_table();
    REQUIRE(t.primes().size() == 9592);  // pi(10^5)
    for (std::uint64_t m = 2; m <= 500; ++m) {
        REQUIRE(t.is_prime(m) == is_prime_trial(m));
        REQUIRE(m % t.smallest_prime_factor(m) == 0);
        REQUIRE(is_prime_trial(t.smallest_prime_factor(m)));
    }
}

TEST_CASE("factor table limit validation", "[arith]") {
    REQUIRE_THROWS_AS(FactorTable(1), ConfigError);
    REQUIRE_THROWS_AS(small_table().factorize(100'001), ArgumentError);
    REQUIRE_THROWS_AS(small_table().moebius(0), ArgumentError);
}

TEST_CASE("factorization recomposes and is ordered", "[arith]") {
    const auto& t = small_table();
    const auto f12 = t.factorize(12);
    REQUIRE(f12.prime_powers ==
            std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
    REQUIRE(t.factorize(1).prime_powers.empty());

    FactorTable big(10'000'000);
    const auto f = big.factorize(9'699'690);
    REQUIRE(f.distinct_primes() == 8);
    std::uint64_t back = 1;
    for (const auto& [p, e] : f.prime_powers) {
        REQUIRE(e == 1);
        for (unsigned i = 0; i < e; ++i) back *= p;
    }
    REQUIRE(back == 9'699'690);
    REQUIRE(big.primes().size() == 664'579);  // pi(10^7)

    for (std::uint64_t m = 2; m <= 2000; ++m) {
        const auto fac = t.factorize(m);
        std::uint64_t prod = 1;
        for (std::size_t i = 0; i < fac.prime_powers.size(); ++i) {
            if (i > 0) REQUIRE(fac.prime_powers[i - 1].first < fac.prime_powers[i].first);
            for (unsigned j = 0; j < fac.prime_powers[i].second; ++j)
                prod *= fac.prime_powers[i].first;
        }
        REQUIRE(prod == m);
    }
}

TEST_CASE("moebius values and the fundamental divisor-sum property", "[arith]") {
    const auto& t = small_table();
    REQUIRE(t.moebius(1) == 1);
    REQUIRE(t.moebius(6) == 1);
    REQUIRE(t.moebius(12) == 0);

    constexpr std::uint64_t limit = 100'000;
    std::vector<int> sums(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d) {
        const int mu = t.moebius(d);
        if (mu == 0) continue;
        for (std::uint64_t m = d; m <= limit; m += d) sums[m] += mu;
    }
    REQUIRE(sums[1] == 1);
    for (std::uint64_t m = 2; m <= limit; ++m) REQUIRE(sums[m] == 0);
}

TEST_CASE("squarefree range matches the moebius support", "[arith]") {
    const auto& t = small_table();
    {
        const auto entries = squarefree_range(10, t);
        std::vector<std::uint64_t> ds;
        for (const auto& e : entries) ds.push_back(e.d);
        REQUIRE(ds == std::vector<std::uint64_t>{1, 2, 3, 5, 6, 7, 10});
    }
    REQUIRE(squarefree_range(1, t).size() == 1);
    REQUIRE(squarefree_range(100, t).size() == 61);

    const auto entries = squarefree_range(10'000, t);
    std::size_t idx = 0;
    for (std::uint64_t d = 1; d <= 10'000; ++d) {
        if (t.moebius(d) != 0) {
            REQUIRE(entries[idx].d == d);
            REQUIRE(entries[idx].mu == t.moebius(d));
            REQUIRE(entries[idx].omega == t.factorize(d).distinct_primes());
            ++idx;
        }
    }
    REQUIRE(idx == entries.size());
}

TEST_CASE("totient agrees with direct gcd counting and the product form", "[arith]") {
    const auto& t = small_table();
    REQUIRE(t.totient(10) == 4);
    REQUIRE(t.totient(1) == 1);
    REQUIRE(t.totient(360) == 96);

    for (std::uint64_t m : {2, 36, 97, 360, 1024, 30030}) {
        std::uint64_t direct = 0;
        for (std::uint64_t x = 1; x <= m; ++x)
            if (std::gcd(x, m) == 1) ++direct;
        REQUIRE(t.totient(m) == direct);
    }

    for (std::uint64_t m = 1; m <= 10'000; ++m) {
        Rational prod(ExactCount(m), ExactCount(1));
        for (const auto& [p, e] : t.factorize(m).prime_powers)
            prod *= Rational(ExactCount(p - 1), ExactCount(p));
        REQUIRE(Rational(t.totient(m)) == prod);
    }
}

TEST_CASE("binomial coefficients", "[arith]") {
    REQUIRE(binomial(4, 2) == 6);
    REQUIRE(binomial(39, 4) == 82251);
    REQUIRE(binomial(3, 5) == 0);
    REQUIRE(binomial(0, 0) == 1);

    // Pascal-triangle oracle
    std::vector<std::vector<ExactCount>> pascal(60);
    for (unsigned i = 0; i < 60; ++i) {
        pascal[i].assign(i + 1, 1);
        for (unsigned j = 1; j < i; ++j) pascal[i][j] = pascal[i - 1][j - 1] + pascal[i - 1][j];
    }
    for (unsigned i = 0; i < 60; ++i)
        for (unsigned j = 0; j <= i; ++j) REQUIRE(binomial(i, j) == pascal[i][j]);

    // ties the closed form to direct composition enumeration
    for (std::uint64_t n = 1; n <= 30; ++n)
        for (unsigned k = 0; k <= 5; ++k)
            REQUIRE(binomial(n - 1, k) == count_compositions_brute(n, k + 1));
}

TEST_CASE("segmented prime stream", "[arith]") {
    REQUIRE(count_primes_up_to(1'000'000) == 78498);

    std::vector<std::uint64_t> streamed;
    for_primes_in_range(2, 100'000, [&](std::uint64_t p) { streamed.push_back(p); });
    const auto& sieved = small_table().primes();
    REQUIRE(streamed.size() == sieved.size());
    for (std::size_t i = 0; i < streamed.size(); ++i) REQUIRE(streamed[i] == sieved[i]);

    // a window away from the origin, against trial division
    std::vector<std::uint64_t> window;
    for_primes_in_range(1'000'000, 1'001'000, [&](std::uint64_t p) { window.push_back(p); });
    std::vector<std::uint64_t> expected;
    for (std::uint64_t m = 1'000'000; m <= 1'001'000; ++m)
        if (is_prime_trial(m)) expected.push_back(m);
    REQUIRE(window == expected);
}

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/errors.hpp"
#include "coprime/parallel.hpp"
#include "coprime/types.hpp"

namespace coprime {

enum class CountMethod { Oracle, MoebiusExact, PerHeadDp, ResidueDp, ClosedForm };

inline const char* count_method_name(CountMethod m) {
    switch (m) {
        case CountMethod::Oracle: return "oracle";
        case CountMethod::MoebiusExact: return "moebius";
        case CountMethod::PerHeadDp: return "perhead";
        case CountMethod::ResidueDp: return "dp";
        case CountMethod::ClosedForm: return "closed";
    }
    return "?";
}

struct CountBudget {
    std::uint64_t max_enumerated = 10'000'000;  // oracle budget: compositions visited
    std::uint64_t max_fast_n = 3000;            // ceiling on n for the fast exact algorithms
};

namespace detail {

inline void check_oracle_budget(std::uint64_t n, unsigned parts_minus_1,
                                const CountBudget& budget) {
    if (binomial(n - 1, parts_minus_1) > budget.max_enumerated)
        throw BudgetError("enumeration of " + std::to_string(parts_minus_1 + 1) +
                          "-part compositions of " + std::to_string(n) +
                          " exceeds the oracle budget of " + std::to_string(budget.max_enumerated));
}

inline std::vector<std::uint64_t> distinct_primes_of(std::uint64_t d, const FactorTable& table) {
    const Factorization f = table.factorize(d);
    if (!f.is_squarefree())
        throw ArgumentError("d = " + std::to_string(d) + " is not square-free");
    std::vector<std::uint64_t> ps;
    ps.reserve(f.prime_powers.size());
    for (const auto& [p, e] : f.prime_powers) ps.push_back(p);
    return ps;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

// Number of (k+1)-part compositions of n: binom(n-1, k). Zero when n <= k.
inline ExactCount count_compositions(unsigned k, std::uint64_t n) {
    if (n == 0) return 0;
    return binomial(n - 1, k);
}

// Number of generalized (k+1)-part compositions of n (parts may be zero).
inline ExactCount count_weak_compositions(unsigned k, std::uint64_t n) {
    return binomial(n + k, k);
}

// ---------------------------------------------------------------------------
// Brute-force oracles. These enumerate compositions directly and are the
// ground truth every fast algorithm is checked against; they never call the
// fast paths.
// ---------------------------------------------------------------------------

// Count (k+1)-part compositions (head, t_1, ..., t_k) of n with
// gcd(head, t_i) = 1 for every tail part.
inline ExactCount count_head_coprime_oracle(unsigned k, std::uint64_t n,
                                            const CountBudget& budget = {}) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    if (n < k + 1) return 0;
    detail::check_oracle_budget(n, k, budget);

    std::uint64_t total = 0;
    // tail recursion over parts; the last part is forced
    auto count_tails = [&](auto&& self, std::uint64_t head, std::uint64_t rem,
                           unsigned parts_left) -> std::uint64_t {
        if (parts_left == 1) return std::gcd(head, rem) == 1 ? 1 : 0;
        std::uint64_t c = 0;
        for (std::uint64_t v = 1; v + (parts_left - 1) <= rem; ++v)
            if (std::gcd(head, v) == 1) c += self(self, head, rem - v, parts_left - 1);
        return c;
    };
    for (std::uint64_t head = 1; head + k <= n; ++head)
        total += count_tails(count_tails, head, n - head, k);
    return ExactCount(total);
}

// Count k-part compositions of n whose parts are pairwise coprime.
inline ExactCount count_pairwise_coprime_oracle(unsigned k, std::uint64_t n,
                                                const CountBudget& budget = {}) {
    if (k < 2) throw ArgumentError("pairwise-coprime counts need k >= 2");
    if (n < k) return 0;
    detail::check_oracle_budget(n, k - 1, budget);

    std::vector<std::uint64_t> placed;
    placed.reserve(k);
    auto rec = [&](auto&& self, std::uint64_t rem, unsigned parts_left) -> std::uint64_t {
        if (parts_left == 1) {
            for (std::uint64_t q : placed)
                if (std::gcd(q, rem) != 1) return 0;
            return 1;
        }
        std::uint64_t c = 0;
        for (std::uint64_t v = 1; v + (parts_left - 1) <= rem; ++v) {
            bool ok = true;
            for (std::uint64_t q : placed)
                if (std::gcd(q, v) != 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            placed.push_back(v);
            c += self(self, rem - v, parts_left - 1);
            placed.pop_back();
        }
        return c;
    };
    return ExactCount(rec(rec, n, k));
}

// Fast two-part pairwise-coprime count: pairs (x, n-x) with gcd(x, n-x) = 1,
// i.e. gcd(x, n) = 1, so this equals the totient of n.
inline ExactCount count_pairwise_coprime_fast2(std::uint64_t n, const FactorTable& table) {
    if (n < 2) throw ArgumentError("two-part compositions need n >= 2");
    return table.totient(n);
}

// Count (k+1)-part compositions (head, t_1, ..., t_k) of n where d divides
// the head and d divides the product of the tail parts.
inline ExactCount count_shared_divisor_oracle(unsigned k, std::uint64_t d, std::uint64_t n,
                                              const FactorTable& table,
                                              const CountBudget& budget = {}) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    if (d < 1) throw ArgumentError("d must be >= 1");
    const auto ps = detail::distinct_primes_of(d, table);
    if (d > n) return 0;
    if (n < k + 1) return 0;
    detail::check_oracle_budget(n, k, budget);

    const unsigned np = static_cast<unsigned>(ps.size());
    const std::uint32_t full = np == 0 ? 0 : (std::uint32_t{1} << np) - 1;
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, std::uint64_t rem, unsigned parts_left,
                   std::uint32_t covered) -> std::uint64_t {
        if (parts_left == 1) {
            for (unsigned i = 0; i < np; ++i)
                if (rem % ps[i] == 0) covered |= std::uint32_t{1} << i;
            return covered == full ? 1 : 0;
        }
        std::uint64_t c = 0;
        for (std::uint64_t v = 1; v + (parts_left - 1) <= rem; ++v) {
            std::uint32_t cov = covered;
            for (unsigned i = 0; i < np; ++i)
                if (v % ps[i] == 0) cov |= std::uint32_t{1} << i;
            c += self(self, rem - v, parts_left - 1, cov);
        }
        return c;
    };
    for (std::uint64_t head = d; head + k <= n; head += d)
        total += rec(rec, n - head, k, 0);
    return ExactCount(total);
}

// Count k-part compositions of n where no prime dividing d divides two
// distinct parts (pairwise coprimality enforced only at the primes of d).
// d may exceed n: the constraint involves only the primes of d.
inline ExactCount count_pairwise_coprime_at_d_oracle(unsigned k, std::uint64_t d, std::uint64_t n,
                                                     const FactorTable& table,
                                                     const CountBudget& budget = {}) {
    if (k < 2) throw ArgumentError("pairwise-coprime counts need k >= 2");
    const auto ps = detail::distinct_primes_of(d, table);
    if (n < k) return 0;
    detail::check_oracle_budget(n, k - 1, budget);

    const unsigned np = static_cast<unsigned>(ps.size());
    std::vector<bool> used(np, false);
    auto rec = [&](auto&& self, std::uint64_t rem, unsigned parts_left) -> std::uint64_t {
        if (parts_left == 1) {
            for (unsigned i = 0; i < np; ++i)
                if (rem % ps[i] == 0 && used[i]) return 0;
            return 1;
        }
        std::uint64_t c = 0;
        for (std::uint64_t v = 1; v + (parts_left - 1) <= rem; ++v) {
            bool ok = true;
            std::uint32_t marked = 0;
            for (unsigned i = 0; i < np; ++i) {
                if (v % ps[i] == 0) {
                    if (used[i]) {
                        ok = false;
                        break;
                    }
                    marked |= std::uint32_t{1} << i;
                }
            }
            if (ok) {
                for (unsigned i = 0; i < np; ++i)
                    if (marked & (std::uint32_t{1} << i)) used[i] = true;
                c += self(self, rem - v, parts_left - 1);
                for (unsigned i = 0; i < np; ++i)
                    if (marked & (std::uint32_t{1} << i)) used[i] = false;
            }
        }
        return c;
    };
    return ExactCount(rec(rec, n, k));
}

// ---------------------------------------------------------------------------
// Exact shared-divisor counts without enumeration.
//
// Write head = d*X and tail part t_j = r_j + d*Y_j with residue r_j in
// [0, d-1]. The tuple (r_1, ..., r_k) must sum to n mod d and every prime of
// d must divide some r_j; given residues with sum s and z zeros, the
// remaining choices (X >= 1, Y_j >= [r_j = 0]) form a weak composition, of
// which there are binom(m - 1 - z + k, k) with m = (n - s)/d. The tables
// below hold the residue-tuple distribution by (zero count, exact sum).
// ---------------------------------------------------------------------------

struct ResidueSumTables {
    unsigned k = 1;
    std::uint64_t d = 1;
    // by_zeros[z][s]: residue tuples with exactly z zeros, sum s, and every
    // prime of d covered. s ranges over [0, k*(d-1)].
    std::vector<std::vector<std::uint64_t>> by_zeros;
};

namespace detail {

// coeffs of (q^1 + ... + q^(d-1)) * cur, truncated to out_len, via prefix sums
inline void convolve_full_window(std::vector<std::uint64_t>& cur, std::uint64_t d,
                                 std::size_t out_len) {
    std::vector<std::uint64_t> pre(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) pre[i + 1] = pre[i] + cur[i];
    std::vector<std::uint64_t> next(out_len, 0);
    for (std::size_t s = 0; s < out_len; ++s) {
        // sum of cur[s-r] over r in [1, d-1]
        const std::size_t hi = std::min<std::size_t>(s, cur.size());  // exclusive in pre
        const std::size_t lo = s >= d ? s - d + 1 : 0;
        if (hi > lo) next[s] = pre[hi] - pre[lo];
    }
    cur = std::move(next);
}

inline void convolve_with_set(std::vector<std::uint64_t>& cur,
                              const std::vector<std::uint32_t>& residues, std::size_t out_len) {
    std::vector<std::uint64_t> next(out_len, 0);
    for (std::uint32_t r : residues)
        for (std::size_t s = 0; s + r < out_len && s < cur.size(); ++s)
            if (cur[s]) next[s + r] += cur[s];
    cur = std::move(next);
}

}  // namespace detail

// Residue-tuple distribution for the shared-divisor count. Cost is about
// k^2 * d^2 * 2^omega(d); the value range requires (d-1)^k < 2^63.
inline ResidueSumTables shared_divisor_residue_tables(unsigned k, std::uint64_t d,
                                                      const FactorTable& table) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    const auto ps = detail::distinct_primes_of(d, table);
    if (d > 1) {
        const double bits = static_cast<double>(k) * std::log2(static_cast<double>(d));
        if (bits > 62.0)
            throw BudgetError("residue tables for k=" + std::to_string(k) +
                              ", d=" + std::to_string(d) + " exceed the 64-bit value range");
    }

    const std::size_t len = static_cast<std::size_t>(k) * (d - 1) + 1;
    ResidueSumTables out;
    out.k = k;
    out.d = d;
    out.by_zeros.assign(k + 1, {});

    // powers[j][s] = tuples in [1, d-1]^j with sum s
    std::vector<std::vector<std::uint64_t>> powers(k + 1);
    powers[0] = {1};
    for (unsigned j = 1; j <= k; ++j) {
        powers[j] = powers[j - 1];
        detail::convolve_full_window(powers[j], d, static_cast<std::size_t>(j) * (d - 1) + 1);
    }

    // z >= 1: a zero residue covers every prime, so the remaining k-z nonzero
    // residues are unconstrained.
    for (unsigned z = 1; z <= k; ++z) {
        const ExactCount ways = binomial(k, z);
        const std::uint64_t w = static_cast<std::uint64_t>(ways);
        auto& row = out.by_zeros[z];
        row.assign(len, 0);
        const auto& base = powers[k - z];
        for (std::size_t s = 0; s < base.size(); ++s) row[s] = w * base[s];
    }

    // z = 0: inclusion-exclusion over the set of primes of d left uncovered.
    {
        std::vector<__int128> acc(len, 0);
        for (std::size_t s = 0; s < powers[k].size(); ++s) acc[s] = powers[k][s];
        const unsigned np = static_cast<unsigned>(ps.size());
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << np); ++mask) {
            std::vector<std::uint32_t> allowed;
            allowed.reserve(d);
            for (std::uint64_t r = 1; r < d; ++r) {
                bool ok = true;
                for (unsigned i = 0; i < np && ok; ++i)
                    if ((mask & (std::uint32_t{1} << i)) && r % ps[i] == 0) ok = false;
                if (ok) allowed.push_back(static_cast<std::uint32_t>(r));
            }
            std::vector<std::uint64_t> cur = {1};
            for (unsigned j = 1; j <= k; ++j)
                detail::convolve_with_set(cur, allowed,
                                          static_cast<std::size_t>(j) * (d - 1) + 1);
            const int sign = (std::popcount(mask) % 2 == 0) ? 1 : -1;
            for (std::size_t s = 0; s < cur.size(); ++s)
                acc[s] += sign * static_cast<__int128>(cur[s]);
        }
        auto& row = out.by_zeros[0];
        row.assign(len, 0);
        for (std::size_t s = 0; s < len; ++s) {
            if (acc[s] < 0)
                throw InternalError("negative covered-residue count; inclusion-exclusion bug");
            row[s] = static_cast<std::uint64_t>(acc[s]);
        }
    }
    return out;
}

// Number of admissible residue tuples for (k, n, d): the tables aggregated
// over sums congruent to n mod d, ignoring the composition factor.
inline ExactCount shared_divisor_residue_count_dp(unsigned k, std::uint64_t d, std::uint64_t n,
                                                  const FactorTable& table) {
    const ResidueSumTables t = shared_divisor_residue_tables(k, d, table);
    unsigned __int128 total = 0;
    const std::size_t len = t.by_zeros[0].size();
    for (std::size_t s = n % d; s < len; s += d)
        for (unsigned z = 0; z <= k; ++z) total += t.by_zeros[z][s];
    return exact_from_u128(total);
}

// Exact shared-divisor count via the residue tables; no enumeration.
inline ExactCount count_shared_divisor_dp(unsigned k, std::uint64_t d, std::uint64_t n,
                                          const FactorTable& table) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    detail::distinct_primes_of(d, table);  // validates square-freeness
    if (d > n || n == 0) return 0;
    const ResidueSumTables t = shared_divisor_residue_tables(k, d, table);
    ExactCount total = 0;
    const std::size_t len = t.by_zeros[0].size();
    for (std::size_t s = n % d; s < len && s <= n; s += d) {
        const std::uint64_t m = (n - s) / d;
        for (unsigned z = 0; z <= k; ++z) {
            const std::uint64_t w = t.by_zeros[z][s];
            if (w == 0) continue;
            if (m < z + 1) continue;  // binom(m-1-z+k, k) = 0
            total += ExactCount(w) * binomial(m - 1 - z + k, k);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Head-coprime counts: Moebius route and per-head route. Both are exact; they
// are independent algorithms and are cross-checked in the test suite.
// ---------------------------------------------------------------------------

namespace detail {

// binom(j, k) for j in [0, jmax] as uint64, or empty if the row would overflow.
inline std::vector<std::uint64_t> binomial_row_u64(unsigned k, std::uint64_t jmax) {
    if (binomial(jmax, k) >= ExactCount(std::uint64_t{1} << 63)) return {};
    std::vector<std::uint64_t> row(jmax + 1, 0);
    for (std::uint64_t j = k; j <= jmax; ++j)
        row[j] = static_cast<std::uint64_t>(binomial(j, k));
    return row;
}

inline void check_fast_budget(unsigned k, std::uint64_t n_max, const FactorTable& table,
                              const CountBudget& budget) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    if (n_max > budget.max_fast_n)
        throw BudgetError("n = " + std::to_string(n_max) + " exceeds the fast-count budget of " +
                          std::to_string(budget.max_fast_n));
    if (n_max > table.limit()) throw ArgumentError("n exceeds the factor table limit");
}

}  // namespace detail

// All head-coprime counts for n in [0, n_max], by inclusion-exclusion over
// square-free d: sum of mu(d) * (shared-divisor count for d). The residue
// tables for each d are shared across every n, which is what makes the full
// sweep no more expensive than the single largest n.
inline std::vector<ExactCount> head_coprime_moebius_sweep(unsigned k, std::uint64_t n_max,
                                                          const FactorTable& table,
                                                          const CountBudget& budget = {},
                                                          unsigned threads = 0) {
    detail::check_fast_budget(k, n_max, table, budget);
    std::vector<ExactCount> result(n_max + 1, ExactCount(0));
    if (n_max == 0) return result;

    const auto row = detail::binomial_row_u64(k, n_max + k);
    if (row.empty())
        throw BudgetError("binomial range for k=" + std::to_string(k) +
                          ", n=" + std::to_string(n_max) + " exceeds 64-bit counts");

    const auto squarefree = squarefree_range(n_max, table);
    const unsigned nthreads = effective_threads(threads);
    std::vector<std::vector<__int128>> partials(nthreads);
    std::mutex merge_mutex;

    run_chunks(0, squarefree.size(), std::max<std::size_t>(nthreads * 8, 1), nthreads,
               [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                   std::vector<__int128> acc(n_max + 1, 0);
                   for (std::size_t i = lo; i < hi; ++i) {
                       const auto& entry = squarefree[i];
                       const std::uint64_t d = entry.d;
                       const ResidueSumTables t = shared_divisor_residue_tables(k, d, table);
                       const std::size_t len = t.by_zeros[0].size();
                       for (unsigned z = 0; z <= k; ++z) {
                           const auto& trow = t.by_zeros[z];
                           for (std::size_t s = 0; s < len && s <= n_max; ++s) {
                               const std::uint64_t w = trow[s];
                               if (w == 0) continue;
                               // n = s + m*d with m >= z + 1
                               for (std::uint64_t m = z + 1; s + m * d <= n_max; ++m) {
                                   const std::uint64_t term = w * row[m - 1 - z + k];
                                   if (entry.mu > 0)
                                       acc[s + m * d] += term;
                                   else
                                       acc[s + m * d] -= term;
                               }
                           }
                       }
                   }
                   std::lock_guard<std::mutex> g(merge_mutex);
                   auto& dst = partials[chunk % nthreads];
                   if (dst.empty())
                       dst = std::move(acc);
                   else
                       for (std::size_t i = 0; i <= n_max; ++i) dst[i] += acc[i];
               });

    for (std::uint64_t n = 0; n <= n_max; ++n) {
        __int128 total = 0;
        for (const auto& part : partials)
            if (!part.empty()) total += part[n];
        result[n] = exact_from_i128(total);
    }
    return result;
}

inline ExactCount count_head_coprime_moebius(unsigned k, std::uint64_t n,
                                             const FactorTable& table,
                                             const CountBudget& budget = {},
                                             unsigned threads = 0) {
    if (n == 0) return 0;
    return head_coprime_moebius_sweep(k, n, table, budget, threads).at(n);
}

// All head-coprime counts for n in [0, n_max] by the independent per-head
// route: group heads by radical; for each radical r the tail counts are the
// k-fold convolution of the indicator of integers coprime to r.
inline std::vector<ExactCount> head_coprime_per_head_sweep(unsigned k, std::uint64_t n_max,
                                                           const FactorTable& table,
                                                           const CountBudget& budget = {},
                                                           unsigned threads = 0) {
    detail::check_fast_budget(k, n_max, table, budget);
    std::vector<ExactCount> result(n_max + 1, ExactCount(0));
    if (n_max == 0) return result;
    if (binomial(n_max + k, k) >= ExactCount(std::uint64_t{1} << 63))
        throw BudgetError("per-head counts for k=" + std::to_string(k) +
                          ", n=" + std::to_string(n_max) + " exceed 64-bit range");

    // bucket heads by radical
    std::vector<std::uint32_t> radical(n_max + 1, 1);
    for (std::uint64_t x = 2; x <= n_max; ++x) {
        std::uint64_t m = x, r = 1;
        while (m > 1) {
            const std::uint64_t p = table.smallest_prime_factor(m);
            r *= p;
            while (m % p == 0) m /= p;
        }
        radical[x] = static_cast<std::uint32_t>(r);
    }
    std::vector<std::vector<std::uint32_t>> heads_of;  // indexed by radical
    heads_of.resize(n_max + 1);
    for (std::uint64_t x = 1; x + k <= n_max; ++x) heads_of[radical[x]].push_back(x);
    std::vector<std::uint32_t> radicals;
    for (std::uint64_t r = 1; r <= n_max; ++r)
        if (!heads_of[r].empty()) radicals.push_back(static_cast<std::uint32_t>(r));

    const unsigned nthreads = effective_threads(threads);
    std::vector<std::vector<std::uint64_t>> partials(nthreads);
    std::mutex merge_mutex;

    run_chunks(0, radicals.size(), std::max<std::size_t>(nthreads * 8, 1), nthreads,
               [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                   std::vector<std::uint64_t> acc(n_max + 1, 0);
                   std::vector<std::uint32_t> allowed;
                   for (std::size_t i = lo; i < hi; ++i) {
                       const std::uint32_t r = radicals[i];
                       // indicator of y in [1, n_max] coprime to r, via its primes
                       std::vector<std::uint8_t> coprime(n_max + 1, 1);
                       coprime[0] = 0;
                       {
                           std::uint64_t m = r;
                           while (m > 1) {
                               const std::uint64_t p = table.smallest_prime_factor(m);
                               m /= p;
                               for (std::uint64_t q = p; q <= n_max; q += p) coprime[q] = 0;
                           }
                       }
                       allowed.clear();
                       for (std::uint64_t y = 1; y <= n_max; ++y)
                           if (coprime[y]) allowed.push_back(static_cast<std::uint32_t>(y));
                       // W = k-fold convolution of the indicator
                       std::vector<std::uint64_t> W(n_max + 1, 0);
                       for (std::uint32_t y : allowed) W[y] = 1;
                       std::vector<std::uint64_t> next(n_max + 1, 0);
                       for (unsigned step = 1; step < k; ++step) {
                           std::fill(next.begin(), next.end(), 0);
                           for (std::uint32_t y : allowed)
                               for (std::uint64_t s = step; s + y <= n_max; ++s)
                                   if (W[s]) next[s + y] += W[s];
                           W.swap(next);
                       }
                       for (std::uint32_t head : heads_of[r])
                           for (std::uint64_t m = k; head + m <= n_max; ++m)
                               acc[head + m] += W[m];
                   }
                   std::lock_guard<std::mutex> g(merge_mutex);
                   auto& dst = partials[chunk % nthreads];
                   if (dst.empty())
                       dst = std::move(acc);
                   else
                       for (std::size_t i = 0; i <= n_max; ++i) dst[i] += acc[i];
               });

    for (std::uint64_t n = 0; n <= n_max; ++n) {
        unsigned __int128 total = 0;
        for (const auto& part : partials)
            if (!part.empty()) total += part[n];
        result[n] = exact_from_u128(total);
    }
    return result;
}

inline ExactCount count_head_coprime_per_head(unsigned k, std::uint64_t n,
                                              const FactorTable& table,
                                              const CountBudget& budget = {},
                                              unsigned threads = 0) {
    if (n == 0) return 0;
    return head_coprime_per_head_sweep(k, n, table, budget, threads).at(n);
}

}  // namespace coprime

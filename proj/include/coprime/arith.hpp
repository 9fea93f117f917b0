#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "coprime/errors.hpp"
#include "coprime/types.hpp"

namespace coprime {

struct Factorization {
    std::uint64_t value = 1;
    // (prime, exponent) pairs, primes strictly increasing, exponents >= 1.
    std::vector<std::pair<std::uint64_t, unsigned>> prime_powers;

    unsigned distinct_primes() const { return static_cast<unsigned>(prime_powers.size()); }

    std::uint64_t radical() const {
        std::uint64_t r = 1;
        for (const auto& [p, e] : prime_powers) r *= p;
        return r;
    }

    bool is_squarefree() const {
        for (const auto& [p, e] : prime_powers)
            if (e > 1) return false;
        return true;
    }
};

// Smallest-prime-factor table built by a linear sieve. Immutable after
// construction and safe to share across threads. Memory is 4*(limit+1) bytes;
// practical for limits up to ~10^8. Prime streams beyond that (the Euler
// product cutoffs up to 2*10^8 and more) use for_primes_in_range() below,
// which needs no per-integer storage.
class FactorTable {
  public:
    static constexpr std::uint64_t kMaxLimit = (std::uint64_t{1} << 31) - 1;

    explicit FactorTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 2 || limit > kMaxLimit)
            throw ConfigError("factor table limit must be in [2, 2^31-1], got " +
                              std::to_string(limit));
        spf_.assign(limit + 1, 0);
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes_.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes_) {
                if (p > spf_[i] || i * p > limit) break;
                spf_[i * p] = p;
            }
        }
    }

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    std::uint32_t smallest_prime_factor(std::uint64_t m) const {
        check_range(m, 2);
        return spf_[m];
    }

    bool is_prime(std::uint64_t m) const {
        if (m < 2) return false;
        check_range(m, 2);
        return spf_[m] == m;
    }

    // m = 1 yields the empty factorization (the empty product is 1).
    Factorization factorize(std::uint64_t m) const {
        check_range(m, 1);
        Factorization f;
        f.value = m;
        while (m > 1) {
            const std::uint64_t p = spf_[m];
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            f.prime_powers.emplace_back(p, e);
        }
        return f;
    }

    // 0 if m is not square-free, otherwise (-1)^(number of prime factors).
    int moebius(std::uint64_t m) const {
        check_range(m, 1);
        int sign = 1;
        while (m > 1) {
            const std::uint64_t p = spf_[m];
            m /= p;
            if (m % p == 0) return 0;
            sign = -sign;
        }
        return sign;
    }

    ExactCount totient(std::uint64_t m) const {
        check_range(m, 1);
        ExactCount t = 1;
        for (const auto& [p, e] : factorize(m).prime_powers) {
            t *= p - 1;
            for (unsigned i = 1; i < e; ++i) t *= p;
        }
        return t;
    }

  private:
    void check_range(std::uint64_t m, std::uint64_t lo) const {
        if (m < lo || m > limit_)
            throw ArgumentError("value " + std::to_string(m) + " outside factor table range [" +
                                std::to_string(lo) + ", " + std::to_string(limit_) + "]");
    }

    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

struct SquarefreeEntry {
    std::uint64_t d;
    int mu;          // +1 or -1
    unsigned omega;  // number of distinct prime factors
};

// All square-free d in [1, limit], ascending, with mu and omega.
inline std::vector<SquarefreeEntry> squarefree_range(std::uint64_t limit, const FactorTable& table) {
    if (limit > table.limit())
        throw ArgumentError("squarefree_range limit exceeds factor table limit");
    std::vector<SquarefreeEntry> out;
    out.push_back({1, 1, 0});
    for (std::uint64_t d = 2; d <= limit; ++d) {
        std::uint64_t m = d;
        int sign = 1;
        unsigned omega = 0;
        bool squarefree = true;
        while (m > 1) {
            const std::uint64_t p = table.smallest_prime_factor(m);
            m /= p;
            if (m % p == 0) {
                squarefree = false;
                break;
            }
            sign = -sign;
            ++omega;
        }
        if (squarefree) out.push_back({d, sign, omega});
    }
    return out;
}

// Exact binomial coefficient via the multiplicative form with running
// division; every prefix product is divisible by the next index.
inline ExactCount binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    ExactCount r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

// Streams all primes in [lo, hi] to fn in increasing order, using a segmented
// odds-only sieve. No state proportional to hi is kept, so this is the path
// for the large Euler-product cutoffs.
inline void for_primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                const std::function<void(std::uint64_t)>& fn) {
    if (hi < 2 || hi < lo) return;
    if (lo < 2) lo = 2;
    if (lo <= 2 && 2 <= hi) fn(2);

    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;

    // base odd primes up to sqrt(hi)
    std::vector<std::uint64_t> base;
    {
        std::vector<bool> comp(root + 1, false);
        for (std::uint64_t i = 3; i <= root; i += 2) {
            if (!comp[i]) {
                base.push_back(i);
                for (std::uint64_t j = i * i; j <= root; j += 2 * i) comp[j] = true;
            }
        }
    }

    constexpr std::uint64_t kSegment = 1u << 20;
    std::uint64_t start = std::max<std::uint64_t>(lo, 3);
    if (start % 2 == 0) ++start;
    std::vector<bool> seg;
    for (std::uint64_t seg_lo = start; seg_lo <= hi; seg_lo += 2 * kSegment) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + 2 * kSegment - 2);
        const std::uint64_t count = (seg_hi - seg_lo) / 2 + 1;  // odd numbers in [seg_lo, seg_hi]
        seg.assign(count, true);
        for (std::uint64_t p : base) {
            std::uint64_t first = p * p;
            if (first > seg_hi) break;
            if (first < seg_lo) {
                std::uint64_t k = (seg_lo - first + 2 * p - 1) / (2 * p);
                first += 2 * p * k;
            }
            for (std::uint64_t m = first; m <= seg_hi; m += 2 * p) seg[(m - seg_lo) / 2] = false;
        }
        for (std::uint64_t i = 0; i < count; ++i)
            if (seg[i]) fn(seg_lo + 2 * i);
    }
}

inline std::uint64_t count_primes_up_to(std::uint64_t n) {
    std::uint64_t c = 0;
    for_primes_in_range(2, n, [&](std::uint64_t) { ++c; });
    return c;
}

}  // namespace coprime

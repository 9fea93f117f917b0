#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/errors.hpp"
#include "coprime/parallel.hpp"
#include "coprime/polyfam.hpp"
#include "coprime/real.hpp"
#include "coprime/types.hpp"

namespace coprime {

// ---------------------------------------------------------------------------
// Multiplicative local products over the primes of a square-free d.
// ---------------------------------------------------------------------------

// Product over p | d of the at-least-one-zero count at p, split by whether p
// divides n. Counts the admissible residue tuples of the shared-divisor set.
inline ExactCount shared_divisor_local_product(unsigned k, std::uint64_t n, std::uint64_t d,
                                               const FactorTable& table) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    const Factorization f = table.factorize(d);
    if (!f.is_squarefree()) throw ArgumentError("d must be square-free");
    ExactCount r = 1;  // empty product for d = 1
    for (const auto& [p, e] : f.prime_powers)
        r *= zero_pattern_count({ZeroRule::AtLeastOne, n % p == 0}, k, ExactCount(p));
    return r;
}

// Product over p | d of the at-most-one-zero count at p, split by whether p
// divides n. Counts the admissible residue tuples of the pairwise-relaxed set.
inline ExactCount pairwise_local_product(unsigned k, std::uint64_t n, std::uint64_t d,
                                         const FactorTable& table) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    const Factorization f = table.factorize(d);
    if (!f.is_squarefree()) throw ArgumentError("d must be square-free");
    ExactCount r = 1;
    for (const auto& [p, e] : f.prime_powers)
        r *= zero_pattern_count({ZeroRule::AtMostOne, n % p == 0}, k, ExactCount(p));
    return r;
}

// ---------------------------------------------------------------------------
// Correction factors over the primes of n (exact rationals).
// ---------------------------------------------------------------------------

// Correction for the head-coprime main term:
//   product over p | n of (p^k - count(at-least-one-zero, dividing)) /
//                         (p^k - count(at-least-one-zero, coprime)).
// Equivalently 1 + (-1)^k / (p^k - psi-type count) per prime.
inline Rational head_correction_rational(unsigned k, std::uint64_t n, const FactorTable& table) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    Rational r = 1;
    for (const auto& [p, e] : table.factorize(n).prime_powers) {
        const ExactCount pk = pow_exact(ExactCount(p), k);
        const ExactCount num = pk - zero_pattern_count({ZeroRule::AtLeastOne, true}, k, ExactCount(p));
        const ExactCount den = pk - zero_pattern_count({ZeroRule::AtLeastOne, false}, k, ExactCount(p));
        r *= Rational(num, den);
    }
    return r;
}

// Correction for the pairwise-coprime main term: product over p | n of
// (at-most-one-zero dividing count) / (at-most-one-zero coprime count).
inline Rational pairwise_correction_rational(unsigned k, std::uint64_t n,
                                             const FactorTable& table) {
    if (k < 2) throw ArgumentError("pairwise correction needs k >= 2");
    Rational r = 1;
    for (const auto& [p, e] : table.factorize(n).prime_powers) {
        const ExactCount num = zero_pattern_count({ZeroRule::AtMostOne, true}, k, ExactCount(p));
        const ExactCount den = zero_pattern_count({ZeroRule::AtMostOne, false}, k, ExactCount(p));
        r *= Rational(num, den);
    }
    return r;
}

inline Real head_correction(unsigned k, std::uint64_t n, const FactorTable& table) {
    return Real::of_rational(head_correction_rational(k, n, table), MPFR_RNDN);
}

inline Real pairwise_correction(unsigned k, std::uint64_t n, const FactorTable& table) {
    return Real::of_rational(pairwise_correction_rational(k, n, table), MPFR_RNDN);
}

// Partial sum over square-free d <= x of k^omega(d) / d, exact.
inline Rational squarefree_weighted_sum(unsigned k, std::uint64_t x, const FactorTable& table) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    if (x < 1) throw ArgumentError("x must be >= 1");
    Rational r = 0;
    for (const auto& entry : squarefree_range(x, table)) {
        const ExactCount kw = pow_exact(ExactCount(k), entry.omega);
        r += Rational(kw, ExactCount(entry.d));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Euler-product constants with rigorous truncation enclosures.
//
// Both constants are products over all primes of local factors of the form
// 1 - q(p)/p^e with q an integer polynomial: the head-coprime constant uses
// the at-least-one-zero count (q/p^e <= k/p^2 beyond small primes), the
// pairwise constant uses the at-most-one-zero deficit (q/p^e <= k 2^(k-1)/p^2).
// The finite product over p <= P is accumulated three times (down, up, and to
// nearest); the tail over p > P lies in [exp(-2c/P), 1] since each tail
// factor is in [1 - c/p^2, 1], 1 - t >= exp(-2t) for t <= 1/2, and
// sum over p > P of 1/p^2 is less than 1/P.
// ---------------------------------------------------------------------------

enum class EulerKind { HeadCoprime, PairwiseCoprime };

inline char euler_kind_letter(EulerKind kind) {
    return kind == EulerKind::HeadCoprime ? 'C' : 'D';
}

struct ConstantEnclosure {
    EulerKind kind = EulerKind::HeadCoprime;
    unsigned k = 1;
    Real point, lo, hi;
    std::uint64_t cutoff = 0;  // prime cutoff P of the finite product

    Real width() const { return sub(hi, lo, MPFR_RNDU); }
};

struct WidthUnreachableError : BudgetError {
    ConstantEnclosure achieved;
    WidthUnreachableError(const std::string& msg, ConstantEnclosure enc)
        : BudgetError(msg), achieved(std::move(enc)) {}
};

inline constexpr unsigned kMaxEulerOrder = 32;

namespace detail {

// Deviation polynomial q for the local factor 1 - q(p)/p^(denom_exp), with
// tail_coeff c such that q(p)/p^denom_exp <= c/p^2 for all primes.
struct DeviationPoly {
    std::vector<long long> coeffs;  // ascending powers of p; may be empty (q = 0)
    unsigned denom_exp = 1;
    std::uint64_t tail_coeff = 1;
};

inline long long ll_binomial(unsigned a, unsigned b) {
    return static_cast<long long>(binomial(a, b));
}

inline DeviationPoly deviation_poly(EulerKind kind, unsigned k) {
    DeviationPoly poly;
    if (kind == EulerKind::HeadCoprime) {
        // q(p) = at-least-one-zero coprime count: degree k-2
        poly.denom_exp = k;
        poly.tail_coeff = k;
        poly.coeffs.resize(k - 1);
        for (unsigned j = 0; j + 2 <= k; ++j) {
            const long long c = ll_binomial(k, j + 1);
            poly.coeffs[j] = ((k - j) % 2 == 0) ? c : -c;  // (-1)^(k-j)
        }
    } else {
        // q(p) = p^(k-1) - at-most-one-zero coprime count: degree k-3
        poly.denom_exp = k - 1;
        poly.tail_coeff = std::uint64_t{k} << (k - 1);
        poly.coeffs.resize(k - 2);
        for (unsigned j = 0; j + 3 <= k; ++j) {
            const long long c = k * ll_binomial(k - 1, j + 1) - ll_binomial(k, j + 1);
            poly.coeffs[j] = ((k - 1 - j) % 2 == 0) ? c : -c;  // (-1)^(k-1-j)
        }
    }
    return poly;
}

// Exact nonnegative polynomial value at p. Falls back to big integers when
// the 128-bit range check fails.
inline ExactCount eval_deviation(const DeviationPoly& poly, std::uint64_t p) {
    if (poly.coeffs.empty()) return 0;
    long long max_coeff = 1;
    for (long long c : poly.coeffs) max_coeff = std::max(max_coeff, c < 0 ? -c : c);
    const double bits = std::log2(static_cast<double>(max_coeff)) +
                        std::log2(static_cast<double>(poly.coeffs.size())) +
                        static_cast<double>(poly.coeffs.size() - 1) *
                            std::log2(static_cast<double>(p));
    if (bits < 120.0) {
        __int128 acc = 0;
        for (std::size_t j = poly.coeffs.size(); j-- > 0;)
            acc = acc * static_cast<__int128>(p) + poly.coeffs[j];
        if (acc < 0) throw InternalError("negative local-factor deviation");
        return exact_from_u128(static_cast<unsigned __int128>(acc));
    }
    ExactCount acc = 0;
    for (std::size_t j = poly.coeffs.size(); j-- > 0;) acc = acc * p + poly.coeffs[j];
    if (acc < 0) throw InternalError("negative local-factor deviation");
    return acc;
}

struct DirectedProduct {
    Real lo = Real::of_ui(1);
    Real hi = Real::of_ui(1);
    Real point = Real::of_ui(1);

    void mul_factor(const ExactCount& deviation, std::uint64_t p, unsigned denom_exp) {
        const Real q = Real::of_int(deviation, MPFR_RNDN);  // exact at 192 bits
        const Real one = Real::of_ui(1);
        Real pe_dn = pow_ui(Real::of_ui(p), denom_exp, MPFR_RNDD);
        Real pe_up = pow_ui(Real::of_ui(p), denom_exp, MPFR_RNDU);
        const Real t_lo = sub(one, div(q, pe_dn, MPFR_RNDU), MPFR_RNDD);
        const Real t_hi = sub(one, div(q, pe_up, MPFR_RNDD), MPFR_RNDU);
        const Real t_pt = sub(one, div(q, pe_up, MPFR_RNDN), MPFR_RNDN);
        if (t_lo.sign() <= 0) throw InternalError("nonpositive local factor");
        lo = mul(lo, t_lo, MPFR_RNDD);
        hi = mul(hi, t_hi, MPFR_RNDU);
        point = mul(point, t_pt, MPFR_RNDN);
    }

    void absorb_after(const DirectedProduct& o) {
        lo = mul(lo, o.lo, MPFR_RNDD);
        hi = mul(hi, o.hi, MPFR_RNDU);
        point = mul(point, o.point, MPFR_RNDN);
    }
};

// Finite product over primes p <= cutoff. Work is split into fixed-size
// blocks so the nearest-rounded point value is bit-identical for any thread
// count; blocks are recombined in ascending order.
inline DirectedProduct finite_euler_product(const DeviationPoly& poly, std::uint64_t cutoff,
                                            unsigned threads) {
    constexpr std::uint64_t kBlock = std::uint64_t{1} << 22;
    const std::size_t blocks = cutoff < 2 ? 0 : static_cast<std::size_t>((cutoff - 1) / kBlock) + 1;
    std::vector<DirectedProduct> partial(blocks);
    run_chunks(0, blocks, blocks, threads, [&](std::size_t b, std::size_t, std::size_t) {
        const std::uint64_t lo_p = 2 + b * kBlock;
        const std::uint64_t hi_p = std::min(cutoff, lo_p + kBlock - 1);
        for_primes_in_range(lo_p, hi_p, [&](std::uint64_t p) {
            partial[b].mul_factor(eval_deviation(poly, p), p, poly.denom_exp);
        });
    });
    DirectedProduct total;
    for (const auto& part : partial) total.absorb_after(part);
    return total;
}

}  // namespace detail

// Rigorous enclosure of the Euler constant of the given kind, refined until
// hi - lo <= target_width or the cutoff budget is exhausted (in which case a
// WidthUnreachableError carrying the best enclosure is thrown).
inline ConstantEnclosure euler_constant(EulerKind kind, unsigned k, double target_width,
                                        std::uint64_t max_cutoff = 400'000'000,
                                        unsigned threads = 0) {
    if (kind == EulerKind::HeadCoprime && k < 1)
        throw ArgumentError("head-coprime constant needs k >= 1");
    if (kind == EulerKind::PairwiseCoprime && k < 2)
        throw ArgumentError("pairwise constant needs k >= 2");
    if (k > kMaxEulerOrder)
        throw ArgumentError("constant order capped at " + std::to_string(kMaxEulerOrder));
    if (!(target_width > 0)) throw ArgumentError("target width must be positive");

    ConstantEnclosure enc;
    enc.kind = kind;
    enc.k = k;

    // Exactly 1: every local factor collapses.
    if ((kind == EulerKind::HeadCoprime && k == 1) ||
        (kind == EulerKind::PairwiseCoprime && k == 2)) {
        enc.point = Real::of_ui(1);
        enc.lo = enc.point;
        enc.hi = enc.point;
        enc.cutoff = 0;
        return enc;
    }

    const detail::DeviationPoly poly = detail::deviation_poly(kind, k);
    const std::uint64_t c2 = 2 * poly.tail_coeff;

    std::uint64_t min_cutoff = 1000;
    while (min_cutoff * min_cutoff < c2) min_cutoff *= 2;  // need P^2 >= 2c for the tail bound
    if (max_cutoff < min_cutoff)
        throw ArgumentError("cutoff budget " + std::to_string(max_cutoff) +
                            " below the minimum sound cutoff " + std::to_string(min_cutoff));

    // Pilot pass for the magnitude of the constant, then pick P so that
    // point * (1 - exp(-2c/P)) is comfortably under the target.
    const std::uint64_t pilot =
        std::min<std::uint64_t>(std::max<std::uint64_t>(min_cutoff, 200'000), max_cutoff);
    detail::DirectedProduct prod = detail::finite_euler_product(poly, pilot, threads);
    std::uint64_t cutoff = pilot;
    {
        const double estimate = prod.point.to_double();
        const double needed = estimate * static_cast<double>(c2) / target_width * 1.3;
        if (needed > static_cast<double>(max_cutoff)) {
            cutoff = max_cutoff;
        } else if (needed > static_cast<double>(cutoff)) {
            cutoff = static_cast<std::uint64_t>(needed) + 1;
        }
        if (cutoff != pilot) prod = detail::finite_euler_product(poly, cutoff, threads);
    }

    const Real one = Real::of_ui(1);
    while (true) {
        // tail factor lower bound exp(-2c/P)
        Real t = div(Real::of_ui(c2), Real::of_ui(cutoff), MPFR_RNDU);
        Real tail_lo = exp_r(neg(t), MPFR_RNDD);
        enc.lo = mul(prod.lo, tail_lo, MPFR_RNDD);
        enc.hi = prod.hi;
        enc.point = prod.point;
        enc.cutoff = cutoff;
        if (enc.width() <= Real::of_double(target_width)) return enc;
        if (cutoff >= max_cutoff)
            throw WidthUnreachableError(
                "enclosure width " + enc.width().str(3) + " above target at cutoff " +
                    std::to_string(cutoff),
                enc);
        cutoff = std::min(max_cutoff, cutoff * 4);
        prod = detail::finite_euler_product(poly, cutoff, threads);
    }
}

}  // namespace coprime

#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coprime/constants.hpp"
#include "coprime/counting.hpp"
#include "coprime/errors.hpp"
#include "coprime/real.hpp"

namespace coprime {

// Comparison of an exact count against its asymptotic main term for one
// (family, k, n). The bound check never depends on rounding: the exact side
// is integral, the main term is a rigorous interval, and the theorem
// right-hand side is rounded toward the conservative direction.
struct EstimateReport {
    char family = 'A';  // 'A' head-coprime, 'B' pairwise-coprime
    unsigned k = 1;
    std::uint64_t n = 0;
    CountMethod method = CountMethod::Oracle;

    std::optional<ExactCount> exact;  // absent when beyond budget
    Interval main;                    // rigorous enclosure of the main term
    Real main_point;
    std::optional<Rational> main_rational;  // set when the constant is exactly 1

    std::optional<Real> abs_error;  // |exact - main_point|; exact zero at base cases
    std::optional<Real> rel_error;  // abs_error / exact when exact > 0

    Interval bound_rhs;  // theorem right-hand side, directed
    Real bound_rhs_point;
    bool bound_applicable = false;
    std::optional<bool> bound_satisfied;  // set when exact present and bound applicable
};

// Whether n >= e^(k * 2^(k+2)), decided rigorously: log n is compared against
// the integer threshold with directed rounding, escalating precision in the
// (never observed) case where the enclosure straddles the threshold.
inline bool pairwise_bound_applicable(unsigned k, std::uint64_t n) {
    if (k < 2) throw ArgumentError("pairwise bound needs k >= 2");
    if (n < 2) return false;
    if (k > 57) return false;  // threshold exponent overflows; e^threshold >> any uint64 n
    const std::uint64_t threshold = std::uint64_t{k} << (k + 2);
    if (threshold >= 45) return false;  // log(2^64) < 44.4, so no representable n qualifies
    for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
        mpfr_t L;
        mpfr_init2(L, prec);
        mpfr_set_ui(L, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_log(L, L, MPFR_RNDD);
        const bool lo_ge = mpfr_cmp_ui(L, static_cast<unsigned long>(threshold)) >= 0;
        mpfr_set_ui(L, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_log(L, L, MPFR_RNDU);
        const bool hi_lt = mpfr_cmp_ui(L, static_cast<unsigned long>(threshold)) < 0;
        mpfr_clear(L);
        if (lo_ge) return true;
        if (hi_lt) return false;
    }
    throw InternalError("could not separate log n from the applicability threshold");
}

namespace detail {

struct RhsValue {
    Interval iv;
    Real point;
};

// Theorem right-hand side for the head-coprime estimate:
//   (2 + e) / sqrt(2 pi k) * (e^2 log n)^k * n^(k-1)
inline RhsValue head_bound_rhs(unsigned k, std::uint64_t n) {
    if (k < 1) throw ArgumentError("k must be >= 1");
    if (n < 2) throw ArgumentError("bound right-hand side needs n >= 2");
    auto eval = [&](mpfr_rnd_t rnd, mpfr_rnd_t opp) {
        const Real e = euler_e(rnd);
        const Real two_plus_e = add(Real::of_ui(2), e, rnd);
        Real pi;
        mpfr_const_pi(pi.raw(), opp);
        const Real denom =
            [&] {
                Real t = mul(mul(Real::of_ui(2), pi, opp), Real::of_ui(k), opp);
                mpfr_sqrt(t.raw(), t.raw(), opp);
                return t;
            }();
        const Real e2logn = mul(mul(e, e, rnd), log_ui(n, rnd), rnd);
        const Real powk = pow_ui(e2logn, k, rnd);
        const Real nk1 = pow_ui(Real::of_ui(n), k - 1, rnd);
        return mul(mul(div(two_plus_e, denom, rnd), powk, rnd), nk1, rnd);
    };
    RhsValue r;
    r.iv.lo = eval(MPFR_RNDD, MPFR_RNDU);
    r.iv.hi = eval(MPFR_RNDU, MPFR_RNDD);
    r.point = eval(MPFR_RNDN, MPFR_RNDN);
    return r;
}

// Theorem right-hand side for the pairwise estimate: 707 n^(k-1) / log n.
inline RhsValue pairwise_bound_rhs(unsigned k, std::uint64_t n) {
    if (k < 2) throw ArgumentError("k must be >= 2");
    if (n < 2) throw ArgumentError("bound right-hand side needs n >= 2");
    auto eval = [&](mpfr_rnd_t rnd, mpfr_rnd_t opp) {
        const Real nk1 = pow_ui(Real::of_ui(n), k - 1, rnd);
        return div(mul(Real::of_ui(707), nk1, rnd), log_ui(n, opp), rnd);
    };
    RhsValue r;
    r.iv.lo = eval(MPFR_RNDD, MPFR_RNDU);
    r.iv.hi = eval(MPFR_RNDU, MPFR_RNDD);
    r.point = eval(MPFR_RNDN, MPFR_RNDN);
    return r;
}

inline ExactCount factorial_exact(unsigned k) {
    ExactCount f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace detail

// Computes main terms and reports. Euler-constant enclosures are computed on
// demand and cached per (kind, k).
class Estimator {
  public:
    explicit Estimator(const FactorTable& table, double head_width = 1e-7,
                       double pairwise_width = 1e-6, unsigned threads = 0,
                       std::uint64_t max_cutoff = 400'000'000)
        : table_(table),
          head_width_(head_width),
          pairwise_width_(pairwise_width),
          threads_(threads),
          max_cutoff_(max_cutoff) {}

    const FactorTable& table() const { return table_; }

    const ConstantEnclosure& constant(EulerKind kind, unsigned k) const {
        const auto key = std::make_pair(kind == EulerKind::HeadCoprime ? 0 : 1, k);
        std::lock_guard<std::mutex> g(cache_mutex_);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            const double w = kind == EulerKind::HeadCoprime ? head_width_ : pairwise_width_;
            it = cache_.emplace(key, euler_constant(kind, k, w, max_cutoff_, threads_)).first;
        }
        return it->second;
    }

    // Main term of the head-coprime estimate: constant * correction * n^k / k!.
    // The rational part is exact; only the constant contributes interval width.
    Interval main_term_head(unsigned k, std::uint64_t n, Real* point = nullptr,
                            std::optional<Rational>* exact_form = nullptr) const {
        const ConstantEnclosure& c = constant(EulerKind::HeadCoprime, k);
        const Rational r = head_correction_rational(k, n, table_) *
                           Rational(pow_exact(ExactCount(n), k), detail::factorial_exact(k));
        return compose_main(c, k == 1, r, point, exact_form);
    }

    // Main term of the pairwise estimate: constant * correction * n^(k-1) / (k-1)!.
    Interval main_term_pairwise(unsigned k, std::uint64_t n, Real* point = nullptr,
                                std::optional<Rational>* exact_form = nullptr) const {
        if (k < 2) throw ArgumentError("pairwise main term needs k >= 2");
        const ConstantEnclosure& c = constant(EulerKind::PairwiseCoprime, k);
        const Rational r = pairwise_correction_rational(k, n, table_) *
                           Rational(pow_exact(ExactCount(n), k - 1), detail::factorial_exact(k - 1));
        return compose_main(c, k == 2, r, point, exact_form);
    }

    EstimateReport make_report(char family, unsigned k, std::uint64_t n, CountMethod method,
                               const CountBudget& budget = {}) const {
        EstimateReport rep;
        rep.family = family;
        rep.k = k;
        rep.n = n;
        rep.method = method;
        if (family == 'A') {
            rep.exact = count_head(k, n, method, budget);
            std::optional<Rational> exact_form;
            rep.main = main_term_head(k, n, &rep.main_point, &exact_form);
            rep.main_rational = exact_form;
            const auto rhs = detail::head_bound_rhs(k, n);
            rep.bound_rhs = rhs.iv;
            rep.bound_rhs_point = rhs.point;
            rep.bound_applicable = true;
        } else if (family == 'B') {
            if (method != CountMethod::Oracle && method != CountMethod::ClosedForm)
                throw ArgumentError("pairwise counts support the oracle method only");
            rep.exact = (k == 2 && method == CountMethod::ClosedForm)
                            ? count_pairwise_coprime_fast2(n, table_)
                            : count_pairwise_coprime_oracle(k, n, budget);
            std::optional<Rational> exact_form;
            rep.main = main_term_pairwise(k, n, &rep.main_point, &exact_form);
            rep.main_rational = exact_form;
            const auto rhs = detail::pairwise_bound_rhs(k, n);
            rep.bound_rhs = rhs.iv;
            rep.bound_rhs_point = rhs.point;
            rep.bound_applicable = pairwise_bound_applicable(k, n);
        } else {
            throw ArgumentError("family must be A or B");
        }
        finish_report(rep);
        return rep;
    }

    // Reports over an ascending grid. Exact counts for the fast methods are
    // computed with one shared sweep up to the largest grid point.
    std::vector<EstimateReport> trend_sweep(char family, unsigned k,
                                            const std::vector<std::uint64_t>& grid,
                                            CountMethod method,
                                            const CountBudget& budget = {}) const {
        std::vector<EstimateReport> out;
        if (grid.empty()) return out;
        out.reserve(grid.size());
        if (family == 'A' &&
            (method == CountMethod::MoebiusExact || method == CountMethod::PerHeadDp)) {
            const std::uint64_t n_max = *std::max_element(grid.begin(), grid.end());
            const auto counts = method == CountMethod::MoebiusExact
                                    ? head_coprime_moebius_sweep(k, n_max, table_, budget, threads_)
                                    : head_coprime_per_head_sweep(k, n_max, table_, budget, threads_);
            for (std::uint64_t n : grid) {
                EstimateReport rep;
                rep.family = 'A';
                rep.k = k;
                rep.n = n;
                rep.method = method;
                rep.exact = counts.at(n);
                std::optional<Rational> exact_form;
                rep.main = main_term_head(k, n, &rep.main_point, &exact_form);
                rep.main_rational = exact_form;
                const auto rhs = detail::head_bound_rhs(k, n);
                rep.bound_rhs = rhs.iv;
                rep.bound_rhs_point = rhs.point;
                rep.bound_applicable = true;
                finish_report(rep);
                out.push_back(std::move(rep));
            }
            return out;
        }
        for (std::uint64_t n : grid) out.push_back(make_report(family, k, n, method, budget));
        return out;
    }

  private:
    ExactCount count_head(unsigned k, std::uint64_t n, CountMethod method,
                          const CountBudget& budget) const {
        switch (method) {
            case CountMethod::Oracle: return count_head_coprime_oracle(k, n, budget);
            case CountMethod::MoebiusExact:
                return count_head_coprime_moebius(k, n, table_, budget, threads_);
            case CountMethod::PerHeadDp:
                return count_head_coprime_per_head(k, n, table_, budget, threads_);
            default:
                throw ArgumentError("head-coprime counts support oracle, moebius, perhead");
        }
    }

    Interval compose_main(const ConstantEnclosure& c, bool constant_is_one, const Rational& r,
                          Real* point, std::optional<Rational>* exact_form) const {
        Interval rational_iv = Interval::of_rational(r);
        Interval main = mul_nonneg(Interval{c.lo, c.hi}, rational_iv);
        if (point) *point = mul(c.point, Real::of_rational(r, MPFR_RNDN), MPFR_RNDN);
        if (exact_form) *exact_form = constant_is_one ? std::optional<Rational>(r) : std::nullopt;
        return main;
    }

    void finish_report(EstimateReport& rep) const {
        if (!rep.exact) return;
        const ExactCount& exact = *rep.exact;
        if (rep.main_rational) {
            // the main term is an exact rational; errors are exact too
            Rational diff = Rational(exact) - *rep.main_rational;
            if (diff < 0) diff = -diff;
            rep.abs_error = Real::of_rational(diff, MPFR_RNDN);
            if (exact > 0)
                rep.rel_error = Real::of_rational(diff / Rational(exact), MPFR_RNDN);
        } else {
            const Real exact_r = Real::of_int(exact, MPFR_RNDN);
            rep.abs_error = abs_val(sub(exact_r, rep.main_point, MPFR_RNDN));
            if (exact > 0)
                rep.rel_error = div(*rep.abs_error, exact_r, MPFR_RNDN);
        }
        if (rep.bound_applicable) {
            const Real exact_r = Real::of_int(exact, MPFR_RNDN);
            const Real worst = max_abs_dist(exact_r, rep.main);
            rep.bound_satisfied = worst <= rep.bound_rhs.lo;
        }
    }

    const FactorTable& table_;
    double head_width_;
    double pairwise_width_;
    unsigned threads_;
    std::uint64_t max_cutoff_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<int, unsigned>, ConstantEnclosure> cache_;
};

}  // namespace coprime

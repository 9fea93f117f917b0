#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "coprime/types.hpp"

namespace coprime {

// Working precision for all enclosure arithmetic. 192 bits is ~57 decimal
// digits; integer operands up to 2^192 stay exact, so directed rounding only
// enters through genuine divisions and transcendentals.
inline mpfr_prec_t real_precision() { return 192; }

// Value-semantic wrapper over mpfr_t. Every operation that can round takes an
// explicit rounding mode; enclosure code rounds lower ends down and upper
// ends up so the interval absorbs all arithmetic rounding.
class Real {
  public:
    Real() {
        mpfr_init2(v_, real_precision());
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Real of_ui(unsigned long u) {
        Real r;
        mpfr_set_ui(r.v_, u, MPFR_RNDN);
        return r;
    }
    static Real of_si(long s) {
        Real r;
        mpfr_set_si(r.v_, s, MPFR_RNDN);
        return r;
    }
    static Real of_double(double d) {
        Real r;
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static Real of_int(const ExactCount& z, mpfr_rnd_t rnd) {
        Real r;
        mpfr_set_z(r.v_, z.backend().data(), rnd);
        return r;
    }
    static Real of_rational(const Rational& q, mpfr_rnd_t rnd) {
        Real r;
        mpfr_set_q(r.v_, q.backend().data(), rnd);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }
    bool operator==(const Real& o) const { return cmp(o) == 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Deterministic scientific form with `digits` significant digits.
    std::string str(int digits = 17) const {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*Re", digits - 1, v_);
        return std::string(buf);
    }

  private:
    mpfr_t v_;
};

inline Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}
inline Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}
inline Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}
inline Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}
inline Real neg(const Real& a) {
    Real r;
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline Real abs_val(const Real& a) {
    Real r;
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline Real exp_r(const Real& a, mpfr_rnd_t rnd) {
    Real r;
    mpfr_exp(r.raw(), a.raw(), rnd);
    return r;
}
inline Real log_ui(unsigned long n, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_ui(r.raw(), n, MPFR_RNDN);
    mpfr_log(r.raw(), r.raw(), rnd);
    return r;
}
inline Real pow_ui(const Real& a, unsigned long e, mpfr_rnd_t rnd) {
    Real r;
    mpfr_pow_ui(r.raw(), a.raw(), e, rnd);
    return r;
}
inline Real euler_e(mpfr_rnd_t rnd) {
    Real one = Real::of_ui(1);
    return exp_r(one, rnd);
}

// Closed interval [lo, hi] with directed endpoints. Only the handful of
// operations the enclosure code needs; all operands here are nonnegative.
struct Interval {
    Real lo, hi;

    static Interval of_rational(const Rational& q) {
        Interval r;
        r.lo = Real::of_rational(q, MPFR_RNDD);
        r.hi = Real::of_rational(q, MPFR_RNDU);
        return r;
    }

    Real width() const { return sub(hi, lo, MPFR_RNDU); }
    bool contains(const Real& x) const { return lo <= x && x <= hi; }
};

// Product of nonnegative intervals.
inline Interval mul_nonneg(const Interval& a, const Interval& b) {
    Interval r;
    r.lo = mul(a.lo, b.lo, MPFR_RNDD);
    r.hi = mul(a.hi, b.hi, MPFR_RNDU);
    return r;
}

// Upper bound on |a - b|.
inline Real abs_diff_up(const Real& a, const Real& b) {
    return a >= b ? sub(a, b, MPFR_RNDU) : sub(b, a, MPFR_RNDU);
}

// Largest possible |x - y| for y in the interval, rounded up.
inline Real max_abs_dist(const Real& x, const Interval& iv) {
    Real a = abs_diff_up(x, iv.lo);
    Real b = abs_diff_up(x, iv.hi);
    return a >= b ? a : b;
}

}  // namespace coprime

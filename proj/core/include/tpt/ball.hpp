/* Certified complex interval arithmetic: midpoint-radius balls with MPFR
 * midpoints.  Every operation rounds the radius outward, so a ball always
 * encloses the exact result of the same operation on enclosed inputs.
 * Precision is explicit per value; there is no global default. */
#pragma once

#include <mpfr.h>

#include <string>

#include "tpt/errors.hpp"
#include "tpt/qomega.hpp"

namespace tpt {

/// RAII wrapper around one mpfr_t with a fixed precision.
class MpfrVal {
public:
    explicit MpfrVal(mpfr_prec_t prec);
    MpfrVal(const MpfrVal& o);
    MpfrVal(MpfrVal&& o) noexcept;
    MpfrVal& operator=(const MpfrVal& o);
    MpfrVal& operator=(MpfrVal&& o) noexcept;
    ~MpfrVal();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits = 17) const;

private:
    mpfr_t v_;
};

/// Closed disk { z : |z - mid| <= rad } in the complex plane.  The midpoint
/// components carry the ball's working precision; the radius is a low
/// precision upper bound maintained with upward rounding.
class ComplexBall {
public:
    static constexpr mpfr_prec_t radius_precision = 32;

    /// Exact zero at the given precision.
    explicit ComplexBall(mpfr_prec_t prec);

    /// Encloses a + b*omega where omega = exp(2*pi*i/3).  The radius is
    /// bounded by 2^(1-prec) * (|a| + |b| + 1).
    static ComplexBall from_qomega(const QOmega& q, mpfr_prec_t prec);
    static ComplexBall from_rational(const Rational& q, mpfr_prec_t prec);
    /// Exact ball (zero radius) with the given midpoint components.
    static ComplexBall from_midpoint(const MpfrVal& re, const MpfrVal& im);

    mpfr_prec_t precision() const { return prec_; }
    const MpfrVal& mid_re() const { return re_; }
    const MpfrVal& mid_im() const { return im_; }
    const MpfrVal& radius() const { return rad_; }

    ComplexBall operator-() const;
    ComplexBall operator+(const ComplexBall& o) const;
    ComplexBall operator-(const ComplexBall& o) const;
    ComplexBall operator*(const ComplexBall& o) const;
    /// Throws precision_error if the divisor ball may contain zero.
    ComplexBall operator/(const ComplexBall& o) const;

    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }

    /// Re-round the midpoint to a new precision, inflating the radius.
    ComplexBall round_to(mpfr_prec_t prec) const;

    /// Grow the radius by r (r must be nonnegative).
    void add_error(const MpfrVal& r);

    /// True iff 0 lies outside the ball (a certificate).
    bool certainly_nonzero() const;
    bool may_contain_zero() const { return !certainly_nonzero(); }
    /// Certified membership test for an exact value.
    bool contains(const QOmega& q) const;
    /// True iff the two disks are provably disjoint.
    bool certainly_disjoint(const ComplexBall& o) const;

    /// Upper bound on |z| over the ball (low precision, rounded up).
    MpfrVal abs_upper() const;
    /// Lower bound on |z| over the ball (clamped at 0, rounded down).
    MpfrVal abs_lower() const;

    /// Bounds on |z - w| over both balls.
    static MpfrVal dist_upper(const ComplexBall& a, const ComplexBall& b);
    static MpfrVal dist_lower(const ComplexBall& a, const ComplexBall& b);

    std::string to_string() const;

private:
    ComplexBall(MpfrVal re, MpfrVal im, MpfrVal rad, mpfr_prec_t prec);

    MpfrVal re_;
    MpfrVal im_;
    MpfrVal rad_;
    mpfr_prec_t prec_;
};

inline ComplexBall operator*(const QOmega& s, const ComplexBall& b) {
    return ComplexBall::from_qomega(s, b.precision()) * b;
}

/// Total order on MPFR values (mpfr_cmp semantics; values must be ordinary).
int compare(const MpfrVal& a, const MpfrVal& b);

} // namespace tpt

/* Ball arithmetic internals.  Midpoints are computed with round-to-nearest;
 * every inexact rounding (detected via the MPFR ternary value) deposits an
 * ulp-sized bound into the radius, which is accumulated with upward rounding
 * throughout.  Exact midpoint operations therefore keep a zero radius. */
#include "tpt/ball.hpp"

#include <gmp.h>

#include <algorithm>

namespace tpt {

namespace {

constexpr mpfr_prec_t kRadPrec = ComplexBall::radius_precision;

/* Adds an upper bound for the rounding error of one round-to-nearest
 * operation that produced x with ternary value inex: half an ulp plus
 * slack, total < 0.51 ulp.  Exact operations (inex == 0) add nothing. */
void acc_round_error(mpfr_ptr acc, mpfr_srcptr x, int inex) {
    if (inex == 0 || mpfr_zero_p(x)) return;
    mpfr_exp_t e = mpfr_get_exp(x);
    mpfr_prec_t p = mpfr_get_prec(x);
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_set_ui_2exp(t, 1, e - p - 1, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    mpfr_set_ui_2exp(t, 1, e - p - 7, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    mpfr_clear(t);
}

/* Upper bound on |x| + |y| (valid upper bound on the modulus of x + y*i). */
void abs_sum_upper(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y) {
    mpfr_t ax, ay;
    mpfr_init2(ax, kRadPrec);
    mpfr_init2(ay, kRadPrec);
    mpfr_abs(ax, x, MPFR_RNDU);
    mpfr_abs(ay, y, MPFR_RNDU);
    mpfr_add(out, ax, ay, MPFR_RNDU);
    mpfr_clear(ax);
    mpfr_clear(ay);
}

/* Lower bound on max(|x|, |y|) (valid lower bound on the modulus). */
void abs_max_lower(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y) {
    mpfr_t ax, ay;
    mpfr_init2(ax, kRadPrec);
    mpfr_init2(ay, kRadPrec);
    mpfr_abs(ax, x, MPFR_RNDD);
    mpfr_abs(ay, y, MPFR_RNDD);
    mpfr_max(out, ax, ay, MPFR_RNDD);
    mpfr_clear(ax);
    mpfr_clear(ay);
}

/* Complex midpoint product (ar + ai*i)(br + bi*i) -> (cr, ci) at the
 * precision of cr/ci, with all rounding errors accumulated into err. */
void complex_mul_mid(mpfr_ptr cr, mpfr_ptr ci, mpfr_srcptr ar, mpfr_srcptr ai,
                     mpfr_srcptr br, mpfr_srcptr bi, mpfr_ptr err) {
    mpfr_prec_t p = mpfr_get_prec(cr);
    mpfr_t p1, p2;
    mpfr_init2(p1, p);
    mpfr_init2(p2, p);
    int inex;

    inex = mpfr_mul(p1, ar, br, MPFR_RNDN);
    acc_round_error(err, p1, inex);
    inex = mpfr_mul(p2, ai, bi, MPFR_RNDN);
    acc_round_error(err, p2, inex);
    inex = mpfr_sub(cr, p1, p2, MPFR_RNDN);
    acc_round_error(err, cr, inex);

    inex = mpfr_mul(p1, ar, bi, MPFR_RNDN);
    acc_round_error(err, p1, inex);
    inex = mpfr_mul(p2, ai, br, MPFR_RNDN);
    acc_round_error(err, p2, inex);
    inex = mpfr_add(ci, p1, p2, MPFR_RNDN);
    acc_round_error(err, ci, inex);

    mpfr_clear(p1);
    mpfr_clear(p2);
}

} // namespace

MpfrVal::MpfrVal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

MpfrVal::MpfrVal(const MpfrVal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

MpfrVal::MpfrVal(MpfrVal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

MpfrVal& MpfrVal::operator=(const MpfrVal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

MpfrVal& MpfrVal::operator=(MpfrVal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

MpfrVal::~MpfrVal() { mpfr_clear(v_); }

std::string MpfrVal::to_string(int digits) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

ComplexBall::ComplexBall(mpfr_prec_t prec)
    : re_(prec), im_(prec), rad_(kRadPrec), prec_(prec) {}

ComplexBall ComplexBall::from_rational(const Rational& q, mpfr_prec_t prec) {
    return from_qomega(QOmega(q), prec);
}

ComplexBall ComplexBall::from_midpoint(const MpfrVal& re, const MpfrVal& im) {
    mpfr_prec_t prec = std::max(re.precision(), im.precision());
    ComplexBall out(prec);
    mpfr_set(out.re_.raw(), re.raw(), MPFR_RNDN);
    mpfr_set(out.im_.raw(), im.raw(), MPFR_RNDN);
    return out;
}

ComplexBall ComplexBall::from_qomega(const QOmega& q, mpfr_prec_t prec) {
    ComplexBall out(prec);
    // Real part (a - b/2) is an exact rational: one conversion rounding.
    Rational x = q.rational_part() - q.omega_part() / 2;
    int inex = mpfr_set_q(out.re_.raw(), x.get_mpq_t(), MPFR_RNDN);
    acc_round_error(out.rad_.raw(), out.re_.raw(), inex);
    // Imaginary part b*sqrt(3)/2: evaluate with 16 guard bits, then round
    // once.  The guard phase contributes far below the final half ulp, so
    // the usual 0.51 ulp deposit still covers the total error; sqrt(3) is
    // irrational, so for b != 0 the value is always inexact.
    if (!(q.omega_part() == 0)) {
        Rational h = q.omega_part() / 2;
        mpfr_t s, hb;
        mpfr_init2(s, prec + 16);
        mpfr_init2(hb, prec + 16);
        mpfr_sqrt_ui(s, 3, MPFR_RNDN);
        mpfr_set_q(hb, h.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(s, s, hb, MPFR_RNDN);
        mpfr_set(out.im_.raw(), s, MPFR_RNDN);
        acc_round_error(out.rad_.raw(), out.im_.raw(), 1);
        mpfr_clear(s);
        mpfr_clear(hb);
    }
    return out;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall out = *this;
    mpfr_neg(out.re_.raw(), out.re_.raw(), MPFR_RNDN);
    mpfr_neg(out.im_.raw(), out.im_.raw(), MPFR_RNDN);
    return out;
}

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
    ComplexBall out(std::max(prec_, o.prec_));
    int inex = mpfr_add(out.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    acc_round_error(out.rad_.raw(), out.re_.raw(), inex);
    inex = mpfr_add(out.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    acc_round_error(out.rad_.raw(), out.im_.raw(), inex);
    mpfr_add(out.rad_.raw(), out.rad_.raw(), rad_.raw(), MPFR_RNDU);
    mpfr_add(out.rad_.raw(), out.rad_.raw(), o.rad_.raw(), MPFR_RNDU);
    return out;
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const { return *this + (-o); }

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
    ComplexBall out(std::max(prec_, o.prec_));
    mpfr_t err, absa, absb, t;
    mpfr_init2(err, kRadPrec);
    mpfr_init2(absa, kRadPrec);
    mpfr_init2(absb, kRadPrec);
    mpfr_init2(t, kRadPrec);
    mpfr_set_zero(err, 1);

    complex_mul_mid(out.re_.raw(), out.im_.raw(), re_.raw(), im_.raw(), o.re_.raw(),
                    o.im_.raw(), err);

    // |a|*rb + |b|*ra + ra*rb, everything rounded up.
    if (mpfr_sgn(o.rad_.raw()) > 0) {
        abs_sum_upper(absa, re_.raw(), im_.raw());
        mpfr_mul(t, absa, o.rad_.raw(), MPFR_RNDU);
        mpfr_add(err, err, t, MPFR_RNDU);
    }
    if (mpfr_sgn(rad_.raw()) > 0) {
        abs_sum_upper(absb, o.re_.raw(), o.im_.raw());
        mpfr_mul(t, absb, rad_.raw(), MPFR_RNDU);
        mpfr_add(err, err, t, MPFR_RNDU);
        mpfr_mul(t, rad_.raw(), o.rad_.raw(), MPFR_RNDU);
        mpfr_add(err, err, t, MPFR_RNDU);
    }

    mpfr_set(out.rad_.raw(), err, MPFR_RNDU);
    mpfr_clear(err);
    mpfr_clear(absa);
    mpfr_clear(absb);
    mpfr_clear(t);
    return out;
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const {
    MpfrVal wlow = o.abs_lower();
    if (wlow.sign() <= 0)
        throw precision_error("ball division: divisor may contain zero");

    mpfr_prec_t p = std::max(prec_, o.prec_);
    ComplexBall out(p);

    // Midpoint quotient; its own rounding error is irrelevant because the
    // radius below is derived from the exact residual z - m*w.
    mpfr_t d, p1, p2, mr, mi;
    mpfr_init2(d, p);
    mpfr_init2(p1, p);
    mpfr_init2(p2, p);
    mpfr_init2(mr, p);
    mpfr_init2(mi, p);
    mpfr_mul(p1, o.re_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_mul(p2, o.im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_add(d, p1, p2, MPFR_RNDN);
    mpfr_mul(p1, re_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_mul(p2, im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_add(mr, p1, p2, MPFR_RNDN);
    mpfr_div(mr, mr, d, MPFR_RNDN);
    mpfr_mul(p1, im_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_mul(p2, re_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_sub(mi, p1, p2, MPFR_RNDN);
    mpfr_div(mi, mi, d, MPFR_RNDN);
    mpfr_set(out.re_.raw(), mr, MPFR_RNDN);
    mpfr_set(out.im_.raw(), mi, MPFR_RNDN);

    // Residual s = z_mid - m*w_mid with tracked rounding error, giving
    // |z/w - m| <= (|s| + err + rz + |m|*rw) / lower(|w|).
    mpfr_t err, qr, qi, sr, si, num, t, absm;
    mpfr_init2(err, kRadPrec);
    mpfr_init2(qr, p);
    mpfr_init2(qi, p);
    mpfr_init2(sr, p);
    mpfr_init2(si, p);
    mpfr_init2(num, kRadPrec);
    mpfr_init2(t, kRadPrec);
    mpfr_init2(absm, kRadPrec);
    mpfr_set_zero(err, 1);
    complex_mul_mid(qr, qi, mr, mi, o.re_.raw(), o.im_.raw(), err);
    int inex = mpfr_sub(sr, re_.raw(), qr, MPFR_RNDN);
    acc_round_error(err, sr, inex);
    inex = mpfr_sub(si, im_.raw(), qi, MPFR_RNDN);
    acc_round_error(err, si, inex);

    abs_sum_upper(num, sr, si);
    mpfr_add(num, num, err, MPFR_RNDU);
    mpfr_add(num, num, rad_.raw(), MPFR_RNDU);
    abs_sum_upper(absm, mr, mi);
    mpfr_mul(t, absm, o.rad_.raw(), MPFR_RNDU);
    mpfr_add(num, num, t, MPFR_RNDU);
    mpfr_div(out.rad_.raw(), num, wlow.raw(), MPFR_RNDU);

    mpfr_clear(d);
    mpfr_clear(p1);
    mpfr_clear(p2);
    mpfr_clear(mr);
    mpfr_clear(mi);
    mpfr_clear(err);
    mpfr_clear(qr);
    mpfr_clear(qi);
    mpfr_clear(sr);
    mpfr_clear(si);
    mpfr_clear(num);
    mpfr_clear(t);
    mpfr_clear(absm);
    return out;
}

ComplexBall ComplexBall::round_to(mpfr_prec_t prec) const {
    ComplexBall out(prec);
    int inex = mpfr_set(out.re_.raw(), re_.raw(), MPFR_RNDN);
    acc_round_error(out.rad_.raw(), out.re_.raw(), inex);
    inex = mpfr_set(out.im_.raw(), im_.raw(), MPFR_RNDN);
    acc_round_error(out.rad_.raw(), out.im_.raw(), inex);
    mpfr_add(out.rad_.raw(), out.rad_.raw(), rad_.raw(), MPFR_RNDU);
    return out;
}

void ComplexBall::add_error(const MpfrVal& r) {
    mpfr_add(rad_.raw(), rad_.raw(), r.raw(), MPFR_RNDU);
}

bool ComplexBall::certainly_nonzero() const { return abs_lower().sign() > 0; }

bool ComplexBall::contains(const QOmega& q) const {
    // q lies in the ball iff |mid - q| <= rad.  Enclose q in a tiny ball bq;
    // then |mid - q| <= upper(|mid - mid_bq|) + rad_bq, which equals
    // dist_upper(*this, bq) minus this ball's own radius.
    ComplexBall bq = from_qomega(q, std::max<mpfr_prec_t>(prec_, 64) + 32);
    MpfrVal d = dist_upper(*this, bq);
    mpfr_t lhs;
    mpfr_init2(lhs, kRadPrec);
    mpfr_sub(lhs, d.raw(), rad_.raw(), MPFR_RNDU);
    bool ok = mpfr_cmp(lhs, rad_.raw()) <= 0;
    mpfr_clear(lhs);
    return ok;
}

bool ComplexBall::certainly_disjoint(const ComplexBall& o) const {
    return dist_lower(*this, o).sign() > 0;
}

MpfrVal ComplexBall::abs_upper() const {
    MpfrVal out(kRadPrec);
    abs_sum_upper(out.raw(), re_.raw(), im_.raw());
    mpfr_add(out.raw(), out.raw(), rad_.raw(), MPFR_RNDU);
    return out;
}

MpfrVal ComplexBall::abs_lower() const {
    MpfrVal out(kRadPrec);
    abs_max_lower(out.raw(), re_.raw(), im_.raw());
    mpfr_sub(out.raw(), out.raw(), rad_.raw(), MPFR_RNDD);
    if (out.sign() < 0) mpfr_set_zero(out.raw(), 1);
    return out;
}

MpfrVal ComplexBall::dist_upper(const ComplexBall& a, const ComplexBall& b) {
    MpfrVal out(kRadPrec);
    mpfr_t dr, di;
    mpfr_init2(dr, kRadPrec);
    mpfr_init2(di, kRadPrec);
    // Rounding away from zero makes |dr|, |di| upper bounds for the exact
    // component differences.
    mpfr_sub(dr, a.re_.raw(), b.re_.raw(), MPFR_RNDA);
    mpfr_sub(di, a.im_.raw(), b.im_.raw(), MPFR_RNDA);
    abs_sum_upper(out.raw(), dr, di);
    mpfr_add(out.raw(), out.raw(), a.rad_.raw(), MPFR_RNDU);
    mpfr_add(out.raw(), out.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_clear(dr);
    mpfr_clear(di);
    return out;
}

MpfrVal ComplexBall::dist_lower(const ComplexBall& a, const ComplexBall& b) {
    MpfrVal out(kRadPrec);
    mpfr_t dr, di;
    mpfr_init2(dr, kRadPrec);
    mpfr_init2(di, kRadPrec);
    // Rounding toward zero makes |dr|, |di| lower bounds.
    mpfr_sub(dr, a.re_.raw(), b.re_.raw(), MPFR_RNDZ);
    mpfr_sub(di, a.im_.raw(), b.im_.raw(), MPFR_RNDZ);
    abs_max_lower(out.raw(), dr, di);
    mpfr_sub(out.raw(), out.raw(), a.rad_.raw(), MPFR_RNDD);
    mpfr_sub(out.raw(), out.raw(), b.rad_.raw(), MPFR_RNDD);
    if (out.sign() < 0) mpfr_set_zero(out.raw(), 1);
    mpfr_clear(dr);
    mpfr_clear(di);
    return out;
}

std::string ComplexBall::to_string() const {
    std::string s = re_.to_string();
    if (!(mpfr_sgn(im_.raw()) < 0)) s += "+";
    s += im_.to_string() + "*i";
    s += " +/- " + rad_.to_string(3);
    return s;
}

int compare(const MpfrVal& a, const MpfrVal& b) { return mpfr_cmp(a.raw(), b.raw()); }

} // namespace tpt

/* Arithmetic in Q(w), w a primitive cube root of unity (w^2 + w + 1 = 0).
 * Elements are stored on the basis {1, w} with exact rational coordinates;
 * every operation reduces w^2 = -1 - w immediately, so the representation
 * is canonical.  Conjugation sends w to w^2 and the norm a^2 - a*b + b^2
 * is the squared complex absolute value. */
#pragma once

#include "tpt/rational.hpp"

#include <iosfwd>
#include <optional>

namespace tpt {

class QOmega {
public:
    QOmega() : re_(0), wc_(0) {}
    QOmega(const Rational& re) : re_(re) , wc_(0) {}
    QOmega(long n) : re_(n), wc_(0) {}
    QOmega(const Rational& re, const Rational& wc) : re_(re), wc_(wc) {}

    static QOmega zero() { return QOmega(); }
    static QOmega one() { return QOmega(Rational(1)); }
    static QOmega omega() { return QOmega(Rational(0), Rational(1)); }
    static QOmega omega_bar() { return QOmega(Rational(-1), Rational(-1)); }

    const Rational& rational_part() const { return re_; }
    const Rational& omega_part() const { return wc_; }

    bool is_zero() const { return re_ == 0 && wc_ == 0; }
    bool is_one() const { return re_ == 1 && wc_ == 0; }
    bool is_rational() const { return wc_ == 0; }

    QOmega operator-() const { return QOmega(-re_, -wc_); }
    QOmega operator+(const QOmega& o) const { return QOmega(re_ + o.re_, wc_ + o.wc_); }
    QOmega operator-(const QOmega& o) const { return QOmega(re_ - o.re_, wc_ - o.wc_); }
    QOmega operator*(const QOmega& o) const {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
        Rational bd = wc_ * o.wc_;
        return QOmega(re_ * o.re_ - bd, re_ * o.wc_ + wc_ * o.re_ - bd);
    }
    QOmega operator/(const QOmega& o) const;

    QOmega& operator+=(const QOmega& o) { re_ += o.re_; wc_ += o.wc_; return *this; }
    QOmega& operator-=(const QOmega& o) { re_ -= o.re_; wc_ -= o.wc_; return *this; }
    QOmega& operator*=(const QOmega& o) { *this = *this * o; return *this; }
    QOmega& operator/=(const QOmega& o) { *this = *this / o; return *this; }

    bool operator==(const QOmega& o) const { return re_ == o.re_ && wc_ == o.wc_; }
    bool operator!=(const QOmega& o) const { return !(*this == o); }

    QOmega conj() const { return QOmega(re_ - wc_, -wc_); }

    /// Field norm N(a + b w) = a^2 - a b + b^2 = |a + b w|^2.  Multiplicative.
    Rational norm() const { return re_ * re_ - re_ * wc_ + wc_ * wc_; }

    QOmega inverse() const;
    QOmega pow(long e) const;

    /// True if both coordinates are integral (an Eisenstein integer).
    bool is_integral() const { return is_integer(re_) && is_integer(wc_); }

    /// Exact square root in Q(w) when one exists.
    std::optional<QOmega> try_sqrt() const;

    /// Deterministic total order (lexicographic on coordinates); used only
    /// for canonical sorting, it has no analytic meaning.
    static int compare(const QOmega& a, const QOmega& b);

private:
    Rational re_, wc_;
};


/// Canonical text form "a/b+c/d*w" with zero parts omitted ("0" for zero,
/// "w"/"-w" for unit omega coefficients).
std::string to_string(const QOmega& q);
std::ostream& operator<<(std::ostream& os, const QOmega& q);

/// Parse the textual form produced by to_string (and the obvious variants
/// with whitespace, "1*w", leading '+').  Throws parse_error.
QOmega parse_qomega(const std::string& text);

/// Exact n-th root in Q(w) when one exists, for n a product of twos and
/// threes (the exponents for which enough roots of unity lie in the field).
/// Any one root is returned; the others differ by n-th roots of unity.
std::optional<QOmega> qomega_nth_root(const QOmega& q, unsigned long n);

/// Eisenstein-integer division with remainder: a = q*b + r with N(r) < N(b).
/// Both arguments must be integral, b nonzero.
QOmega eisenstein_div(const QOmega& a, const QOmega& b, QOmega* remainder = nullptr);

/// gcd in Z[w] (norm-Euclidean).  Result is normalised to the associate with
/// canonical orientation; gcd(0,0) = 0.
QOmega eisenstein_gcd(QOmega a, QOmega b);

} // namespace tpt

/* Dense univariate polynomials over an exact coefficient ring K (rationals,
 * Q(w), finite fields, affine forms, or nested polynomials).  Division-based
 * routines require K to be a field unless noted; ring-entried code paths use
 * RingTraits<K>::exact_div, which nested rings specialize. */
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tpt/errors.hpp"
#include "tpt/qomega.hpp"

namespace tpt {

template <class K>
struct RingTraits {
    // Fields divide exactly everywhere; rings with partial division specialize.
    static K exact_div(const K& a, const K& b) { return a / b; }
};

template <class K>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(K c) {
        if (!(c == K(0))) coeffs_.push_back(std::move(c));
    }
    explicit UPoly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static UPoly monomial(K c, std::size_t n) {
        UPoly p;
        if (c == K(0)) return p;
        p.coeffs_.assign(n + 1, K(0));
        p.coeffs_[n] = std::move(c);
        return p;
    }
    static UPoly variable() { return monomial(K(1), 1); }

    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<K>& coeffs() const { return coeffs_; }
    const K& operator[](std::size_t i) const {
        static const K zero{0};
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }
    const K& lc() const {
        if (is_zero()) throw invariant_error("UPoly: leading coefficient of zero");
        return coeffs_.back();
    }

    bool operator==(const UPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), K(0));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = (*this)[i] + o[i];
        r.normalize();
        return r;
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        UPoly r;
        if (is_zero() || o.is_zero()) return r;
        r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, K(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
        r.normalize();
        return r;
    }
    UPoly operator*(const K& s) const {
        UPoly r = *this;
        for (auto& c : r.coeffs_) c = c * s;
        r.normalize();
        return r;
    }
    friend UPoly operator*(const K& s, const UPoly& p) { return p * s; }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    UPoly pow(unsigned long e) const {
        UPoly r(K(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    UPoly derivative() const {
        UPoly r;
        if (coeffs_.size() <= 1) return r;
        r.coeffs_.resize(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) r.coeffs_[i - 1] = coeffs_[i] * K(static_cast<long>(i));
        r.normalize();
        return r;
    }

    K eval(const K& x) const {
        K acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    /// Horner composition: (*this)(g).
    UPoly compose(const UPoly& g) const {
        UPoly acc;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * g + UPoly(coeffs_[i]);
        return acc;
    }

    /// Coefficients in reverse order (t -> 1/t followed by clearing).
    UPoly reversed() const {
        UPoly r = *this;
        std::reverse(r.coeffs_.begin(), r.coeffs_.end());
        r.normalize();
        return r;
    }

    /// Quotient and remainder over a field.
    std::pair<UPoly, UPoly> divrem(const UPoly& g) const {
        if (g.is_zero()) throw invariant_error("UPoly: division by zero polynomial");
        UPoly q, r = *this;
        while (!r.is_zero() && r.degree() >= g.degree()) {
            K c = r.lc() / g.lc();
            std::size_t d = static_cast<std::size_t>(r.degree() - g.degree());
            UPoly t = monomial(c, d);
            q += t;
            r -= t * g;
        }
        return {q, r};
    }

    /// Exact quotient; throws if the division leaves a remainder.
    UPoly exact_div(const UPoly& g) const {
        auto [q, r] = divrem(g);
        if (!r.is_zero()) throw invariant_error("UPoly: inexact division");
        return q;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        K inv = K(1) / lc();
        return *this * inv;
    }

    std::string to_string(const std::string& var = "t") const;

    /// Newton interpolation through (xs[i], ys[i]); nodes must be distinct.
    static UPoly interpolate(const std::vector<K>& xs, const std::vector<K>& ys) {
        if (xs.size() != ys.size() || xs.empty())
            throw invariant_error("UPoly::interpolate: bad node/value lists");
        std::vector<K> dd = ys;
        for (std::size_t j = 1; j < xs.size(); ++j)
            for (std::size_t i = xs.size(); i-- > j;)
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
        UPoly p;
        for (std::size_t i = xs.size(); i-- > 0;) {
            UPoly lin({-xs[i], K(1)});
            p = p * lin + UPoly(dd[i]);
        }
        return p;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == K(0)) coeffs_.pop_back();
    }

    std::vector<K> coeffs_;
};

template <class K>
std::string UPoly<K>::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == K(0)) continue;
        std::string c = tpt::to_string(coeffs_[i]);
        if (!out.empty()) {
            if (!c.empty() && c[0] == '-') {
                out += " - ";
                c = c.substr(1);
            } else {
                out += " + ";
            }
        }
        bool trivial = c == "1" && i > 0;
        if (c.find_first_of("+-", 1) != std::string::npos || c.find('*') != std::string::npos)
            c = "(" + c + ")";
        if (i == 0) {
            out += c;
        } else {
            if (!trivial) out += c + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

/// Monic gcd over a field via the Euclidean remainder sequence.
template <class K>
UPoly<K> gcd_euclid(UPoly<K> f, UPoly<K> g) {
    while (!g.is_zero()) {
        UPoly<K> r = f.divrem(g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

/// Resultant over a field K via the Euclidean sequence with the classical
/// degree-product sign and leading-coefficient power bookkeeping.  Matches
/// the Sylvester determinant with the rows of f placed first.
template <class K>
K resultant_field(UPoly<K> a, UPoly<K> b) {
    if (a.is_zero() && b.is_zero())
        throw invariant_error("resultant: both polynomials are zero");
    if (a.is_zero() || b.is_zero()) return K(0);
    K res(1);
    int sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        std::swap(a, b);
    }
    while (b.degree() > 0) {
        UPoly<K> r = a.divrem(b).second;
        if (r.is_zero()) return K(0);
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        K p(1);
        for (long i = 0; i < a.degree() - r.degree(); ++i) p = p * b.lc();
        res = res * p;
        a = std::move(b);
        b = std::move(r);
    }
    K p(1);
    for (long i = 0; i < a.degree(); ++i) p = p * b.lc();
    res = res * p;
    return sign < 0 ? -res : res;
}

/// Fraction-free determinant of an n x n matrix over an integral domain
/// (Bareiss elimination); rows is modified in place.
template <class K>
K bareiss_determinant(std::vector<std::vector<K>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return K(1);
    int sign = 1;
    K prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == K(0)) ++piv;
        if (piv == n) return K(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = RingTraits<K>::exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = K(0);
        }
        prev = m[k][k];
    }
    K det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

/// Resultant as the Sylvester determinant (f-rows first), computed by
/// fraction-free elimination.  Works over any integral domain with exact
/// division, hence also with polynomial entries.
template <class K>
K sylvester_resultant(const UPoly<K>& f, const UPoly<K>& g) {
    if (f.is_zero() && g.is_zero())
        throw invariant_error("resultant: both polynomials are zero");
    if (f.is_zero() || g.is_zero()) return K(0);
    const std::size_t m = static_cast<std::size_t>(f.degree());
    const std::size_t n = static_cast<std::size_t>(g.degree());
    if (m == 0 && n == 0) return K(1);
    std::vector<std::vector<K>> s(m + n, std::vector<K>(m + n, K(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
    return bareiss_determinant(s);
}

/// Squarefree part f / gcd(f, f'), monic (characteristic zero).
template <class K>
UPoly<K> squarefree_part(const UPoly<K>& f) {
    if (f.is_zero()) throw invariant_error("squarefree_part: zero polynomial");
    if (f.degree() == 0) return UPoly<K>(K(1));
    UPoly<K> g = gcd_euclid(f, f.derivative());
    return f.exact_div(g).monic();
}

/// Yun decomposition: returns h_1, h_2, ... with f = lc * prod h_i^i and
/// each h_i monic squarefree (factors of multiplicity exactly i).
template <class K>
std::vector<UPoly<K>> yun_decomposition(const UPoly<K>& f) {
    if (f.is_zero()) throw invariant_error("yun: zero polynomial");
    std::vector<UPoly<K>> out;
    if (f.degree() == 0) return out;
    // The leading coefficient does not affect the factors; normalizing it
    // away keeps v and w on the same scale through the iteration.
    const UPoly<K> fm = f.monic();
    UPoly<K> u = gcd_euclid(fm, fm.derivative());
    UPoly<K> v = fm.exact_div(u).monic();
    UPoly<K> w = fm.derivative().exact_div(u);
    while (v.degree() > 0) {
        UPoly<K> d = w - v.derivative();
        UPoly<K> h = gcd_euclid(v, d);
        out.push_back(h);
        v = v.exact_div(h).monic();
        w = d.exact_div(h);
    }
    return out;
}

/// Content of a Q(w)-polynomial as an element of Z[w] divided by the common
/// denominator: f / content is primitive with coefficients in Z[w].
QOmega content_zomega(const UPoly<QOmega>& f);

/// f scaled by the inverse of its content (Z[w] coefficients, gcd one).
UPoly<QOmega> primitive_part(const UPoly<QOmega>& f);

/// Monic gcd over Q(w).  Dispatches between the primitive remainder
/// sequence and the multi-modular engine based on input size.
UPoly<QOmega> upoly_gcd(const UPoly<QOmega>& f, const UPoly<QOmega>& g);

/// Primitive-PRS gcd (always available; used to cross-check the modular
/// engine on small inputs).
UPoly<QOmega> gcd_primitive_prs(UPoly<QOmega> f, UPoly<QOmega> g);

/// Resultant over Q(w): Euclidean route with the Sylvester determinant as
/// an independent second route for verification.
QOmega resultant(const UPoly<QOmega>& f, const UPoly<QOmega>& g);

/// Exact polynomial n-th root when one exists (n a product of twos and
/// threes, as for qomega_nth_root); the result is verified by powering.
std::optional<UPoly<QOmega>> upoly_nth_root(const UPoly<QOmega>& p, unsigned long n);

/// Serialize / parse the dense coefficient list ["c0","c1",...] with Q(w)
/// coefficients in the canonical text form.
std::string upoly_to_json(const UPoly<QOmega>& p);
UPoly<QOmega> upoly_from_json(const std::string& text);

} // namespace tpt

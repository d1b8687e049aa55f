/* Q(w)-specific polynomial routines: Z[w] content extraction, the primitive
 * remainder-sequence gcd, and the resultant dispatcher. */
#include "tpt/upoly.hpp"

#include "tpt/modpoly.hpp"

namespace tpt {

QOmega content_zomega(const UPoly<QOmega>& f) {
    if (f.is_zero()) return QOmega::zero();
    std::vector<Rational> parts;
    parts.reserve(2 * f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        parts.push_back(c.rational_part());
        parts.push_back(c.omega_part());
    }
    Integer den = common_denominator(parts);
    Rational scale(den);
    QOmega g = QOmega::zero();
    for (const auto& c : f.coeffs()) {
        QOmega z = c * QOmega(scale);
        g = eisenstein_gcd(g, z);
        if (g.is_one()) break;
    }
    return g * QOmega(Rational(Integer(1), den));
}

UPoly<QOmega> primitive_part(const UPoly<QOmega>& f) {
    if (f.is_zero()) return f;
    return f * content_zomega(f).inverse();
}

UPoly<QOmega> gcd_primitive_prs(UPoly<QOmega> f, UPoly<QOmega> g) {
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    f = primitive_part(f);
    g = primitive_part(g);
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        UPoly<QOmega> r = f.divrem(g).second;
        f = std::move(g);
        g = r.is_zero() ? r : primitive_part(r);
    }
    return f.monic();
}

UPoly<QOmega> upoly_gcd(const UPoly<QOmega>& f, const UPoly<QOmega>& g) {
    // The multi-modular engine takes over beyond this size; below it the
    // primitive remainder sequence beats the reduction setup cost.
    if (std::min(f.degree(), g.degree()) > 16) return modular_gcd(f, g);
    return gcd_primitive_prs(f, g);
}

QOmega resultant(const UPoly<QOmega>& f, const UPoly<QOmega>& g) {
    return resultant_field(f, g);
}

std::optional<UPoly<QOmega>> upoly_nth_root(const UPoly<QOmega>& p, unsigned long n) {
    if (n == 0) throw std::domain_error("upoly_nth_root: exponent must be positive");
    if (n == 1 || p.is_zero()) return p;
    long d = p.degree();
    if (d % static_cast<long>(n) != 0) return std::nullopt;
    long m = d / static_cast<long>(n);
    auto lead = qomega_nth_root(p.lc(), n);
    if (!lead) return std::nullopt;
    // Fill the root's coefficients from the top down: with r_m..r_{m-k+1}
    // known and the rest zero, the t^(d-k) coefficient of r^n differs from
    // the true one by n * lead^(n-1) * r_{m-k}.
    UPoly<QOmega> r = UPoly<QOmega>::monomial(*lead, static_cast<std::size_t>(m));
    QOmega scale = QOmega(Rational(static_cast<long>(n))) * lead->pow(static_cast<long>(n) - 1);
    for (long k = 1; k <= m; ++k) {
        UPoly<QOmega> q = r;
        for (unsigned long i = 1; i < n; ++i) q = q * r;
        QOmega delta = p[static_cast<std::size_t>(d - k)] - q[static_cast<std::size_t>(d - k)];
        if (!delta.is_zero())
            r += UPoly<QOmega>::monomial(delta / scale, static_cast<std::size_t>(m - k));
    }
    UPoly<QOmega> q = r;
    for (unsigned long i = 1; i < n; ++i) q = q * r;
    if (q != p) return std::nullopt;
    return r;
}

} // namespace tpt

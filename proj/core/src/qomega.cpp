#include "tpt/qomega.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace tpt {

QOmega QOmega::inverse() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("QOmega: division by zero");
    QOmega c = conj();
    return QOmega(c.re_ / n, c.wc_ / n);
}

QOmega QOmega::operator/(const QOmega& o) const { return *this * o.inverse(); }

QOmega QOmega::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QOmega acc(Rational(1));
    QOmega base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::optional<QOmega> QOmega::try_sqrt() const {
    // Solve (x + y w)^2 = a + b w:  x^2 - y^2 = a,  2xy - y^2 = b.
    // Substituting t = y/x (for x != 0) gives a quadratic in t over Q; rather
    // than case-split we use the norm: if s^2 = *this then N(s)^2 = N(*this),
    // so N(*this) must be a rational square, and s is determined up to sign
    // and a cube-root-of-unity factor.  Try the finitely many candidates.
    if (is_zero()) return QOmega();
    Rational n = norm();
    // rational square root of n
    Integer num = n.get_num(), den = n.get_den();
    if (num < 0) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    Rational root_norm(rn, rd);
    // Candidate s with s^2 = q: write s = (q + root_norm)/r for suitable r
    // (half-angle trick: if s^2 = q and |s|^2 = root_norm then
    //  (q + root_norm) = s*(s + conj(s)*root_norm/|s|^2)... ); simpler to just
    // try s of the form c*(q + root_norm) and the twisted variants.
    auto check = [&](const QOmega& s) -> std::optional<QOmega> {
        if (s * s == *this) return s;
        return std::nullopt;
    };
    QOmega base = *this + QOmega(root_norm);
    if (!base.is_zero()) {
        // normalise: want s with s^2 = q; note base^2 = q^2 + 2 q rn + rn^2 =
        // q*(q + 2 rn + conj-ish)... just scale by norm: s = base * rn' where
        // rn'^2 = rn / N(base) if that is rational-square.
        Rational nb = base.norm();
        Rational target = root_norm / nb;
        Integer tn = target.get_num(), td = target.get_den();
        if (tn >= 0) {
            Integer sn, sd;
            mpz_sqrt(sn.get_mpz_t(), tn.get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), td.get_mpz_t());
            if (sn * sn == tn && sd * sd == td) {
                QOmega s = QOmega(Rational(sn, sd)) * base;
                if (auto r = check(s)) return r;
            }
        }
    }
    // q + rn may vanish (q real negative); handle pure-rational q directly.
    if (is_rational()) {
        // sqrt of a negative rational lives outside Q(w) unless it is
        // -3 * square (since sqrt(-3) = 1 + 2w).
        Rational q = re_;
        if (q < 0) {
            Rational m = -q / 3;
            Integer mn = m.get_num(), md = m.get_den();
            Integer sn, sd;
            mpz_sqrt(sn.get_mpz_t(), mn.get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), md.get_mpz_t());
            if (sn * sn == mn && sd * sd == md) {
                QOmega s = QOmega(Rational(sn, sd)) * QOmega(Rational(1), Rational(2));
                if (auto r = check(s)) return r;
            }
        }
    }
    return std::nullopt;
}

namespace {

// Sign-aware exact n-th root of a rational, if one exists.
std::optional<Rational> rational_nth_root(const Rational& r, unsigned long n) {
    Integer num = r.get_num(), den = r.get_den();
    bool neg = num < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    Integer an = neg ? Integer(-num) : num;
    Integer rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), an.get_mpz_t(), n);
    int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n);
    if (!exact_n || !exact_d) return std::nullopt;
    Rational root(rn, rd);
    return neg ? Rational(-root) : root;
}

int sign_at(const Integer& a2, const Integer& a1, const Integer& a0, const Integer& t) {
    Integer v = ((t + a2) * t + a1) * t + a0;
    return sgn(v);
}

// All integer roots of T^3 + a2 T^2 + a1 T + a0.  Simple roots are located by
// sign changes on the monotone pieces between the critical points; multiple
// roots are also roots of the derivative and are tested directly.
std::vector<Integer> integer_roots_monic_cubic(const Integer& a2, const Integer& a1,
                                               const Integer& a0) {
    Integer m2 = abs(a2), m1 = abs(a1), m0 = abs(a0);
    Integer bound = 1 + std::max(m2, std::max(m1, m0));
    std::vector<Integer> breaks = {-bound, bound};
    std::vector<Integer> found;
    // Critical points: roots of 3T^2 + 2 a2 T + a1.
    Integer d2 = a2 * a2 - 3 * a1;
    if (d2 > 0) {
        Integer s;
        mpz_sqrt(s.get_mpz_t(), d2.get_mpz_t());
        for (int side = -1; side <= 1; side += 2) {
            Integer center;
            mpz_fdiv_q(center.get_mpz_t(), Integer(-a2 + side * s).get_mpz_t(),
                       Integer(3).get_mpz_t());
            for (Integer k = center - 2; k <= center + 2; ++k)
                if (-bound < k && k < bound) breaks.push_back(k);
        }
        // A multiple root of the cubic is an exact root of the derivative:
        // (-a2 +/- s)/3 with s^2 = d2.
        if (s * s == d2) {
            for (int side = -1; side <= 1; side += 2) {
                Integer num = -a2 + side * s;
                if (num % 3 == 0) {
                    Integer cand = num / 3;
                    if (sign_at(a2, a1, a0, cand) == 0) found.push_back(cand);
                }
            }
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        if (sign_at(a2, a1, a0, breaks[i]) == 0) found.push_back(breaks[i]);
        if (i + 1 == breaks.size()) break;
        Integer lo = breaks[i], hi = breaks[i + 1];
        int sl = sign_at(a2, a1, a0, lo), sh = sign_at(a2, a1, a0, hi);
        if (sl == 0 || sh == 0 || sl == sh) continue;
        while (hi - lo > 1) {
            Integer mid = (lo + hi) / 2;
            int sm = sign_at(a2, a1, a0, mid);
            if (sm == 0) {
                found.push_back(mid);
                break;
            }
            (sm == sl ? lo : hi) = mid;
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

// Exact cube root in Q(w).  For non-rational q the trace s = x + conj(x) of a
// cube root x is a rational root of S^3 - 3*rho*S - tr(q) with rho^3 = N(q),
// and x is recovered from s and rho by inverting x^3 = (s^2 - rho) x - s*rho.
std::optional<QOmega> qomega_cbrt(const QOmega& q) {
    if (q.is_rational()) {
        auto r = rational_nth_root(q.rational_part(), 3);
        if (!r) return std::nullopt;
        return QOmega(*r);
    }
    auto rho = rational_nth_root(q.norm(), 3);
    if (!rho) return std::nullopt;
    Rational tr = 2 * q.rational_part() - q.omega_part();
    Integer den = common_denominator({*rho, tr});
    Rational b1 = Rational(-3) * *rho * den * den;
    Rational b0 = -tr * den * den * den;
    for (const Integer& t0 : integer_roots_monic_cubic(0, b1.get_num(), b0.get_num())) {
        Rational s(t0, den);
        Rational disc = s * s - *rho;
        if (disc == 0) continue;
        QOmega x = (q + QOmega(s * *rho)) / QOmega(disc);
        if (x * x * x == q) return x;
    }
    return std::nullopt;
}

} // namespace

std::optional<QOmega> qomega_nth_root(const QOmega& q, unsigned long n) {
    if (n == 0) throw std::domain_error("qomega_nth_root: exponent must be positive");
    if (n == 1) return q;
    if (q.is_zero()) return QOmega();
    if (n % 2 == 0) {
        auto s = q.try_sqrt();
        if (!s) return std::nullopt;
        // x^n = q iff x^(n/2) is one of the two square roots of q.
        for (const QOmega& y : {*s, -*s})
            if (auto r = qomega_nth_root(y, n / 2)) return r;
        return std::nullopt;
    }
    if (n % 3 == 0) {
        auto c = qomega_cbrt(q);
        if (!c) return std::nullopt;
        // The three cube roots differ by powers of w; deeper extraction can
        // succeed for one twist and fail for another, so try all three.
        for (const QOmega& y : {*c, *c * QOmega::omega(), *c * QOmega::omega_bar()})
            if (auto r = qomega_nth_root(y, n / 3)) return r;
        return std::nullopt;
    }
    throw std::domain_error("qomega_nth_root: exponent must be a product of twos and threes");
}

int QOmega::compare(const QOmega& a, const QOmega& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c;
    return cmp(a.wc_, b.wc_);
}

std::string to_string(const QOmega& q) {
    const Rational& a = q.rational_part();
    const Rational& b = q.omega_part();
    if (b == 0) return to_string(a);
    std::string wpart;
    Rational abs_b = b < 0 ? Rational(-b) : b;
    if (abs_b == 1)
        wpart = "w";
    else
        wpart = to_string(abs_b) + "*w";
    if (a == 0) return (b < 0 ? "-" : "") + wpart;
    return to_string(a) + (b < 0 ? "-" : "+") + wpart;
}

std::ostream& operator<<(std::ostream& os, const QOmega& q) { return os << to_string(q); }

namespace {

// Split "term1 +/- term2 ..." at top level and parse each term as either a
// rational or rational*w.
struct QOmegaParser {
    std::string s;
    std::size_t i = 0;

    explicit QOmegaParser(const std::string& text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }

    QOmega parse() {
        if (s.empty()) throw parse_error("empty Q(w) literal");
        QOmega acc;
        bool first = true;
        while (i < s.size()) {
            int sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                sign = s[i] == '-' ? -1 : 1;
                ++i;
            } else if (!first) {
                throw parse_error("bad Q(w) literal: " + s);
            }
            acc += term(sign);
            first = false;
        }
        if (first) throw parse_error("bad Q(w) literal: " + s);
        return acc;
    }

    QOmega term(int sign) {
        if (i >= s.size()) throw parse_error("bad Q(w) literal: " + s);
        if (s[i] == 'w') {
            ++i;
            return QOmega(Rational(0), Rational(sign));
        }
        std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        if (i == start) throw parse_error("bad Q(w) literal: " + s);
        Rational r = parse_rational(s.substr(start, i - start));
        if (i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'w') throw parse_error("bad Q(w) literal: " + s);
            ++i;
            return QOmega(Rational(0), Rational(sign) * r);
        }
        return QOmega(Rational(sign) * r);
    }
};

} // namespace

QOmega parse_qomega(const std::string& text) { return QOmegaParser(text).parse(); }

QOmega eisenstein_div(const QOmega& a, const QOmega& b, QOmega* remainder) {
    if (!a.is_integral() || !b.is_integral())
        throw std::domain_error("eisenstein_div: arguments must be integral");
    if (b.is_zero()) throw std::domain_error("eisenstein_div: division by zero");
    QOmega exact = a * b.inverse();
    QOmega q(Rational(round_nearest(exact.rational_part())),
             Rational(round_nearest(exact.omega_part())));
    if (remainder) *remainder = a - q * b;
    return q;
}

QOmega eisenstein_gcd(QOmega a, QOmega b) {
    while (!b.is_zero()) {
        QOmega r;
        eisenstein_div(a, b, &r);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    // Normalise across the six units ±1, ±w, ±w^2: pick the associate with
    // lexicographically largest (rational part, omega part) to make gcd
    // output canonical.
    static const QOmega units[6] = {
        QOmega(1), QOmega(-1), QOmega::omega(), -QOmega::omega(),
        QOmega::omega_bar(), -QOmega::omega_bar()};
    QOmega best = a * units[0];
    for (int k = 1; k < 6; ++k) {
        QOmega cand = a * units[k];
        if (QOmega::compare(cand, best) > 0) best = cand;
    }
    return best;
}

} // namespace tpt

#include "tpt/rational.hpp"

#include <cctype>

namespace tpt {

Rational parse_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty rational literal");
    // mpq_class accepts "p/q" but not a leading '+', and silently accepts
    // partial garbage through set_str only when we let it; validate ourselves.
    std::size_t i = 0;
    auto digits = [&](std::size_t& j) {
        std::size_t start = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j > start;
    };
    if (s[i] == '+' || s[i] == '-') ++i;
    if (!digits(i)) throw parse_error("bad rational literal: " + text);
    if (i < s.size()) {
        if (s[i] != '/') throw parse_error("bad rational literal: " + text);
        ++i;
        if (s[i] == '+' || s[i] == '-') ++i;
        if (!digits(i) || i != s.size()) throw parse_error("bad rational literal: " + text);
    }
    std::string t = s[0] == '+' ? s.substr(1) : s;
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw parse_error("bad rational literal: " + text);
    if (q.get_den() == 0) throw parse_error("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    mpz_class num, den;
    unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    Rational out;
    if (exp > 0)
        out = Rational(num, den);
    else
        out = Rational(den, num);
    out.canonicalize();
    return out;
}

Integer round_nearest(const Rational& r) {
    // floor(r + 1/2)
    Rational shifted = r + Rational(1, 2);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return q;
}

std::vector<Rational> continued_fraction_approximants(const Rational& x, const Integer& max_den) {
    std::vector<Rational> out;
    Integer p0 = 1, q0 = 0; // h_{-1}/k_{-1}
    Integer p1 = 0, q1 = 1; // dummy start so that first convergent is a0
    Rational rem = x;
    // standard continued fraction loop
    Integer num = rem.get_num(), den = rem.get_den();
    Integer h_prev = 0, k_prev = 1, h = 1, k = 0;
    (void)p0; (void)q0; (void)p1; (void)q1;
    while (den != 0) {
        Integer a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        if (k_next > max_den && !out.empty()) break;
        out.emplace_back(h_next, k_next);
        out.back().canonicalize();
        h_prev = h; k_prev = k; h = h_next; k = k_next;
        num = den; den = r;
    }
    return out;
}

Integer integer_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer common_denominator(const std::vector<Rational>& xs) {
    Integer l = 1;
    for (const auto& x : xs) {
        Integer d = x.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

} // namespace tpt

/* Exact rational scalars.  Thin layer over GMP's mpq_class that restores the
 * canonical-form invariant (reduced, positive denominator) at the one place
 * gmpxx drops it: the numerator/denominator constructor.  Also adds parsing,
 * printing and the handful of numeric helpers the rest of the library needs. */
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpt {

using Integer = mpz_class;

class Rational : public mpq_class {
public:
    Rational() : mpq_class() {}
    Rational(const mpq_class& q) : mpq_class(q) {}
    Rational(int n) : mpq_class(n) {}
    Rational(long n) : mpq_class(n) {}
    Rational(const Integer& n) : mpq_class(n) {}
    template <class T, class U>
    Rational(const __gmp_expr<T, U>& e) : mpq_class(e) {}
    Rational(long n, long d) : mpq_class(n, d) { canonicalize(); }
    Rational(const Integer& n, const Integer& d) : mpq_class(n, d) { canonicalize(); }
};

/// Thrown on malformed textual input anywhere in the library.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Parse "p", "-p", "p/q" (optional whitespace). Throws parse_error.
Rational parse_rational(const std::string& text);

/// Canonical form: "p" for integers, "p/q" otherwise; q > 0 always.
std::string to_string(const Rational& r);

Rational rational_pow(const Rational& base, long exp);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Nearest integer (ties round toward +infinity; deterministic).
Integer round_nearest(const Rational& r);

/// Best rational approximations of a real given as num/2^shift, with
/// denominator capped; used to recognise exact values behind ball midpoints.
/// Returns approximants from the continued fraction expansion.
std::vector<Rational> continued_fraction_approximants(const Rational& x, const Integer& max_den);

/// gcd of two integers (non-negative).
Integer integer_gcd(const Integer& a, const Integer& b);

/// lcm of denominators of a list, for clearing fractions.
Integer common_denominator(const std::vector<Rational>& xs);

} // namespace tpt

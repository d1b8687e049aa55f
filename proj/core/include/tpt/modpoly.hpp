/* Word-sized prime fields F_p and the multi-modular gcd engine for Q(w)
 * polynomials.  Primes are chosen with p = 1 mod 3 so that w has two images
 * r, r^2 in F_p; reducing under both embeddings lets the rational and w
 * coordinates of each coefficient be separated, combined by CRT, recognized
 * by rational reconstruction, and certified by exact division. */
#pragma once

#include <cstdint>
#include <optional>

#include "tpt/upoly.hpp"

namespace tpt {

/// Element of F_p for a word-sized prime p, or a modulus-free integer
/// literal (p() == 0) that adopts the other operand's modulus on use:
/// the literal state is what lets UPoly<Fp> write K(0) and K(1).
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(long n) : v_(static_cast<std::uint64_t>(n)), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    std::uint64_t modulus() const { return p_; }
    std::uint64_t value() const;

    Fp operator-() const;
    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp operator/(const Fp& o) const;
    bool operator==(const Fp& o) const;
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    std::uint64_t lifted(std::uint64_t p) const;

    std::uint64_t v_; // residue, or the bit pattern of a signed literal
    std::uint64_t p_;
};

std::string to_string(const Fp& x);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);

/// Smallest prime >= n congruent to 1 mod 3.
std::uint64_t next_split_prime(std::uint64_t n);

/// The smaller root of x^2 + x + 1 in F_p (requires p = 1 mod 3).
std::uint64_t cube_root_mod(std::uint64_t p);

/// Reduce an integral Q(w) polynomial mod p sending w to omega_image.
/// Throws invariant_error on non-integral input.
UPoly<Fp> reduce_mod(const UPoly<QOmega>& f, std::uint64_t p, std::uint64_t omega_image);

/// Balanced rational reconstruction of c mod m (|num|, den <= sqrt(m/2)).
std::optional<Rational> rational_reconstruct(const Integer& c, const Integer& m);

/// Monic gcd over Q(w) by modular images, CRT and rational reconstruction.
/// The result is certified by exact division into both inputs, so unlucky
/// primes or failed reconstructions only cost retries, never correctness.
UPoly<QOmega> modular_gcd(const UPoly<QOmega>& f, const UPoly<QOmega>& g);

} // namespace tpt

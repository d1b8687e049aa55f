/* F_p arithmetic and the multi-modular gcd: see the header for the scheme.
 * Soundness rests on the final division certificate, not on prime luck. */
#include "tpt/modpoly.hpp"

#include <vector>

namespace tpt {

namespace {

std::uint64_t reduce_signed(std::uint64_t bits, std::uint64_t p) {
    long long n = static_cast<long long>(bits);
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return static_cast<std::uint64_t>(r);
}

} // namespace

std::uint64_t Fp::lifted(std::uint64_t p) const {
    if (p_ == 0) return reduce_signed(v_, p);
    if (p_ != p) throw invariant_error("Fp: mixed moduli");
    return v_;
}

std::uint64_t Fp::value() const {
    return p_ == 0 ? v_ : v_;
}

Fp Fp::operator-() const {
    if (p_ == 0) return Fp(-static_cast<long>(v_));
    return Fp(v_ == 0 ? 0 : p_ - v_, p_);
}

Fp Fp::operator+(const Fp& o) const {
    std::uint64_t p = p_ ? p_ : o.p_;
    if (p == 0) return Fp(static_cast<long>(v_ + o.v_));
    std::uint64_t a = lifted(p), b = o.lifted(p);
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return Fp(s, p);
}

Fp Fp::operator-(const Fp& o) const { return *this + (-o); }

Fp Fp::operator*(const Fp& o) const {
    std::uint64_t p = p_ ? p_ : o.p_;
    if (p == 0) return Fp(static_cast<long>(v_) * static_cast<long>(o.v_));
    return Fp(mulmod(lifted(p), o.lifted(p), p), p);
}

Fp Fp::operator/(const Fp& o) const {
    std::uint64_t p = p_ ? p_ : o.p_;
    if (p == 0) throw invariant_error("Fp: literal division without a modulus");
    std::uint64_t b = o.lifted(p);
    if (b == 0) throw invariant_error("Fp: division by zero");
    return Fp(mulmod(lifted(p), invmod(b, p), p), p);
}

bool Fp::operator==(const Fp& o) const {
    std::uint64_t p = p_ ? p_ : o.p_;
    if (p == 0) return static_cast<long long>(v_) == static_cast<long long>(o.v_);
    return lifted(p) == o.lifted(p);
}

std::string to_string(const Fp& x) {
    return std::to_string(x.value()) + (x.modulus() ? " mod " + std::to_string(x.modulus()) : "");
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    long long t0 = 0, t1 = 1;
    long long r0 = static_cast<long long>(p), r1 = static_cast<long long>(a % p);
    while (r1 != 0) {
        long long q = r0 / r1;
        long long tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1) throw invariant_error("invmod: not invertible");
    if (t0 < 0) t0 += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t0);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for 64-bit integers.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t next_split_prime(std::uint64_t n) {
    while (n % 3 != 1) ++n;
    while (!is_prime_u64(n)) n += 3;
    return n;
}

std::uint64_t cube_root_mod(std::uint64_t p) {
    if (p % 3 != 1) throw invariant_error("cube_root_mod: p is not 1 mod 3");
    for (std::uint64_t g = 2;; ++g) {
        std::uint64_t r = powmod(g, (p - 1) / 3, p);
        if (r == 1) continue;
        std::uint64_t other = p - 1 - r;
        return std::min(r, other);
    }
}

UPoly<Fp> reduce_mod(const UPoly<QOmega>& f, std::uint64_t p, std::uint64_t omega_image) {
    std::vector<Fp> cs;
    cs.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        if (!is_integer(c.rational_part()) || !is_integer(c.omega_part()))
            throw invariant_error("reduce_mod: non-integral coefficient");
        std::uint64_t a = mpz_fdiv_ui(c.rational_part().get_num().get_mpz_t(), p);
        std::uint64_t b = mpz_fdiv_ui(c.omega_part().get_num().get_mpz_t(), p);
        cs.emplace_back((a + mulmod(b, omega_image, p)) % p, p);
    }
    return UPoly<Fp>(std::move(cs));
}

std::optional<Rational> rational_reconstruct(const Integer& c, const Integer& m) {
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
    Integer r0 = m, r1 = ((c % m) + m) % m;
    Integer t0 = 0, t1 = 1;
    while (r1 >= bound) {
        Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0) return std::nullopt;
    Integer num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound) return std::nullopt;
    if (integer_gcd(num, den) != 1) return std::nullopt;
    return Rational(num, den);
}

namespace {

/* Clears denominators so every coefficient lies in Z[w]. */
UPoly<QOmega> integral_scale(const UPoly<QOmega>& f) {
    std::vector<Rational> parts;
    for (const auto& c : f.coeffs()) {
        parts.push_back(c.rational_part());
        parts.push_back(c.omega_part());
    }
    Integer den = common_denominator(parts);
    return f * QOmega(Rational(den));
}

} // namespace

UPoly<QOmega> modular_gcd(const UPoly<QOmega>& f, const UPoly<QOmega>& g) {
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    UPoly<QOmega> F = integral_scale(f), G = integral_scale(g);
    Integer lcn_f = F.lc().norm().get_num();
    Integer lcn_g = G.lc().norm().get_num();

    long deg_min = -1;
    Integer modulus = 1;
    // Accumulated CRT residues for the (rational, w) coordinates of each
    // non-leading coefficient of the monic gcd.
    std::vector<Integer> acc_a, acc_b;

    std::uint64_t p = (std::uint64_t{1} << 62);
    for (int used = 0; used < 256; ++used) {
        p = next_split_prime(p + 1);
        if (mpz_fdiv_ui(lcn_f.get_mpz_t(), p) == 0 || mpz_fdiv_ui(lcn_g.get_mpz_t(), p) == 0)
            continue;
        std::uint64_t r1 = cube_root_mod(p);
        std::uint64_t r2 = p - 1 - r1;
        UPoly<Fp> h1 = gcd_euclid(reduce_mod(F, p, r1), reduce_mod(G, p, r1));
        UPoly<Fp> h2 = gcd_euclid(reduce_mod(F, p, r2), reduce_mod(G, p, r2));
        if (h1.degree() != h2.degree()) continue;
        long d = h1.degree();
        if (d == 0) return UPoly<QOmega>(QOmega::one());
        if (deg_min < 0 || d < deg_min) {
            deg_min = d;
            modulus = 1;
            acc_a.assign(static_cast<std::size_t>(d), 0);
            acc_b.assign(static_cast<std::size_t>(d), 0);
        } else if (d > deg_min) {
            continue;
        }

        // Split each residue pair into the two coordinates mod p.
        std::uint64_t inv_diff = invmod((r2 + p - r1) % p, p);
        std::uint64_t minv = mpz_fdiv_ui(modulus.get_mpz_t(), p);
        std::uint64_t minv_i = invmod(minv, p);
        for (long k = 0; k < d; ++k) {
            std::uint64_t e1 = h1[static_cast<std::size_t>(k)].value();
            std::uint64_t e2 = h2[static_cast<std::size_t>(k)].value();
            // a + b*r1 = e1, a + b*r2 = e2.
            std::uint64_t b = mulmod((e2 + p - e1) % p, inv_diff, p);
            std::uint64_t a = (e1 + p - mulmod(b, r1, p)) % p;
            for (auto [acc, v] : {std::pair<Integer*, std::uint64_t>{&acc_a[k], a},
                                  std::pair<Integer*, std::uint64_t>{&acc_b[k], b}}) {
                std::uint64_t cur = mpz_fdiv_ui(acc->get_mpz_t(), p);
                std::uint64_t delta = mulmod((v + p - cur) % p, minv_i, p);
                *acc += modulus * Integer(static_cast<unsigned long>(delta));
            }
        }
        modulus *= Integer(static_cast<unsigned long>(p));

        // Attempt reconstruction once at least two primes are in.
        if (modulus <= Integer(static_cast<unsigned long>(p))) continue;
        std::vector<QOmega> cs(static_cast<std::size_t>(deg_min) + 1, QOmega::zero());
        cs.back() = QOmega::one();
        bool ok = true;
        for (long k = 0; ok && k < deg_min; ++k) {
            auto ra = rational_reconstruct(acc_a[static_cast<std::size_t>(k)], modulus);
            auto rb = rational_reconstruct(acc_b[static_cast<std::size_t>(k)], modulus);
            if (!ra || !rb) {
                ok = false;
            } else {
                cs[static_cast<std::size_t>(k)] = QOmega(*ra, *rb);
            }
        }
        if (!ok) continue;
        UPoly<QOmega> h(cs);
        if (F.divrem(h).second.is_zero() && G.divrem(h).second.is_zero()) return h;
    }
    throw invariant_error("modular_gcd: failed to stabilize (suspect a bug)");
}

} // namespace tpt

/* Exact rationals, the field Q(w) with w = exp(2*pi*i/3), and certified
 * complex balls: worked examples first, then randomized algebraic laws. */
#include <random>
#include <vector>

#include "doctest.h"
#include "tpt/ball.hpp"
#include "tpt/qomega.hpp"
#include "tpt/rational.hpp"

using namespace tpt;

namespace {

QOmega random_qomega(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    return QOmega(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational(" -4/2 ") == Rational(-2));
    CHECK(parse_rational("0") == 0);
    CHECK(to_string(Rational(-7, 3)) == "-7/3");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("2+3"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
    CHECK_THROWS_AS(parse_rational("1/"), parse_error);
}

TEST_CASE("rational helpers") {
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(rational_pow(Rational(5), 0) == 1);
    CHECK(round_nearest(Rational(7, 2)) == 4);
    CHECK(round_nearest(Rational(-7, 2)) == -3);
    CHECK(round_nearest(Rational(1, 3)) == 0);
    CHECK(common_denominator({Rational(1, 6), Rational(3, 4)}) == 12);

    // Approximants of 355/113 must pass through the famous convergents.
    auto conv = continued_fraction_approximants(Rational(355, 113), 200);
    REQUIRE(!conv.empty());
    CHECK(conv.back() == Rational(355, 113));
    bool saw_22_7 = false;
    for (const auto& c : conv) saw_22_7 = saw_22_7 || c == Rational(22, 7);
    CHECK(saw_22_7);
}

TEST_CASE("qomega worked examples") {
    QOmega w = QOmega::omega();
    CHECK(w * w == QOmega(Rational(-1), Rational(-1)));
    CHECK(w * w == QOmega::omega_bar());
    CHECK(w.inverse() == QOmega(Rational(-1), Rational(-1)));
    CHECK(QOmega::one() + w + w * w == QOmega::zero());
    CHECK(parse_qomega("1-2*w") + parse_qomega("2*w") == QOmega::one());

    CHECK(parse_qomega("1-2*w").conj() == parse_qomega("3+2*w"));
    CHECK(QOmega(Rational(5)).conj() == QOmega(Rational(5)));
    CHECK(w.conj() == QOmega::omega_bar());

    CHECK(parse_qomega("1+2*w").norm() == 3);
    CHECK(QOmega::zero().norm() == 0);
    CHECK(w.norm() == 1);

    CHECK_THROWS_AS(w / QOmega::zero(), std::domain_error);
}

TEST_CASE("qomega printing and parsing round trip") {
    std::vector<std::string> canon = {"0",   "1",     "-1/3",      "w",
                                      "-w",  "2*w",   "1-2*w",     "1/2+3/4*w",
                                      "-2-w", "5-1/6*w"};
    for (const auto& s : canon) {
        QOmega q = parse_qomega(s);
        CHECK(to_string(q) == s);
        CHECK(parse_qomega(to_string(q)) == q);
    }
    CHECK(parse_qomega(" 1 * w ") == QOmega::omega());
    CHECK(parse_qomega("+2") == QOmega(Rational(2)));
    CHECK_THROWS_AS(parse_qomega("1**w"), parse_error);
    CHECK_THROWS_AS(parse_qomega("w+"), parse_error);
    CHECK_THROWS_AS(parse_qomega(""), parse_error);
}

TEST_CASE("qomega field axioms on random samples") {
    std::mt19937_64 rng(20251112);
    for (int i = 0; i < 300; ++i) {
        QOmega a = random_qomega(rng), b = random_qomega(rng), c = random_qomega(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-b) == a - b);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a * b).norm() == a.norm() * b.norm());
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == QOmega::one());
            CHECK((b / a) * a == b);
        }
    }
}

TEST_CASE("qomega square roots") {
    QOmega w = QOmega::omega();
    QOmega m3(Rational(-3));
    auto r = m3.try_sqrt();
    REQUIRE(r.has_value());
    CHECK(*r * *r == m3);
    auto rw = w.try_sqrt();
    REQUIRE(rw.has_value());
    CHECK(*rw * *rw == w);
    CHECK(!QOmega(Rational(2)).try_sqrt().has_value());
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        QOmega a = random_qomega(rng);
        auto s = (a * a).try_sqrt();
        REQUIRE(s.has_value());
        CHECK(*s * *s == a * a);
    }
}

TEST_CASE("eisenstein division and gcd") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int i = 0; i < 200; ++i) {
        QOmega a(Rational(coef(rng)), Rational(coef(rng)));
        QOmega b(Rational(coef(rng)), Rational(coef(rng)));
        if (b.is_zero()) continue;
        QOmega r = QOmega::zero();
        QOmega q = eisenstein_div(a, b, &r);
        CHECK(a == q * b + r);
        CHECK(r.norm() < b.norm());
    }

    QOmega w = QOmega::omega();
    QOmega g(Rational(3), Rational(1));
    QOmega d1 = eisenstein_gcd(g * QOmega(Rational(2)), g * QOmega(Rational(5)));
    // gcd of 2g and 5g is an associate of g; canonicalization must pick the
    // same representative no matter how the inputs are scrambled.
    CHECK(d1.norm() == g.norm());
    QOmega d2 = eisenstein_gcd(g * QOmega(Rational(5)) * w, -(g * QOmega(Rational(2))));
    CHECK(d1 == d2);
    CHECK(eisenstein_gcd(QOmega::zero(), g) == eisenstein_gcd(g * w, QOmega::zero()));
}

TEST_CASE("ball embedding worked examples") {
    // embed(1, 64): centered at 1 with a tight radius.
    ComplexBall one = ComplexBall::from_qomega(QOmega::one(), 64);
    CHECK(one.contains(QOmega::one()));
    CHECK(one.certainly_nonzero());

    // 1 + w + w^2 is exactly 0; the ball sum must say so.
    ComplexBall w = ComplexBall::from_qomega(QOmega::omega(), 64);
    ComplexBall wbar = ComplexBall::from_qomega(QOmega::omega_bar(), 64);
    ComplexBall s = w + wbar + one;
    CHECK(s.may_contain_zero());
    CHECK(s.contains(QOmega::zero()));

    // embed(1-2*w, 64) is 2 - i*sqrt(3): check against the exact value.
    ComplexBall b = ComplexBall::from_qomega(parse_qomega("1-2*w"), 64);
    CHECK(b.contains(parse_qomega("1-2*w")));
    CHECK(b.mid_re().to_double() == doctest::Approx(2.0));
    CHECK(b.mid_im().to_double() == doctest::Approx(-1.7320508075688772));
}

TEST_CASE("ball embedding radius bound") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(-5000, 5000);
    std::uniform_int_distribution<long> den(1, 97);
    for (mpfr_prec_t prec : {static_cast<mpfr_prec_t>(64), static_cast<mpfr_prec_t>(192)}) {
        for (int i = 0; i < 100; ++i) {
            Rational a(num(rng), den(rng)), c(num(rng), den(rng));
            ComplexBall b = ComplexBall::from_qomega(QOmega(a, c), prec);
            // radius <= 2^(1-prec) * (|a| + |c| + 1)
            Rational bound = abs(a) + abs(c) + 1;
            MpfrVal lim(64);
            mpfr_set_q(lim.raw(), bound.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_2si(lim.raw(), lim.raw(), 1 - static_cast<long>(prec), MPFR_RNDD);
            CHECK(mpfr_cmp(b.radius().raw(), lim.raw()) <= 0);
        }
    }
}

TEST_CASE("ball arithmetic encloses exact arithmetic") {
    std::mt19937_64 rng(314159);
    for (int i = 0; i < 200; ++i) {
        QOmega x = random_qomega(rng), y = random_qomega(rng);
        ComplexBall bx = ComplexBall::from_qomega(x, 96);
        ComplexBall by = ComplexBall::from_qomega(y, 96);
        CHECK((bx + by).contains(x + y));
        CHECK((bx - by).contains(x - y));
        CHECK((bx * by).contains(x * y));
        ComplexBall nested = (bx + by) * (bx - by) + bx * bx;
        CHECK(nested.contains((x + y) * (x - y) + x * x));
        if (!y.is_zero()) {
            ComplexBall q = bx / by;
            CHECK(q.contains(x / y));
        }
    }
}

TEST_CASE("ball division refuses a divisor that may be zero") {
    ComplexBall w = ComplexBall::from_qomega(QOmega::omega(), 64);
    ComplexBall z = w + ComplexBall::from_qomega(QOmega::omega_bar(), 64) +
                    ComplexBall::from_qomega(QOmega::one(), 64);
    CHECK_THROWS_AS(w / z, precision_error);
}

TEST_CASE("ball distance bounds and separation") {
    ComplexBall a = ComplexBall::from_qomega(parse_qomega("1"), 64);
    ComplexBall b = ComplexBall::from_qomega(parse_qomega("w"), 64);
    CHECK(a.certainly_disjoint(b));
    CHECK(ComplexBall::dist_lower(a, b).sign() > 0);
    CHECK(mpfr_cmp(ComplexBall::dist_lower(a, b).raw(), ComplexBall::dist_upper(a, b).raw()) <= 0);
    // |1 - w| = sqrt(3): both bounds must straddle it.
    CHECK(ComplexBall::dist_lower(a, b).to_double() <= 1.7320508075688772);
    CHECK(ComplexBall::dist_upper(a, b).to_double() >= 1.7320508075688772);
    CHECK(!a.certainly_disjoint(a));
}

/* Curve layer: parametrized and implicit plane curves over Q(w), tangents,
 * intersection multiplicities, power-of-unity component splitting, and the
 * exact n-th roots and bivariate resultants backing them. */
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tpt/curve.hpp"
#include "tpt/elim.hpp"

using namespace tpt;

namespace {

using UP = UPoly<QOmega>;
using MP = MPoly<QOmega>;

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

QOmega rnd_coef(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    return QOmega(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

UP rnd_upoly(std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> d(0, maxdeg);
    int deg = d(rng);
    std::vector<QOmega> cs(static_cast<std::size_t>(deg) + 1);
    for (auto& c : cs) c = rnd_coef(rng);
    return UP(cs);
}

UP up_from_longs(std::initializer_list<long> coeffs) {
    std::vector<QOmega> cs;
    for (long c : coeffs) cs.emplace_back(c);
    return UP(cs);
}

/// The same map up to a projective scalar.
bool same_param(const ParamCurve& a, const ParamCurve& b) {
    return a.x() * b.y() == b.x() * a.y() && a.y() * b.z() == b.y() * a.z() &&
           a.x() * b.z() == b.x() * a.z();
}

ParamCurve prop1a_curve() {
    return ParamCurve(up_from_longs({6, 0, 0, 9, 0, 0, 5, 0, 0, 1}),
                      up_from_longs({0, 6, 0, 0, 11, 0, 0, 6, 0, 0, 1}),
                      up_from_longs({-3, 0, 0, 0, 0, 0, 3, 0, 0, 1}));
}

/// (t^4 - 3t : t^4 + 2t : 2t^3 - 1), the rational quartic with three ordinary
/// singular points whose omega-twists tile a degree-12 curve.
ParamCurve quartic_curve() {
    return ParamCurve(up_from_longs({0, -3, 0, 0, 1}), up_from_longs({0, 2, 0, 0, 1}),
                      up_from_longs({-1, 0, 0, 2}));
}

MP quartic_equation() {
    MP x = MP::variable(XYZ, "x"), y = MP::variable(XYZ, "y"), z = MP::variable(XYZ, "z");
    return (x - y) * (x + y).pow(3) + (2 * x + 3 * y) * z.pow(3);
}

MP cube_coordinates(const MP& f) {
    std::map<std::string, MP> bind;
    for (const auto& v : XYZ) bind[v] = MP::variable(XYZ, v).pow(3);
    return f.subst(bind);
}

} // namespace

TEST_CASE("exact n-th roots in Q(w)") {
    QOmega w = QOmega::omega();

    auto sw = qomega_nth_root(w, 2);
    REQUIRE(sw.has_value());
    CHECK(*sw * *sw == w);

    // e^(i pi/3) has no square root in the field, and w has no cube root.
    CHECK_FALSE(qomega_nth_root(QOmega(Rational(1), Rational(1)), 2).has_value());
    CHECK_FALSE(qomega_nth_root(w, 3).has_value());

    auto r6 = qomega_nth_root(QOmega(64), 6);
    REQUIRE(r6.has_value());
    CHECK(r6->pow(6) == QOmega(64));
    CHECK_FALSE(qomega_nth_root(QOmega(65), 6).has_value());
    CHECK_FALSE(qomega_nth_root(QOmega(-4), 2).has_value());

    QOmega c = QOmega(Rational(1), Rational(2));
    auto r3 = qomega_nth_root(c * c * c, 3);
    REQUIRE(r3.has_value());
    CHECK(r3->pow(3) == c * c * c);

    CHECK(qomega_nth_root(QOmega(), 4) == QOmega());
    CHECK(qomega_nth_root(c, 1) == c);
    CHECK_THROWS_AS((void)qomega_nth_root(c, 0), std::domain_error);
    CHECK_THROWS_AS((void)qomega_nth_root(c, 5), std::domain_error);

    std::mt19937_64 rng(271828);
    std::uniform_int_distribution<int> which(0, 3);
    const unsigned long exps[4] = {2, 3, 4, 6};
    for (int i = 0; i < 120; ++i) {
        QOmega r = rnd_coef(rng);
        if (r.is_zero()) continue;
        unsigned long n = exps[which(rng)];
        QOmega p = r.pow(static_cast<long>(n));
        auto s = qomega_nth_root(p, n);
        REQUIRE(s.has_value());
        CHECK(s->pow(static_cast<long>(n)) == p);
    }
}

TEST_CASE("exact n-th roots of polynomials") {
    UP t = UP::variable();
    UP p = t * t + t + UP(QOmega(1));
    auto sq = upoly_nth_root(p * p, 2);
    REQUIRE(sq.has_value());
    CHECK(*sq * *sq == p * p);

    UP q = t * t * t * QOmega(Rational(1), Rational(1)) - UP(QOmega(2));
    auto cb = upoly_nth_root(q * q * q, 3);
    REQUIRE(cb.has_value());
    CHECK(*cb * *cb * *cb == q * q * q);

    CHECK_FALSE(upoly_nth_root(t * t + t, 2).has_value());
    CHECK_FALSE(upoly_nth_root(t, 2).has_value());
    CHECK(upoly_nth_root(UP(), 3) == UP());
    CHECK(upoly_nth_root(p, 1) == p);

    std::mt19937_64 rng(6174);
    for (int i = 0; i < 100; ++i) {
        UP r = rnd_upoly(rng, 3);
        if (r.is_zero()) continue;
        auto s = upoly_nth_root(r * r, 2);
        REQUIRE(s.has_value());
        CHECK(*s * *s == r * r);
    }
}

TEST_CASE("univariate polynomial JSON round trip") {
    UP p = up_from_longs({3, 0, -7}) + UP::variable() * QOmega::omega();
    CHECK(upoly_from_json(upoly_to_json(p)) == p);
    CHECK(upoly_from_json(upoly_to_json(UP())) == UP());
    CHECK_THROWS_AS((void)upoly_from_json("{\"no\":1}"), parse_error);
    CHECK_THROWS_AS((void)upoly_from_json("[\"1/0\"]"), parse_error);
}

TEST_CASE("bivariate resultant, interpolated and direct") {
    std::vector<std::string> tx = {"t", "x"};
    MP t = MP::variable(tx, "t"), x = MP::variable(tx, "x");

    MP f = t * t - x, g = t - x;
    UP expect = up_from_longs({0, -1, 1});
    CHECK(bivariate_resultant(f, g, "t", "x") == expect);
    CHECK(bivariate_resultant_direct(f, g, "t", "x") == expect);

    // Degenerate t-degrees.
    CHECK(bivariate_resultant(x * x + MP::constant(tx, QOmega(1)), g, "t", "x") ==
          up_from_longs({1, 0, 1}));
    CHECK(bivariate_resultant(f, MP::constant(tx, QOmega(3)), "t", "x") == up_from_longs({9}));

    std::mt19937_64 rng(112358);
    std::uniform_int_distribution<unsigned> e(0, 3);
    auto rnd_biv = [&]() {
        MP f2(tx);
        for (int k = 0; k < 4; ++k) {
            MP m = MP::constant(tx, rnd_coef(rng));
            unsigned et = e(rng), ex = e(rng);
            for (unsigned i = 0; i < et; ++i) m *= t;
            for (unsigned i = 0; i < ex; ++i) m *= x;
            f2 += m;
        }
        return f2;
    };
    int done = 0;
    while (done < 60) {
        MP a = rnd_biv(), b = rnd_biv(), c = rnd_biv();
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        CHECK(bivariate_resultant(a, b, "t", "x") == bivariate_resultant_direct(a, b, "t", "x"));
        CHECK(bivariate_resultant(a * b, c, "t", "x") ==
              bivariate_resultant(a, c, "t", "x") * bivariate_resultant(b, c, "t", "x"));
        ++done;
    }
}

TEST_CASE("projective points") {
    ProjPoint p = ProjPoint::exact(QOmega(2), QOmega(4), QOmega(2));
    CHECK(p == ProjPoint::exact(QOmega(1), QOmega(2), QOmega(1)));
    CHECK(p.exact_coords()[2] == QOmega::one());
    CHECK(ProjPoint::exact(QOmega(5), QOmega(), QOmega()).exact_coords()[0] == QOmega::one());
    CHECK_THROWS_AS(ProjPoint::exact(QOmega(), QOmega(), QOmega()), invariant_error);

    CHECK_THROWS_AS((void)p.ball_coords(), invariant_error);
    ComplexBall half = ComplexBall::from_rational(Rational(1, 2), 96);
    ProjPoint nb = ProjPoint::numeric(half, half, half);
    CHECK_FALSE(nb.is_exact());
    CHECK_THROWS_AS((void)nb.exact_coords(), invariant_error);
    CHECK_THROWS_AS((void)(nb == nb), invariant_error);
    CHECK(!p.to_string().empty());
    CHECK(!nb.to_string().empty());
}

TEST_CASE("param curve construction") {
    UP t = UP::variable(), one = UP(QOmega(1));
    ParamCurve c((t + one) * t, (t + one) * t * t, t + one);
    CHECK(c.x() == t);
    CHECK(c.y() == t * t);
    CHECK(c.z() == one);
    CHECK(c.degree() == 2);

    CHECK_THROWS_AS(ParamCurve(t + one, (t + one) * QOmega(2), (t + one) * QOmega(3)),
                    DegenerateImage);
    CHECK_THROWS_AS(ParamCurve(UP(), UP(), UP()), invariant_error);

    CHECK(prop1a_curve().degree() == 10);
    CHECK(quartic_curve().degree() == 4);
}

TEST_CASE("param curve evaluation") {
    ParamCurve line(up_from_longs({0, 1}), up_from_longs({1, -1}), up_from_longs({2}), "L0");
    ProjPoint at = param_eval(line, QOmega(-1));
    CHECK(at == ProjPoint::exact(QOmega(-1), QOmega(2), QOmega(2)));
    // That intersection point lies on y = z.
    CHECK(at.exact_coords()[1] == at.exact_coords()[2]);

    CHECK(param_eval(quartic_curve(), QOmega(0)) ==
          ProjPoint::exact(QOmega(0), QOmega(0), QOmega(-1)));
    CHECK(param_eval(prop1a_curve(), QOmega(0)) ==
          ProjPoint::exact(QOmega(-2), QOmega(0), QOmega(1)));

    ParamCurve conic(up_from_longs({0, 0, 1}), up_from_longs({0, 1}), up_from_longs({1}));
    ProjPoint nb = param_eval(conic, ComplexBall::from_rational(Rational(1, 2), 128));
    CHECK(nb.ball_coords()[0].contains(QOmega(Rational(1, 4))));
    CHECK(nb.ball_coords()[1].contains(QOmega(Rational(1, 2))));
    CHECK(nb.ball_coords()[2].contains(QOmega::one()));
}

TEST_CASE("lies_on") {
    CHECK(lies_on(PlaneCurve(quartic_equation()), quartic_curve()));

    MP x = MP::variable(XYZ, "x"), y = MP::variable(XYZ, "y"), z = MP::variable(XYZ, "z");
    ParamCurve conic(up_from_longs({0, 0, 1}), up_from_longs({0, 1}), up_from_longs({1}));
    CHECK(lies_on(PlaneCurve(x * z - y * y), conic));

    ParamCurve shifted(up_from_longs({0, 1}), up_from_longs({1, 1}), up_from_longs({1}));
    CHECK_FALSE(lies_on(PlaneCurve(x - y), shifted));
}

TEST_CASE("implicitize worked examples") {
    MP x = MP::variable(XYZ, "x"), y = MP::variable(XYZ, "y"), z = MP::variable(XYZ, "z");

    ParamCurve line(up_from_longs({0, 1}), up_from_longs({1, -1}), up_from_longs({2}));
    CHECK(proportional(implicitize(line).poly(), 2 * x + 2 * y - z));

    ParamCurve conic(up_from_longs({0, 0, 1}), up_from_longs({0, 1}), up_from_longs({1}));
    PlaneCurve fc = implicitize(conic);
    CHECK(fc.degree() == 2);
    CHECK(proportional(fc.poly(), x * z - y * y));

    ParamCurve cusp(up_from_longs({0, 1}), up_from_longs({1}), up_from_longs({0, 0, 0, 1}));
    CHECK(proportional(implicitize(cusp).poly(), x.pow(3) - y * y * z));

    PlaneCurve fq = implicitize(quartic_curve());
    CHECK(fq.degree() == 4);
    CHECK(proportional(fq.poly(), quartic_equation()));

    // Improper parametrizations still give the squarefree image equation.
    ParamCurve doubled(up_from_longs({0, 0, 0, 0, 1}), up_from_longs({0, 0, 1}),
                       up_from_longs({1}));
    CHECK(proportional(implicitize(doubled).poly(), x * z - y * y));
    ParamCurve tripled(up_from_longs({0, 0, 0, 1}), up_from_longs({1, 0, 0, -1}),
                       up_from_longs({2}));
    CHECK(proportional(implicitize(tripled).poly(), 2 * x + 2 * y - z));
}

TEST_CASE("implicitize on random parametrizations") {
    std::mt19937_64 rng(9241);
    int done = 0;
    while (done < 200) {
        UP xs = rnd_upoly(rng, 4), ys = rnd_upoly(rng, 4), zs = rnd_upoly(rng, 4);
        try {
            ParamCurve c(xs, ys, zs);
            PlaneCurve f = implicitize(c);
            CHECK(lies_on(f, c));
            CHECK(f.degree() >= 1);
            CHECK(f.degree() <= c.degree());
        } catch (const invariant_error&) {
            continue;
        } catch (const DegenerateImage&) {
            continue;
        }
        ++done;
    }
}

TEST_CASE("implicitize factors out the degree of the map") {
    std::mt19937_64 rng(40316);
    UP tsq = up_from_longs({0, 0, 1});
    int done = 0;
    while (done < 40) {
        UP xs = rnd_upoly(rng, 2), ys = rnd_upoly(rng, 2), zs = rnd_upoly(rng, 2);
        try {
            ParamCurve c(xs, ys, zs);
            ParamCurve c2(c.x().compose(tsq), c.y().compose(tsq), c.z().compose(tsq));
            PlaneCurve f = implicitize(c);
            PlaneCurve f2 = implicitize(c2);
            CHECK(proportional(f.poly(), f2.poly()));
            CHECK(c2.degree() == 2 * c.degree());
            CHECK(lies_on(f2, c2));
        } catch (const invariant_error&) {
            continue;
        } catch (const DegenerateImage&) {
            continue;
        }
        ++done;
    }
}

TEST_CASE("tangent lines") {
    ParamCurve conic(up_from_longs({0, 0, 1}), up_from_longs({0, 1}), up_from_longs({1}));
    CHECK(tangent_line(conic, QOmega(0)) == std::array<QOmega, 3>{QOmega(1), QOmega(), QOmega()});

    ParamCurve line(up_from_longs({0, 1}), up_from_longs({1, -1}), up_from_longs({2}));
    std::array<QOmega, 3> l0 = {QOmega(-2), QOmega(-2), QOmega(1)};
    CHECK(tangent_line(line, QOmega(5)) == l0);
    CHECK(tangent_line(line, QOmega(0)) == l0);

    // Cuspidal branch: the first derivative vanishes, the second decides.
    ParamCurve cusp(up_from_longs({0, 0, 1}), up_from_longs({0, 0, 0, 1}), up_from_longs({1}));
    CHECK(tangent_line(cusp, QOmega(0)) == std::array<QOmega, 3>{QOmega(), QOmega(1), QOmega()});
    CHECK_FALSE(is_immersed_at(cusp, QOmega(0)));
    CHECK(is_immersed_at(cusp, QOmega(1)));

    std::array<QOmega, 3> tq = tangent_line(quartic_curve(), QOmega(0));
    CHECK(tq[2] == QOmega());  // passes through (0:0:1)
    PlaneCurve tl = line_curve(tq[0], tq[1], tq[2]);
    CHECK(intersection_multiplicity_param(tl, quartic_curve(), QOmega(0)) >= 2);
}

TEST_CASE("tangency is multiplicity at least two") {
    ParamCurve conic(up_from_longs({0, 0, 1}), up_from_longs({0, 1}), up_from_longs({1}));
    for (long t0 : {0L, 1L, -1L, 2L}) {
        std::array<QOmega, 3> tc = tangent_line(conic, QOmega(t0));
        CHECK(intersection_multiplicity_param(line_curve(tc[0], tc[1], tc[2]), conic,
                                              QOmega(t0)) >= 2);
        // Another line through the same point meets it simply.
        std::array<QOmega, 3> p = param_eval(conic, QOmega(t0)).exact_coords();
        auto proportional3 = [](const std::array<QOmega, 3>& a, const std::array<QOmega, 3>& b) {
            return a[1] * b[2] == a[2] * b[1] && a[2] * b[0] == a[0] * b[2] &&
                   a[0] * b[1] == a[1] * b[0];
        };
        std::array<QOmega, 3> zero3 = {QOmega(), QOmega(), QOmega()};
        for (std::array<QOmega, 3> other : {std::array<QOmega, 3>{p[1], -p[0], QOmega()},
                                            std::array<QOmega, 3>{p[2], QOmega(), -p[0]},
                                            std::array<QOmega, 3>{QOmega(), p[2], -p[1]}}) {
            if (other == zero3 || proportional3(other, tc)) continue;
            CHECK(intersection_multiplicity_param(line_curve(other[0], other[1], other[2]), conic,
                                                  QOmega(t0)) == 1);
        }
    }
}

TEST_CASE("cubic tangency configuration") {
    // x = -q(s)/p(s), y = s against the quartic line packet p(x) y + q(x) = 0.
    UP p = up_from_longs({1, 0, -3, 1});
    UP q = up_from_longs({0, 1, -1, 1});
    ParamCurve c2(UP() - q, UP::variable() * p, p);

    MP xa = MP::variable(XY, "x"), ya = MP::variable(XY, "y");
    MP paff = xa.pow(3) - 3 * xa.pow(2) + MP::constant(XY, QOmega(1));
    MP qaff = xa.pow(3) - xa.pow(2) + xa;
    PlaneCurve l2((paff * ya + qaff).homogenize("z"));
    CHECK(l2.degree() == 4);

    for (long s0 : {0L, 1L, -1L})
        CHECK(intersection_multiplicity_param(l2, c2, QOmega(s0)) == 3);

    MP x = MP::variable(XYZ, "x"), y = MP::variable(XYZ, "y");
    CHECK(intersection_multiplicity_param(PlaneCurve(x + y), c2, QOmega(0)) == 2);
    CHECK(intersection_multiplicity_param(PlaneCurve(x - y), c2, QOmega(2)) == 1);

    CHECK_THROWS_AS((void)intersection_multiplicity_param(implicitize(c2), c2, QOmega(0)),
                    IdenticallyZero);
}

TEST_CASE("root of unity components") {
    UP t = UP::variable(), one = UP(QOmega(1));

    auto pair = root_of_unity_components(t, t, one, 2);
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].x() == t);
    CHECK(pair[0].y() == t);
    CHECK(pair[1].x() == t * QOmega(-1));
    CHECK(pair[1].y() == t);
    MP x = MP::variable(XYZ, "x"), y = MP::variable(XYZ, "y");
    CHECK(lies_on(PlaneCurve(x * x - y * y), pair[0]));
    CHECK(lies_on(PlaneCurve(x * x - y * y), pair[1]));

    auto self = root_of_unity_components(t, t, one, 1);
    REQUIRE(self.size() == 1);
    CHECK(self[0].x() == t);

    CHECK_THROWS_AS((void)root_of_unity_components(t * t, t, one, 2), ShapeMismatch);
    CHECK_THROWS_AS((void)root_of_unity_components(one, t, one, 2), ShapeMismatch);
    CHECK_THROWS_AS((void)root_of_unity_components(t, t, t + one, 2), ShapeMismatch);
    CHECK_THROWS_AS((void)root_of_unity_components(t, t, one, 4), invariant_error);
    CHECK_THROWS_AS((void)root_of_unity_components(t, t, one, 0), invariant_error);
}

TEST_CASE("cubing the quartic parametrization") {
    // t -> (t(t-3)^3 : t(t+2)^3 : (2t-1)^3) splits under t -> t^(1/3) into
    // three quartics, the k = 0 one being the printed quartic curve.
    ParamCurve seed(up_from_longs({0, -27, 27, -9, 1}), up_from_longs({0, 8, 12, 6, 1}),
                    up_from_longs({-1, 6, -12, 8}));
    auto comps = root_of_unity_components(seed.x(), seed.y(), seed.z(), 3);
    REQUIRE(comps.size() == 3);
    CHECK(same_param(comps[0], quartic_curve()));
    CHECK_FALSE(same_param(comps[0], comps[1]));
    CHECK_FALSE(same_param(comps[0], comps[2]));
    CHECK_FALSE(same_param(comps[1], comps[2]));

    PlaneCurve h = implicitize(seed);
    PlaneCurve hc(cube_coordinates(h.poly()));
    CHECK(hc.degree() == 3 * h.degree());
    for (const auto& c : comps) CHECK(lies_on(hc, c));
}

TEST_CASE("sixth power components") {
    UP t = UP::variable(), one = UP(QOmega(1));
    UP xs = t * (t - one).pow(6), ys = t * (t + one).pow(6), zs = (t + one + one).pow(6);
    auto comps = root_of_unity_components(xs, ys, zs, 6);
    REQUIRE(comps.size() == 6);
    ParamCurve seed(xs, ys, zs);
    PlaneCurve h = implicitize(seed);
    std::map<std::string, MP> bind;
    for (const auto& v : XYZ) bind[v] = MP::variable(XYZ, v).pow(6);
    PlaneCurve h6(h.poly().subst(bind));
    for (const auto& c : comps) CHECK(lies_on(h6, c));
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = i + 1; j < comps.size(); ++j)
            CHECK_FALSE(same_param(comps[i], comps[j]));
}

TEST_CASE("coordinate twists") {
    QOmega w = QOmega::omega();
    ParamCurve c = quartic_curve();

    ParamCurve id = twist_component(c, {QOmega(1), QOmega(1), QOmega(1)});
    CHECK(id.x() == c.x());

    // The x-scale by w^2 parametrizes the w-twisted quartic equation.
    ParamCurve tw = twist_component(c, {w * w, QOmega(1), QOmega(1)});
    std::map<std::string, MP> bind;
    bind["x"] = MP::variable(XYZ, "x") * w;
    bind["y"] = MP::variable(XYZ, "y");
    bind["z"] = MP::variable(XYZ, "z");
    CHECK(lies_on(PlaneCurve(quartic_equation().subst(bind)), tw));

    ParamCurve thrice = twist_component(
        twist_component(twist_component(c, {w, QOmega(1), QOmega(1)}), {w, QOmega(1), QOmega(1)}),
        {w, QOmega(1), QOmega(1)});
    CHECK(thrice.x() == c.x());

    CHECK_THROWS_AS(twist_component(c, {QOmega(), QOmega(1), QOmega(1)}), invariant_error);
}

TEST_CASE("projective transformations") {
    MP x = MP::variable(XYZ, "x"), y = MP::variable(XYZ, "y"), z = MP::variable(XYZ, "z");
    ParamCurve cusp(up_from_longs({0, 1}), up_from_longs({1}), up_from_longs({0, 0, 0, 1}));
    PlaneCurve fc(x.pow(3) - y * y * z);
    CHECK(lies_on(fc, cusp));

    Mat3 ident = {{{QOmega(1), QOmega(), QOmega()},
                   {QOmega(), QOmega(1), QOmega()},
                   {QOmega(), QOmega(), QOmega(1)}}};
    CHECK(same_param(apply_projective_linear(cusp, ident), cusp));
    CHECK(proportional(apply_projective_linear(fc, ident).poly(), fc.poly()));

    Mat3 swap_xy = {{{QOmega(), QOmega(1), QOmega()},
                     {QOmega(1), QOmega(), QOmega()},
                     {QOmega(), QOmega(), QOmega(1)}}};
    ParamCurve moved = apply_projective_linear(cusp, swap_xy);
    PlaneCurve g = apply_projective_linear(fc, swap_xy);
    CHECK(proportional(g.poly(), y.pow(3) - x * x * z));
    CHECK(lies_on(g, moved));

    Mat3 m = {{{QOmega(1), QOmega(2), QOmega()},
               {QOmega(), QOmega(1), QOmega(Rational(1), Rational(1))},
               {QOmega(1), QOmega(), QOmega(1)}}};
    Mat3 minv;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t r1 = (j + 1) % 3, r2 = (j + 2) % 3;
            std::size_t c1 = (i + 1) % 3, c2 = (i + 2) % 3;
            minv[i][j] = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
        }
    ParamCurve conic(up_from_longs({0, 0, 1}), up_from_longs({0, 1}), up_from_longs({1}));
    CHECK(same_param(apply_projective_linear(apply_projective_linear(conic, m), minv), conic));
    PlaneCurve fcon(x * z - y * y);
    CHECK(proportional(
        apply_projective_linear(apply_projective_linear(fcon, m), minv).poly(), fcon.poly()));

    // Intersection multiplicity is a projective invariant.
    std::array<QOmega, 3> tc = tangent_line(conic, QOmega(1));
    PlaneCurve tl = line_curve(tc[0], tc[1], tc[2]);
    CHECK(intersection_multiplicity_param(apply_projective_linear(tl, m),
                                          apply_projective_linear(conic, m), QOmega(1)) ==
          intersection_multiplicity_param(tl, conic, QOmega(1)));

    Mat3 sing = {{{QOmega(1), QOmega(1), QOmega()},
                  {QOmega(1), QOmega(1), QOmega()},
                  {QOmega(), QOmega(), QOmega(1)}}};
    CHECK_THROWS_AS(apply_projective_linear(cusp, sing), invariant_error);
    CHECK_THROWS_AS(apply_projective_linear(fc, sing), invariant_error);
}

TEST_CASE("curve JSON round trips") {
    ParamCurve c = quartic_curve();
    ParamCurve back = param_curve_from_json(param_curve_to_json(c));
    CHECK(back.x() == c.x());
    CHECK(back.y() == c.y());
    CHECK(back.z() == c.z());
    CHECK(back.label() == c.label());

    PlaneCurve f(quartic_equation(), "quartic");
    PlaneCurve fback = plane_curve_from_json(plane_curve_to_json(f));
    CHECK(fback.poly() == f.poly());
    CHECK(fback.label() == "quartic");

    CHECK_THROWS_AS((void)param_curve_from_json("{\"kind\":\"implicit\"}"), parse_error);
    CHECK_THROWS_AS((void)plane_curve_from_json("not json"), parse_error);
}

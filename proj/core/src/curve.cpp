#include "tpt/curve.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "json.hpp"

#include "tpt/elim.hpp"
#include "tpt/series.hpp"

namespace tpt {

namespace {

bool all_zero(const std::array<QOmega, 3>& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

/// Scale a projective triple so its last nonzero entry is one.
std::array<QOmega, 3> normalize_triple(std::array<QOmega, 3> v) {
    for (int i = 2; i >= 0; --i) {
        if (v[i].is_zero()) continue;
        QOmega inv = v[i].inverse();
        for (auto& c : v) c = c * inv;
        return v;
    }
    throw invariant_error("normalize_triple: zero triple");
}

std::array<QOmega, 3> cross3(const std::array<QOmega, 3>& a, const std::array<QOmega, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// 1, p, p^2, ..., p^top.
std::vector<UPoly<QOmega>> upoly_powers(const UPoly<QOmega>& p, long top) {
    std::vector<UPoly<QOmega>> out;
    out.emplace_back(QOmega(1));
    for (long k = 1; k <= top; ++k) out.push_back(out.back() * p);
    return out;
}

/// Divide by the coefficient of the lexicographically largest monomial.
MPoly<QOmega> scalar_normalized(const MPoly<QOmega>& f) {
    if (f.is_zero()) return f;
    return f * f.terms().rbegin()->second.inverse();
}

} // namespace

ProjPoint ProjPoint::exact(const QOmega& x, const QOmega& y, const QOmega& z) {
    ProjPoint p;
    p.exact_ = true;
    p.coords_ = normalize_triple({x, y, z});
    return p;
}

ProjPoint ProjPoint::numeric(ComplexBall x, ComplexBall y, ComplexBall z) {
    ProjPoint p;
    p.balls_.emplace(std::array<ComplexBall, 3>{std::move(x), std::move(y), std::move(z)});
    return p;
}

const std::array<QOmega, 3>& ProjPoint::exact_coords() const {
    if (!exact_) throw invariant_error("ProjPoint: numeric point has no exact coordinates");
    return coords_;
}

const std::array<ComplexBall, 3>& ProjPoint::ball_coords() const {
    if (exact_) throw invariant_error("ProjPoint: exact point has no ball coordinates");
    return *balls_;
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    if (!exact_ || !o.exact_)
        throw invariant_error("ProjPoint: equality needs exact points on both sides");
    return coords_ == o.coords_;
}

std::string ProjPoint::to_string() const {
    if (exact_)
        return "(" + tpt::to_string(coords_[0]) + " : " + tpt::to_string(coords_[1]) + " : " +
               tpt::to_string(coords_[2]) + ")";
    const auto& b = *balls_;
    return "(" + b[0].to_string() + " : " + b[1].to_string() + " : " + b[2].to_string() + ")";
}

ParamCurve::ParamCurve(UPoly<QOmega> x, UPoly<QOmega> y, UPoly<QOmega> z, std::string label)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), label_(std::move(label)) {
    if (x_.is_zero() && y_.is_zero() && z_.is_zero())
        throw invariant_error("ParamCurve: zero parametrization");
    UPoly<QOmega> g = upoly_gcd(upoly_gcd(x_, y_), z_);
    if (g.degree() > 0) {
        x_ = x_.is_zero() ? x_ : x_.exact_div(g);
        y_ = y_.is_zero() ? y_ : y_.exact_div(g);
        z_ = z_.is_zero() ? z_ : z_.exact_div(g);
    }
    if (degree() <= 0) throw DegenerateImage("ParamCurve: the image is a single point");
}

long ParamCurve::degree() const {
    return std::max(x_.degree(), std::max(y_.degree(), z_.degree()));
}

PlaneCurve::PlaneCurve(MPoly<QOmega> f, std::string label)
    : f_(std::move(f)), label_(std::move(label)) {
    if (f_.is_zero()) throw invariant_error("PlaneCurve: zero polynomial");
    for (const auto& v : f_.vars())
        if (v != "x" && v != "y" && v != "z" && f_.degree_in(v) > 0)
            throw invariant_error("PlaneCurve: unexpected variable " + v);
    if (!f_.is_homogeneous()) throw invariant_error("PlaneCurve: polynomial is not homogeneous");
    degree_ = f_.total_degree();
}

PlaneCurve line_curve(const QOmega& a, const QOmega& b, const QOmega& c) {
    MPoly<QOmega> f({"x", "y", "z"});
    f.set_term({1, 0, 0}, a);
    f.set_term({0, 1, 0}, b);
    f.set_term({0, 0, 1}, c);
    return PlaneCurve(f, "line");
}

ProjPoint param_eval(const ParamCurve& c, const QOmega& t) {
    std::array<QOmega, 3> v = {c.x().eval(t), c.y().eval(t), c.z().eval(t)};
    if (all_zero(v)) throw BasePoint("param_eval: all coordinates vanish at the parameter");
    return ProjPoint::exact(v[0], v[1], v[2]);
}

ProjPoint param_eval(const ParamCurve& c, const ComplexBall& t) {
    auto horner = [&t](const UPoly<QOmega>& p) {
        ComplexBall acc(t.precision());
        for (long i = p.degree(); i >= 0; --i)
            acc = acc * t + ComplexBall::from_qomega(p[static_cast<std::size_t>(i)], t.precision());
        return acc;
    };
    return ProjPoint::numeric(horner(c.x()), horner(c.y()), horner(c.z()));
}

UPoly<QOmega> pullback(const MPoly<QOmega>& f, const ParamCurve& c) {
    if (f.is_zero()) return {};
    const auto& vars = f.vars();
    std::size_t ix = vars.size(), iy = vars.size(), iz = vars.size();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == "x") ix = i;
        else if (vars[i] == "y") iy = i;
        else if (vars[i] == "z") iz = i;
    }
    auto deg = [&](std::size_t i) { return i < vars.size() ? f.degree_in(vars[i]) : 0L; };
    auto px = upoly_powers(c.x(), deg(ix));
    auto py = upoly_powers(c.y(), deg(iy));
    auto pz = upoly_powers(c.z(), deg(iz));
    UPoly<QOmega> acc;
    for (const auto& [e, coef] : f.terms()) {
        unsigned ex = 0, ey = 0, ez = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i == ix) ex = e[i];
            else if (i == iy) ey = e[i];
            else if (i == iz) ez = e[i];
            else throw invariant_error("pullback: unexpected variable " + vars[i]);
        }
        acc += px[ex] * py[ey] * pz[ez] * coef;
    }
    return acc;
}

bool lies_on(const PlaneCurve& f, const ParamCurve& c) { return pullback(f.poly(), c).is_zero(); }

namespace {

/// Homogeneous degree-D equation satisfied by the parametrization, if any.
/// The candidate coefficients are affine unknowns; each t-power of the
/// pullback gives one linear equation.  Pinning successive coefficients to
/// one finds a nonzero solution whenever the space of solutions is nonzero,
/// and at the minimal such D the solution is provably unique.
std::optional<MPoly<QOmega>> implicit_of_degree(const ParamCurve& c, long D) {
    std::vector<std::array<unsigned, 3>> mons;
    for (long a = D; a >= 0; --a)
        for (long b = D - a; b >= 0; --b)
            mons.push_back({static_cast<unsigned>(a), static_cast<unsigned>(b),
                            static_cast<unsigned>(D - a - b)});
    auto px = upoly_powers(c.x(), D);
    auto py = upoly_powers(c.y(), D);
    auto pz = upoly_powers(c.z(), D);
    std::vector<UPoly<QOmega>> pb;
    long maxdeg = 0;
    for (const auto& m : mons) {
        pb.push_back(px[m[0]] * py[m[1]] * pz[m[2]]);
        maxdeg = std::max(maxdeg, pb.back().degree());
    }
    std::vector<Unknown> us;
    for (std::size_t i = 0; i < mons.size(); ++i)
        us.emplace_back("implicitize.c" + std::to_string(i));
    std::vector<LinExpr> eqs;
    for (long k = 0; k <= maxdeg; ++k) {
        LinExpr e;
        for (std::size_t i = 0; i < mons.size(); ++i) {
            const QOmega& cf = pb[i][static_cast<std::size_t>(k)];
            if (!cf.is_zero()) e = e + LinExpr(us[i]).scaled(cf);
        }
        eqs.push_back(e);
    }
    for (std::size_t pin = 0; pin < mons.size(); ++pin) {
        Restriction r;
        r.fixed[us[pin]] = QOmega::one();
        AffineSolution sol;
        try {
            sol = solve_affine_system(eqs, r, true);
        } catch (const Inconsistent&) {
            continue;
        }
        MPoly<QOmega> F({"x", "y", "z"});
        for (std::size_t i = 0; i < mons.size(); ++i) {
            auto it = sol.assignment.find(us[i]);
            if (it != sol.assignment.end())
                F.set_term({mons[i][0], mons[i][1], mons[i][2]}, it->second);
        }
        return F;
    }
    return std::nullopt;
}

} // namespace

PlaneCurve implicitize(const ParamCurve& c) {
    const std::vector<std::string> xyz = {"x", "y", "z"};
    // A vanishing coordinate means the image is a coordinate line.
    if (c.x().is_zero()) return PlaneCurve(MPoly<QOmega>::variable(xyz, "x"), c.label());
    if (c.y().is_zero()) return PlaneCurve(MPoly<QOmega>::variable(xyz, "y"), c.label());
    if (c.z().is_zero()) return PlaneCurve(MPoly<QOmega>::variable(xyz, "z"), c.label());
    long d = c.degree();

    // Resultant route, in the z = 1 chart: eliminate t between
    //   P1 = z(t) x - x(t)  and  P2 = z(t) y - y(t),
    // interpolating the y dependence through integer nodes where the leading
    // t-coefficient of P2 survives.  The result is the affine equation raised
    // to the degree of the parametrization map, so for a proper map it passes
    // the certification below and anything else falls through.
    long dt1 = std::max(c.z().degree(), c.x().degree());
    long dt2 = std::max(c.z().degree(), c.y().degree());
    MPoly<QOmega> p1 = upoly_to_mpoly(c.z(), "t") * MPoly<QOmega>::variable({"t", "x"}, "x") -
                       upoly_to_mpoly(c.x(), "t");
    QOmega ztop = c.z()[static_cast<std::size_t>(dt2)];
    QOmega ytop = c.y()[static_cast<std::size_t>(dt2)];
    std::vector<QOmega> nodes;
    std::vector<UPoly<QOmega>> vals;
    for (long step = 0; static_cast<long>(nodes.size()) <= dt1; ++step) {
        long v = step % 2 ? (step + 1) / 2 : -(step / 2);
        QOmega eta{Rational(v)};
        if ((ztop * eta - ytop).is_zero()) continue;
        UPoly<QOmega> b = c.z() * eta - c.y();
        vals.push_back(bivariate_resultant(p1, upoly_to_mpoly(b, "t"), "t", "x"));
        nodes.push_back(eta);
    }
    long degx = 0;
    for (const auto& r : vals) degx = std::max(degx, std::max(r.degree(), 0L));
    std::vector<UPoly<QOmega>> xslices;
    for (long k = 0; k <= degx; ++k) {
        std::vector<QOmega> ys;
        for (const auto& r : vals) ys.push_back(r[static_cast<std::size_t>(k)]);
        xslices.push_back(UPoly<QOmega>::interpolate(nodes, ys));
    }
    MPoly<QOmega> r1({"x", "y"});
    for (long k = 0; k <= degx; ++k)
        for (long l = 0; l <= xslices[static_cast<std::size_t>(k)].degree(); ++l)
            r1.set_term({static_cast<unsigned>(k), static_cast<unsigned>(l)},
                        xslices[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);

    // Certification: right degree, squarefree, and actually vanishes on the
    // curve.  Squarefreeness splits into the y-content of the resultant being
    // squarefree and the content-free part having nonzero discriminant in x.
    bool usable = !r1.is_zero() && r1.total_degree() == d;
    if (usable) {
        UPoly<QOmega> cont;
        for (const auto& s : xslices) cont = upoly_gcd(cont, s);
        usable = gcd_euclid(cont, cont.derivative()).degree() == 0;
        if (usable && degx > 0) {
            MPoly<QOmega> s({"x", "y"});
            for (long k = 0; k <= degx; ++k) {
                UPoly<QOmega> q = xslices[static_cast<std::size_t>(k)].exact_div(cont);
                for (long l = 0; l <= q.degree(); ++l)
                    s.set_term({static_cast<unsigned>(k), static_cast<unsigned>(l)},
                               q[static_cast<std::size_t>(l)]);
            }
            usable = !bivariate_resultant(s, s.derivative("x"), "x", "y").is_zero();
        }
    }
    if (usable) {
        PlaneCurve cand(scalar_normalized(r1).homogenize("z", d), c.label());
        if (lies_on(cand, c)) return cand;
    }

    // Improper parametrization (or a failed certificate): solve for the
    // equation degree by degree; the first degree that admits one gives the
    // honest squarefree equation of the image.
    for (long D = 1; D <= d; ++D)
        if (auto f = implicit_of_degree(c, D))
            return PlaneCurve(scalar_normalized(*f), c.label());
    throw invariant_error("implicitize: no equation up to the parametrization degree");
}

std::array<QOmega, 3> tangent_line(const ParamCurve& c, const QOmega& t0) {
    std::array<QOmega, 3> p = {c.x().eval(t0), c.y().eval(t0), c.z().eval(t0)};
    if (all_zero(p)) throw BasePoint("tangent_line: all coordinates vanish at the parameter");
    UPoly<QOmega> dx = c.x(), dy = c.y(), dz = c.z();
    for (long k = 1; k <= c.degree(); ++k) {
        dx = dx.derivative();
        dy = dy.derivative();
        dz = dz.derivative();
        std::array<QOmega, 3> w = cross3(p, {dx.eval(t0), dy.eval(t0), dz.eval(t0)});
        if (!all_zero(w)) return normalize_triple(w);
    }
    throw NotImmersed("tangent_line: every derivative is proportional to the point");
}

bool is_immersed_at(const ParamCurve& c, const QOmega& t0) {
    std::array<QOmega, 3> p = {c.x().eval(t0), c.y().eval(t0), c.z().eval(t0)};
    if (all_zero(p)) throw BasePoint("is_immersed_at: all coordinates vanish at the parameter");
    std::array<QOmega, 3> v = {c.x().derivative().eval(t0), c.y().derivative().eval(t0),
                               c.z().derivative().eval(t0)};
    return !all_zero(cross3(p, v));
}

long intersection_multiplicity_param(const PlaneCurve& f, const ParamCurve& c, const QOmega& t0) {
    UPoly<QOmega> g = pullback(f.poly(), c);
    if (g.is_zero())
        throw IdenticallyZero("intersection_multiplicity_param: the curve lies on F");
    UPoly<QOmega> lin({-t0, QOmega(1)});
    long m = 0;
    while (g.eval(t0).is_zero()) {
        g = g.exact_div(lin);
        ++m;
    }
    return m;
}

namespace {

/// p(t^n).
UPoly<QOmega> spread(const UPoly<QOmega>& p, long n) {
    if (p.is_zero()) return p;
    std::vector<QOmega> cs(static_cast<std::size_t>(p.degree() * n + 1), QOmega());
    for (long j = 0; j <= p.degree(); ++j)
        cs[static_cast<std::size_t>(j * n)] = p[static_cast<std::size_t>(j)];
    return UPoly<QOmega>(std::move(cs));
}

} // namespace

std::vector<ParamCurve> root_of_unity_components(const UPoly<QOmega>& x, const UPoly<QOmega>& y,
                                                 const UPoly<QOmega>& z, long n) {
    if (n <= 0) throw invariant_error("root_of_unity_components: n must be positive");
    if (n == 1) return {ParamCurve(x, y, z)};
    QOmega zeta;
    if (n == 2) zeta = QOmega(-1);
    else if (n == 3) zeta = QOmega::omega();
    else if (n == 6) zeta = QOmega(Rational(1), Rational(1));
    else throw invariant_error("root_of_unity_components: the n-th roots of unity must lie in Q(w)");
    if (upoly_gcd(upoly_gcd(x, y), z).degree() != 0)
        throw invariant_error("root_of_unity_components: parametrization must be primitive");
    const UPoly<QOmega> tvar = UPoly<QOmega>::variable();
    auto stripped_root = [&](const UPoly<QOmega>& p, const char* name) {
        if (p.is_zero()) return p;
        if (!p[0].is_zero())
            throw ShapeMismatch(std::string("root_of_unity_components: ") + name +
                                " is not t times an n-th power");
        auto r = upoly_nth_root(p.exact_div(tvar), static_cast<unsigned long>(n));
        if (!r)
            throw ShapeMismatch(std::string("root_of_unity_components: ") + name +
                                " is not t times an n-th power");
        return *r;
    };
    UPoly<QOmega> xr = stripped_root(x, "x");
    UPoly<QOmega> yr = stripped_root(y, "y");
    auto zr = upoly_nth_root(z, static_cast<unsigned long>(n));
    if (!zr) throw ShapeMismatch("root_of_unity_components: z is not an n-th power");
    UPoly<QOmega> xs = tvar * spread(xr, n);
    UPoly<QOmega> ys = tvar * spread(yr, n);
    UPoly<QOmega> zs = spread(*zr, n);
    std::vector<ParamCurve> out;
    for (long k = 0; k < n; ++k)
        out.emplace_back(xs * zeta.pow(k), ys, zs, "component " + std::to_string(k));
    return out;
}

ParamCurve twist_component(const ParamCurve& c, const std::array<QOmega, 3>& scale) {
    for (const auto& s : scale)
        if (s.is_zero()) throw invariant_error("twist_component: zero scale");
    return ParamCurve(c.x() * scale[0], c.y() * scale[1], c.z() * scale[2], c.label());
}

QOmega det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

ParamCurve apply_projective_linear(const ParamCurve& c, const Mat3& m) {
    if (det3(m).is_zero()) throw invariant_error("apply_projective_linear: singular matrix");
    auto row = [&](int i) {
        return c.x() * m[static_cast<std::size_t>(i)][0] + c.y() * m[static_cast<std::size_t>(i)][1] +
               c.z() * m[static_cast<std::size_t>(i)][2];
    };
    return ParamCurve(row(0), row(1), row(2), c.label());
}

PlaneCurve apply_projective_linear(const PlaneCurve& f, const Mat3& m) {
    if (det3(m).is_zero()) throw invariant_error("apply_projective_linear: singular matrix");
    // Adjugate via cyclic 2x2 minors; M^{-1} = adj(M)/det and the determinant
    // only rescales a homogeneous polynomial.
    Mat3 adj;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t r1 = (j + 1) % 3, r2 = (j + 2) % 3;
            std::size_t c1 = (i + 1) % 3, c2 = (i + 2) % 3;
            adj[i][j] = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
        }
    const std::vector<std::string> xyz = {"x", "y", "z"};
    std::map<std::string, MPoly<QOmega>> bind;
    for (std::size_t i = 0; i < 3; ++i) {
        MPoly<QOmega> row({"x", "y", "z"});
        for (std::size_t j = 0; j < 3; ++j) {
            std::vector<unsigned> e = {0, 0, 0};
            e[j] = 1;
            row.set_term(e, adj[i][j]);
        }
        bind[xyz[i]] = row;
    }
    for (const auto& v : f.poly().vars())
        if (!bind.count(v)) bind[v] = MPoly<QOmega>({v});
    return PlaneCurve(scalar_normalized(f.poly().subst(bind)), f.label());
}

std::string param_curve_to_json(const ParamCurve& c) {
    nlohmann::json j;
    j["kind"] = "param";
    j["label"] = c.label();
    j["x"] = nlohmann::json::parse(upoly_to_json(c.x()));
    j["y"] = nlohmann::json::parse(upoly_to_json(c.y()));
    j["z"] = nlohmann::json::parse(upoly_to_json(c.z()));
    return j.dump();
}

ParamCurve param_curve_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("curve JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("kind", "") != "param")
        throw parse_error("curve JSON: expected kind \"param\"");
    for (const char* key : {"x", "y", "z"})
        if (!j.contains(key)) throw parse_error(std::string("curve JSON: missing ") + key);
    return ParamCurve(upoly_from_json(j["x"].dump()), upoly_from_json(j["y"].dump()),
                      upoly_from_json(j["z"].dump()), j.value("label", ""));
}

std::string plane_curve_to_json(const PlaneCurve& f) {
    nlohmann::json j;
    j["kind"] = "implicit";
    j["label"] = f.label();
    j["F"] = nlohmann::json::parse(mpoly_to_json(f.poly()));
    return j.dump();
}

PlaneCurve plane_curve_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("curve JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("kind", "") != "implicit")
        throw parse_error("curve JSON: expected kind \"implicit\"");
    if (!j.contains("F")) throw parse_error("curve JSON: missing F");
    return PlaneCurve(mpoly_from_json(j["F"].dump()), j.value("label", ""));
}

} // namespace tpt

#include "tpt/singular.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "tpt/elim.hpp"
#include "tpt/roots.hpp"

namespace tpt {

namespace {

std::string curve_name(const ParamCurve& c) {
    return c.label().empty() ? "parametrized curve" : c.label();
}

/// A univariate polynomial read as a polynomial in coordinate `slot` of
/// the variable pair (s, t).
MPoly<QOmega> lift_to_pair(const UPoly<QOmega>& p, std::size_t slot) {
    static const std::vector<std::string> st = {"s", "t"};
    MPoly<QOmega> out(st);
    for (long i = 0; i <= p.degree(); ++i) {
        const QOmega& cf = p[static_cast<std::size_t>(i)];
        if (cf.is_zero()) continue;
        MPoly<QOmega>::Exp e(2, 0);
        e[slot] = static_cast<unsigned>(i);
        out.set_term(e, cf);
    }
    return out;
}

std::array<QOmega, 3> cross_exact(const std::array<QOmega, 3>& a, const std::array<QOmega, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool all_zero(const std::array<QOmega, 3>& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

ComplexBall eval_ball(const UPoly<QOmega>& p, const ComplexBall& t) {
    ComplexBall acc(t.precision());
    for (long i = p.degree(); i >= 0; --i)
        acc = acc * t + ComplexBall::from_qomega(p[static_cast<std::size_t>(i)], t.precision());
    return acc;
}

std::array<ComplexBall, 3> image_balls(const ParamCurve& c, const ComplexBall& t) {
    return {eval_ball(c.x(), t), eval_ball(c.y(), t), eval_ball(c.z(), t)};
}

std::array<ComplexBall, 3> point_image(const ProjPoint& p, mpfr_prec_t prec) {
    if (p.is_exact()) {
        const std::array<QOmega, 3> q = p.exact_coords();
        return {ComplexBall::from_qomega(q[0], prec), ComplexBall::from_qomega(q[1], prec),
                ComplexBall::from_qomega(q[2], prec)};
    }
    const std::array<ComplexBall, 3> b = p.ball_coords();
    return {b[0], b[1], b[2]};
}

/// The image of t = infinity: the top coefficients at the common degree.
ProjPoint point_at_infinity(const ParamCurve& c) {
    const long d = c.degree();
    auto top = [&](const UPoly<QOmega>& p) {
        return p.degree() == d ? p[static_cast<std::size_t>(d)] : QOmega();
    };
    return ProjPoint::exact(top(c.x()), top(c.y()), top(c.z()));
}

/// Coefficients reversed at the common degree, so t = 0 on the result is
/// t = infinity on the input.
ParamCurve reversed_curve(const ParamCurve& c) {
    const long d = c.degree();
    auto rev = [&](const UPoly<QOmega>& p) {
        std::vector<QOmega> cs(static_cast<std::size_t>(d) + 1);
        for (long i = 0; i <= p.degree(); ++i)
            cs[static_cast<std::size_t>(d - i)] = p[static_cast<std::size_t>(i)];
        return UPoly<QOmega>(cs);
    };
    return ParamCurve(rev(c.x()), rev(c.y()), rev(c.z()), c.label());
}

/// Order of the branch at an exact parameter: the first derivative not
/// proportional to the point itself.
long branch_multiplicity(const ParamCurve& c, const QOmega& t0) {
    const std::array<QOmega, 3> p = {c.x().eval(t0), c.y().eval(t0), c.z().eval(t0)};
    if (all_zero(p)) throw invariant_error("branch multiplicity: all coordinates vanish");
    UPoly<QOmega> dx = c.x(), dy = c.y(), dz = c.z();
    for (long k = 1; k <= c.degree(); ++k) {
        dx = dx.derivative();
        dy = dy.derivative();
        dz = dz.derivative();
        if (!all_zero(cross_exact(p, {dx.eval(t0), dy.eval(t0), dz.eval(t0)}))) return k;
    }
    throw invariant_error("branch multiplicity: every derivative is proportional to the point");
}

/// Candidate rationals close to a double, by continued fractions.
std::vector<Rational> rational_candidates(double v) {
    std::vector<Rational> out;
    if (!std::isfinite(v)) return out;
    std::vector<Rational> apx = continued_fraction_approximants(Rational(mpq_class(v)), Integer(1000000));
    const std::size_t keep = 8;
    std::size_t first = apx.size() > keep ? apx.size() - keep : 0;
    for (std::size_t i = apx.size(); i > first; --i) out.push_back(apx[i - 1]);
    return out;
}

/// A field element contained in the ball, if its midpoint is close to one of
/// small height.  Containment is what makes the guess trustworthy: the balls
/// handled here enclose a single algebraic number, so an exact value inside
/// the ball can only be that number once it also satisfies the defining
/// polynomial the caller checks.
std::optional<QOmega> guess_in_ball(const ComplexBall& b) {
    const double re = b.mid_re().to_double();
    const double im = b.mid_im().to_double();
    const double wc = 2.0 * im / std::sqrt(3.0);
    const std::vector<Rational> ra = rational_candidates(re + wc / 2.0);
    const std::vector<Rational> rw = rational_candidates(wc);
    for (const Rational& x : ra)
        for (const Rational& w : rw) {
            QOmega cand(x, w);
            if (b.contains(cand)) return cand;
        }
    return std::nullopt;
}

std::optional<QOmega> recognize_root(const ComplexBall& b, const UPoly<QOmega>& f) {
    std::optional<QOmega> cand = guess_in_ball(b);
    if (cand && f.eval(*cand).is_zero()) return cand;
    return std::nullopt;
}

/// Roots of a squarefree polynomial, each with a ball and, when the root is
/// recognized in the ground field, its exact value.
struct IsolatedRoot {
    ComplexBall ball;
    std::optional<QOmega> exact;
};

std::vector<IsolatedRoot> exact_or_ball_roots(const UPoly<QOmega>& f, const CensusOptions& opts) {
    std::vector<IsolatedRoot> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        QOmega r = QOmega() - f[0] * f[1].inverse();
        out.push_back({ComplexBall::from_qomega(r, opts.precision_bits), r});
        return out;
    }
    RootIsolationOptions ro;
    ro.precision_bits = opts.precision_bits;
    ro.max_newton_steps = opts.max_newton_steps;
    for (ComplexBall& b : isolate_roots(f, ro)) {
        std::optional<QOmega> ex = recognize_root(b, f);
        out.push_back({std::move(b), ex});
    }
    return out;
}

enum class Sep { same, distinct, unclear };

/// Projective comparison of two coordinate enclosures.  The cross products
/// decide: all of them straddling zero means the balls allow a common point,
/// while one bounded away from zero with a margin against the radii proves
/// the points distinct.  Anything in between stays unclear.
Sep image_status(const std::array<ComplexBall, 3>& a, const std::array<ComplexBall, 3>& b,
                 long factor) {
    MpfrVal maxrad(ComplexBall::radius_precision);
    MpfrVal maxabs(ComplexBall::radius_precision);
    for (int i = 0; i < 3; ++i) {
        for (const std::array<ComplexBall, 3>* v : {&a, &b}) {
            if (compare((*v)[i].radius(), maxrad) > 0) maxrad = (*v)[i].radius();
            MpfrVal up = (*v)[i].abs_upper();
            if (compare(up, maxabs) > 0) maxabs = up;
        }
    }
    bool certain = false;
    MpfrVal best(ComplexBall::radius_precision);
    static const int I[3] = {0, 0, 1}, J[3] = {1, 2, 2};
    for (int k = 0; k < 3; ++k) {
        ComplexBall cr = a[I[k]] * b[J[k]] - a[J[k]] * b[I[k]];
        if (!cr.certainly_nonzero()) continue;
        certain = true;
        MpfrVal lo = cr.abs_lower();
        if (compare(lo, best) > 0) best = lo;
    }
    if (!certain) return Sep::same;
    MpfrVal thr(ComplexBall::radius_precision);
    mpfr_mul(thr.raw(), maxrad.raw(), maxabs.raw(), MPFR_RNDU);
    mpfr_mul_si(thr.raw(), thr.raw(), factor, MPFR_RNDU);
    return compare(best, thr) >= 0 ? Sep::distinct : Sep::unclear;
}

Sep status_of(const std::optional<ProjPoint>& pa, const std::array<ComplexBall, 3>& ia,
              const std::optional<ProjPoint>& pb, const std::array<ComplexBall, 3>& ib,
              long factor) {
    if (pa && pb) return *pa == *pb ? Sep::same : Sep::distinct;
    return image_status(ia, ib, factor);
}

/// Group items by their image point.  Pairs that cannot be told apart at the
/// working precision abort the census rather than silently merging.
std::vector<std::vector<std::size_t>> cluster_items(
        const std::vector<std::optional<ProjPoint>>& pts,
        const std::vector<std::array<ComplexBall, 3>>& imgs, long factor,
        const std::string& who) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    std::vector<Sep> st(n * n, Sep::distinct);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Sep s = status_of(pts[i], imgs[i], pts[j], imgs[j], factor);
            if (s == Sep::unclear)
                throw PrecisionExhausted(who + ": image points cannot be separated at the working precision");
            st[i * n + j] = s;
            if (s == Sep::same) parent[find(i)] = find(j);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (st[i * n + j] == Sep::distinct && find(i) == find(j))
                throw PrecisionExhausted(who + ": image clusters are inconsistent at the working precision");
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

/// A tangent line, with exact coefficients or coordinate enclosures.
using Tangent = std::variant<std::array<QOmega, 3>, std::array<ComplexBall, 3>>;

std::array<ComplexBall, 3> cross_ball(const std::array<ComplexBall, 3>& a,
                                      const std::array<ComplexBall, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Tangent line coefficients at a ball parameter; certifies on the way that
/// the branch is immersed there.
std::array<ComplexBall, 3> ball_tangent(const ParamCurve& c, const ComplexBall& t) {
    const std::array<ComplexBall, 3> p = image_balls(c, t);
    const std::array<ComplexBall, 3> v = {eval_ball(c.x().derivative(), t),
                                          eval_ball(c.y().derivative(), t),
                                          eval_ball(c.z().derivative(), t)};
    std::array<ComplexBall, 3> w = cross_ball(p, v);
    if (!w[0].certainly_nonzero() && !w[1].certainly_nonzero() && !w[2].certainly_nonzero())
        throw PrecisionExhausted("census: cannot certify an immersed branch at the working precision");
    return w;
}

std::array<ComplexBall, 3> tangent_to_balls(const Tangent& t, mpfr_prec_t prec) {
    if (const auto* e = std::get_if<std::array<QOmega, 3>>(&t))
        return {ComplexBall::from_qomega((*e)[0], prec), ComplexBall::from_qomega((*e)[1], prec),
                ComplexBall::from_qomega((*e)[2], prec)};
    return std::get<std::array<ComplexBall, 3>>(t);
}

bool tangents_distinct(const Tangent& a, const Tangent& b, mpfr_prec_t prec) {
    const auto* ea = std::get_if<std::array<QOmega, 3>>(&a);
    const auto* eb = std::get_if<std::array<QOmega, 3>>(&b);
    if (ea && eb) return !all_zero(cross_exact(*ea, *eb));
    const std::array<ComplexBall, 3> ba = tangent_to_balls(a, prec);
    const std::array<ComplexBall, 3> bb = tangent_to_balls(b, prec);
    const std::array<ComplexBall, 3> w = cross_ball(ba, bb);
    if (w[0].certainly_nonzero() || w[1].certainly_nonzero() || w[2].certainly_nonzero()) return true;
    throw PrecisionExhausted("census: tangent directions cannot be separated at the working precision");
}

void check_options(const CensusOptions& opts) {
    if (opts.precision_bits < 64) throw invariant_error("census: precision must be at least 64 bits");
    if (opts.max_newton_steps < 1) throw invariant_error("census: newton step budget must be positive");
    if (opts.cluster_separation_factor < 2)
        throw invariant_error("census: separation factor must be at least 2");
}

std::string branch_key(const BranchParam& b) {
    std::string k = std::to_string(b.component);
    k += b.at_infinity ? "|1|" : "|0|";
    if (b.exact)
        k += "e" + to_string(*b.exact);
    else if (b.ball)
        k += "b" + b.ball->to_string();
    return k;
}

/// Canonical order and derived totals shared by every census.
void finalize(SingularCensus& cs) {
    for (CensusEntry& e : cs.entries)
        std::sort(e.branches.begin(), e.branches.end(),
                  [](const BranchParam& a, const BranchParam& b) { return branch_key(a) < branch_key(b); });
    std::sort(cs.entries.begin(), cs.entries.end(), [](const CensusEntry& a, const CensusEntry& b) {
        return a.point.to_string() < b.point.to_string();
    });
    cs.ordered_pairs = 0;
    for (const CensusEntry& e : cs.entries)
        cs.ordered_pairs += e.multiplicity * (e.multiplicity - 1);
}

/// Branches of finite parameters at an exactly known point, one per root of
/// the parameter polynomial, with the root multiplicity as branch order.
std::vector<BranchParam> branches_of_parameter_poly(const UPoly<QOmega>& pp,
                                                    const CensusOptions& opts) {
    std::vector<BranchParam> out;
    if (pp.degree() <= 0) return out;
    std::vector<UPoly<QOmega>> yun = yun_decomposition(pp);
    for (std::size_t k = 0; k < yun.size(); ++k) {
        if (yun[k].degree() <= 0) continue;
        for (IsolatedRoot& r : exact_or_ball_roots(yun[k], opts)) {
            BranchParam b;
            b.component = 0;
            b.at_infinity = false;
            b.exact = r.exact;
            if (!r.exact) b.ball = r.ball;
            b.multiplicity = static_cast<long>(k) + 1;
            out.push_back(std::move(b));
        }
    }
    return out;
}

ComplexBall branch_ball(const BranchParam& b, mpfr_prec_t prec) {
    if (b.exact) return ComplexBall::from_qomega(*b.exact, prec);
    if (b.ball) return *b.ball;
    throw invariant_error("census: branch carries no parameter");
}

/// Whether two balls can possibly contain the same value.
bool balls_may_meet(const ComplexBall& a, const ComplexBall& b) { return !a.certainly_disjoint(b); }

} // namespace

DoublePointSystem double_point_system(const ParamCurve& c) {
    static const std::vector<std::string> st = {"s", "t"};
    const MPoly<QOmega> xs = lift_to_pair(c.x(), 0), xt = lift_to_pair(c.x(), 1);
    const MPoly<QOmega> ys = lift_to_pair(c.y(), 0), yt = lift_to_pair(c.y(), 1);
    const MPoly<QOmega> zs = lift_to_pair(c.z(), 0), zt = lift_to_pair(c.z(), 1);
    const MPoly<QOmega> den = MPoly<QOmega>::variable(st, "s") - MPoly<QOmega>::variable(st, "t");
    return DoublePointSystem{(xs * yt - ys * xt).exact_div(den),
                             (xs * zt - zs * xt).exact_div(den),
                             (ys * zt - zs * yt).exact_div(den)};
}

PointMultiplicity multiplicity_at_point_exact(const ParamCurve& c, const ProjPoint& p) {
    if (!p.is_exact())
        throw invariant_error("multiplicity_at_point_exact: the point must be exact");
    const std::array<QOmega, 3> q = p.exact_coords();
    const long d = c.degree();
    const std::array<UPoly<QOmega>, 3> cr = {c.y() * q[2] - c.z() * q[1],
                                             c.z() * q[0] - c.x() * q[2],
                                             c.x() * q[1] - c.y() * q[0]};
    UPoly<QOmega> g;
    long dinf = 0;
    bool any = false;
    for (const UPoly<QOmega>& ci : cr) {
        if (ci.is_zero()) continue;
        const long drop = d - ci.degree();
        dinf = any ? std::min(dinf, drop) : drop;
        g = upoly_gcd(g, ci);
        any = true;
    }
    if (!any) throw invariant_error("multiplicity_at_point_exact: degenerate parametrization");
    PointMultiplicity out;
    out.parameter_poly = g;
    out.at_infinity = dinf;
    out.multiplicity = g.degree() + dinf;
    if (out.multiplicity == 0)
        throw PointNotOnCurve("multiplicity_at_point_exact: " + p.to_string() + " is not on " +
                              curve_name(c));
    return out;
}

bool ordinary_check(const std::vector<ParamCurve>& components,
                    const std::vector<BranchParam>& branches, mpfr_prec_t precision_bits) {
    std::vector<Tangent> ts;
    ts.reserve(branches.size());
    for (const BranchParam& b : branches) {
        if (b.component >= components.size())
            throw invariant_error("ordinary_check: branch names a missing component");
        const ParamCurve& c = components[b.component];
        if (b.multiplicity > 1) return false;
        if (b.at_infinity) {
            const ParamCurve rc = reversed_curve(c);
            if (branch_multiplicity(rc, QOmega()) > 1) return false;
            ts.emplace_back(tangent_line(rc, QOmega()));
        } else if (b.exact) {
            if (branch_multiplicity(c, *b.exact) > 1) return false;
            ts.emplace_back(tangent_line(c, *b.exact));
        } else if (b.ball) {
            ts.emplace_back(ball_tangent(c, *b.ball));
        } else {
            throw invariant_error("ordinary_check: branch carries no parameter");
        }
    }
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            if (!tangents_distinct(ts[i], ts[j], precision_bits)) return false;
    return true;
}

SingularCensus census_self(const ParamCurve& c, const CensusOptions& opts) {
    check_options(opts);
    const mpfr_prec_t prec = opts.precision_bits;
    const std::vector<ParamCurve> comps{c};
    SingularCensus out;

    // Double point system and its eliminant.  A parametrization tracing its
    // image more than once leaves a common nonconstant factor in all three
    // quotients, so every pairwise resultant collapses to zero; that is the
    // improperness test.
    const DoublePointSystem sys = double_point_system(c);
    std::vector<const MPoly<QOmega>*> gs;
    for (const MPoly<QOmega>* g : {&sys.g1, &sys.g2, &sys.g3})
        if (!g->is_zero()) gs.push_back(g);
    if (gs.empty()) throw invariant_error("census_self: every minor vanishes");

    UPoly<QOmega> elim(QOmega::one());
    if (gs.size() == 1) {
        if (gs[0]->total_degree() > 0)
            throw ImproperParametrization("census_self: " + curve_name(c) +
                                          " traces its image more than once");
    } else {
        std::vector<UPoly<QOmega>> rs;
        UPoly<QOmega> r = bivariate_resultant(*gs[0], *gs[1], "t", "s");
        if (!r.is_zero()) rs.push_back(std::move(r));
        if (gs.size() == 3) {
            r = bivariate_resultant(*gs[0], *gs[2], "t", "s");
            if (!r.is_zero()) rs.push_back(std::move(r));
            if (rs.empty()) {
                r = bivariate_resultant(*gs[1], *gs[2], "t", "s");
                if (!r.is_zero()) rs.push_back(std::move(r));
            }
        }
        if (rs.empty())
            throw ImproperParametrization("census_self: " + curve_name(c) +
                                          " traces its image more than once");
        elim = rs[0].monic();
        for (std::size_t i = 1; i < rs.size(); ++i) elim = upoly_gcd(elim, rs[i]);
    }

    // Any parameter sharing its image with another finite parameter is a
    // root of the eliminant, and so is any parameter of a non immersed
    // branch (the diagonal zeros of the system).
    UPoly<QOmega> sq(QOmega::one());
    struct EliminantRoot {
        ComplexBall ball;
        std::optional<QOmega> exact;
        std::optional<ProjPoint> exact_point;
        std::array<ComplexBall, 3> image;
    };
    std::vector<EliminantRoot> roots;
    if (elim.degree() > 0) {
        sq = squarefree_part(elim);
        for (IsolatedRoot& ir : exact_or_ball_roots(sq, opts)) {
            if (ir.exact) {
                const ProjPoint p = param_eval(c, *ir.exact);
                roots.push_back({std::move(ir.ball), ir.exact, p, point_image(p, prec)});
            } else {
                roots.push_back({ir.ball, std::nullopt, std::nullopt, image_balls(c, ir.ball)});
            }
        }
    }

    // The point reached at t = infinity is settled exactly up front; pairs
    // with an unbounded parameter are invisible to the affine system.
    const ProjPoint pinf = point_at_infinity(c);
    const PointMultiplicity minf = multiplicity_at_point_exact(c, pinf);
    const std::array<ComplexBall, 3> pinf_image = point_image(pinf, prec);

    std::vector<std::optional<ProjPoint>> pts;
    std::vector<std::array<ComplexBall, 3>> imgs;
    for (const EliminantRoot& r : roots) {
        pts.push_back(r.exact_point);
        imgs.push_back(r.image);
    }
    const std::vector<std::vector<std::size_t>> clusters =
            cluster_items(pts, imgs, opts.cluster_separation_factor, "census_self");

    // Separate the clusters sitting at the infinity point from the finite
    // ones; the former are rebuilt from the exact data there.
    std::vector<std::size_t> inf_members;
    std::vector<std::vector<std::size_t>> finite_clusters;
    for (const std::vector<std::size_t>& cl : clusters) {
        std::size_t rep = cl[0];
        for (std::size_t idx : cl)
            if (roots[idx].exact_point) {
                rep = idx;
                break;
            }
        Sep s = status_of(roots[rep].exact_point, roots[rep].image, pinf, pinf_image,
                          opts.cluster_separation_factor);
        if (s == Sep::unclear)
            throw PrecisionExhausted(
                    "census_self: a cluster cannot be separated from the infinity point");
        if (s == Sep::same) {
            if (minf.multiplicity < 2)
                throw PrecisionExhausted(
                        "census_self: a cluster collides with a smooth infinity point");
            for (std::size_t idx : cl) inf_members.push_back(idx);
        } else {
            finite_clusters.push_back(cl);
        }
    }

    if (minf.multiplicity >= 2) {
        std::vector<BranchParam> fin = branches_of_parameter_poly(minf.parameter_poly, opts);
        // Every folded eliminant root must be one of the exact finite
        // parameters through the infinity point.
        for (std::size_t idx : inf_members) {
            if (roots[idx].exact) {
                if (!minf.parameter_poly.eval(*roots[idx].exact).is_zero())
                    throw PrecisionExhausted(
                            "census_self: a cluster at infinity misses the parameter polynomial");
                continue;
            }
            bool matched = false;
            for (const BranchParam& b : fin)
                if (balls_may_meet(roots[idx].ball, branch_ball(b, prec))) {
                    matched = true;
                    break;
                }
            if (!matched)
                throw PrecisionExhausted(
                        "census_self: a cluster at infinity misses the parameter polynomial");
        }
        if (minf.at_infinity > 0) {
            BranchParam b;
            b.component = 0;
            b.at_infinity = true;
            b.multiplicity = minf.at_infinity;
            fin.push_back(std::move(b));
        }
        const bool ordinary = ordinary_check(comps, fin, prec);
        out.entries.push_back(
                CensusEntry{pinf, minf.multiplicity, ordinary, std::move(fin), Certification::exact});
    }

    for (const std::vector<std::size_t>& cl : finite_clusters) {
        bool all_exact = true;
        for (std::size_t idx : cl) all_exact = all_exact && roots[idx].exact.has_value();

        if (all_exact) {
            const ProjPoint P = *roots[cl[0]].exact_point;
            const PointMultiplicity pm = multiplicity_at_point_exact(c, P);
            if (pm.at_infinity != 0)
                throw invariant_error("census_self: finite cluster at the infinity point");
            if (cl.size() == 1 && pm.multiplicity <= 1) continue;
            std::vector<BranchParam> br;
            long total = 0;
            for (std::size_t idx : cl) {
                const QOmega& t0 = *roots[idx].exact;
                if (!pm.parameter_poly.eval(t0).is_zero())
                    throw invariant_error("census_self: cluster member misses its own point");
                BranchParam b;
                b.component = 0;
                b.exact = t0;
                b.multiplicity = branch_multiplicity(c, t0);
                total += b.multiplicity;
                br.push_back(std::move(b));
            }
            if (total != pm.multiplicity)
                throw PrecisionExhausted("census_self: branches at " + P.to_string() +
                                         " were not all isolated");
            const bool ordinary = ordinary_check(comps, br, prec);
            out.entries.push_back(
                    CensusEntry{P, pm.multiplicity, ordinary, std::move(br), Certification::exact});
            continue;
        }

        // Mixed or numeric cluster: try to pin the image point exactly even
        // when the parameters live outside the ground field.
        std::optional<ProjPoint> Pc;
        for (std::size_t idx : cl)
            if (roots[idx].exact_point) {
                Pc = roots[idx].exact_point;
                break;
            }
        if (!Pc) {
            const std::array<ComplexBall, 3>& img = roots[cl[0]].image;
            int pivot = -1;
            MpfrVal best(ComplexBall::radius_precision);
            for (int i = 0; i < 3; ++i) {
                if (!img[i].certainly_nonzero()) continue;
                MpfrVal lo = img[i].abs_lower();
                if (pivot < 0 || compare(lo, best) > 0) {
                    pivot = i;
                    best = lo;
                }
            }
            if (pivot >= 0) {
                std::array<QOmega, 3> q;
                bool ok = true;
                for (int i = 0; i < 3 && ok; ++i) {
                    if (i == pivot) {
                        q[i] = QOmega::one();
                        continue;
                    }
                    std::optional<QOmega> g = guess_in_ball(img[i] / img[pivot]);
                    if (g)
                        q[i] = *g;
                    else
                        ok = false;
                }
                if (ok) Pc = ProjPoint::exact(q[0], q[1], q[2]);
            }
        }

        bool done = false;
        if (Pc && *Pc == pinf)
            throw PrecisionExhausted("census_self: a finite cluster collides with the infinity point");
        if (Pc) {
            // The guess is only accepted with a full certificate: the point
            // lies on the curve, its parameter polynomial divides the
            // squarefree eliminant, and its roots match the cluster.
            std::optional<PointMultiplicity> pm;
            try {
                pm = multiplicity_at_point_exact(c, *Pc);
            } catch (const PointNotOnCurve&) {
            }
            if (pm && pm->at_infinity != 0)
                throw invariant_error("census_self: finite cluster at the infinity point");
            if (pm && pm->multiplicity == 1 && cl.size() == 1) {
                continue; // a simple point; the lone eliminant root is spurious
            }
            if (pm && pm->multiplicity >= 2) {
                const UPoly<QOmega> sp = squarefree_part(pm->parameter_poly);
                if (sq.divrem(sp).second.is_zero()) {
                    std::vector<BranchParam> fb = branches_of_parameter_poly(pm->parameter_poly, opts);
                    if (fb.size() != cl.size())
                        throw PrecisionExhausted("census_self: branches at " + Pc->to_string() +
                                                 " were not all isolated");
                    std::vector<bool> used(cl.size(), false);
                    for (const BranchParam& b : fb) {
                        long hit = -1;
                        for (std::size_t m = 0; m < cl.size(); ++m) {
                            const EliminantRoot& er = roots[cl[m]];
                            bool meets;
                            if (b.exact && er.exact)
                                meets = *b.exact == *er.exact;
                            else if (b.exact)
                                meets = er.ball.contains(*b.exact);
                            else if (er.exact)
                                meets = b.ball->contains(*er.exact);
                            else
                                meets = balls_may_meet(*b.ball, er.ball);
                            if (!meets) continue;
                            if (hit >= 0 || used[m])
                                throw PrecisionExhausted("census_self: branch parameters at " +
                                                         Pc->to_string() + " overlap ambiguously");
                            hit = static_cast<long>(m);
                        }
                        if (hit < 0)
                            throw PrecisionExhausted("census_self: branch parameters at " +
                                                     Pc->to_string() + " do not match the cluster");
                        used[static_cast<std::size_t>(hit)] = true;
                    }
                    const bool ordinary = ordinary_check(comps, fb, prec);
                    out.entries.push_back(CensusEntry{*Pc, pm->multiplicity, ordinary, std::move(fb),
                                                      Certification::exact});
                    done = true;
                }
            }
        }
        if (done) continue;

        // Honest numeric entry: every member must be certified immersed, so
        // the cluster size is the multiplicity.
        std::vector<BranchParam> br;
        long total = 0;
        for (std::size_t idx : cl) {
            BranchParam b;
            b.component = 0;
            if (roots[idx].exact) {
                b.exact = roots[idx].exact;
                b.multiplicity = branch_multiplicity(c, *roots[idx].exact);
            } else {
                ball_tangent(c, roots[idx].ball); // certifies immersion
                b.ball = roots[idx].ball;
                b.multiplicity = 1;
            }
            total += b.multiplicity;
            br.push_back(std::move(b));
        }
        if (cl.size() == 1 && total <= 1) continue; // an immersed stray root
        const ProjPoint P = ProjPoint::numeric(roots[cl[0]].image[0], roots[cl[0]].image[1],
                                               roots[cl[0]].image[2]);
        const bool ordinary = ordinary_check(comps, br, prec);
        out.entries.push_back(CensusEntry{P, total, ordinary, std::move(br), Certification::numeric});
    }

    finalize(out);
    out.bezout_total = 0;
    return out;
}

SingularCensus census_pair(const ParamCurve& c1, const ParamCurve& c2, const CensusOptions& opts) {
    check_options(opts);
    const mpfr_prec_t prec = opts.precision_bits;
    const long d1 = c1.degree(), d2 = c2.degree();

    const PlaneCurve f1 = implicitize(c1);
    if (f1.degree() != d1)
        throw ImproperParametrization("census_pair: " + curve_name(c1) +
                                      " traces its image more than once");
    const PlaneCurve f2 = implicitize(c2);
    if (f2.degree() != d2)
        throw ImproperParametrization("census_pair: " + curve_name(c2) +
                                      " traces its image more than once");

    const UPoly<QOmega> g1 = pullback(f2.poly(), c1);
    if (g1.is_zero())
        throw SharedComponent("census_pair: " + curve_name(c1) + " and " + curve_name(c2) +
                              " share a component");
    const UPoly<QOmega> g2 = pullback(f1.poly(), c2);
    if (g2.is_zero()) throw invariant_error("census_pair: one sided shared component");

    // Intersection parameters on each side, with the intersection exponents
    // from the squarefree decomposition; the degree drop of the pullback is
    // the share sitting at t = infinity.
    struct PairItem {
        std::size_t side;
        bool at_inf;
        std::optional<QOmega> exact;
        std::optional<ComplexBall> ball;
        long e;
        std::optional<ProjPoint> exact_point;
        std::array<ComplexBall, 3> image;
    };
    std::vector<PairItem> items;
    const std::array<const ParamCurve*, 2> curves = {&c1, &c2};
    const std::array<const UPoly<QOmega>*, 2> pulls = {&g1, &g2};
    for (std::size_t side = 0; side < 2; ++side) {
        const ParamCurve& c = *curves[side];
        const UPoly<QOmega>& g = *pulls[side];
        if (g.degree() > 0) {
            std::vector<UPoly<QOmega>> yun = yun_decomposition(g);
            for (std::size_t k = 0; k < yun.size(); ++k) {
                if (yun[k].degree() <= 0) continue;
                for (IsolatedRoot& r : exact_or_ball_roots(yun[k], opts)) {
                    if (r.exact) {
                        const ProjPoint p = param_eval(c, *r.exact);
                        items.push_back({side, false, r.exact, std::nullopt,
                                         static_cast<long>(k) + 1, p, point_image(p, prec)});
                    } else {
                        items.push_back({side, false, std::nullopt, r.ball,
                                         static_cast<long>(k) + 1, std::nullopt,
                                         image_balls(c, r.ball)});
                    }
                }
            }
        }
        const long einf = d1 * d2 - std::max(g.degree(), 0L);
        if (einf > 0) {
            const ProjPoint p = point_at_infinity(c);
            items.push_back({side, true, std::nullopt, std::nullopt, einf, p, point_image(p, prec)});
        }
    }

    std::vector<std::optional<ProjPoint>> pts;
    std::vector<std::array<ComplexBall, 3>> imgs;
    for (const PairItem& it : items) {
        pts.push_back(it.exact_point);
        imgs.push_back(it.image);
    }
    const std::vector<std::vector<std::size_t>> clusters =
            cluster_items(pts, imgs, opts.cluster_separation_factor, "census_pair");

    SingularCensus out;
    for (const std::vector<std::size_t>& cl : clusters) {
        long e_side[2] = {0, 0};
        bool all_exact = true;
        std::optional<ProjPoint> P;
        for (std::size_t idx : cl) {
            const PairItem& it = items[idx];
            e_side[it.side] += it.e;
            if (it.exact_point && !P) P = it.exact_point;
            if (!it.exact_point) all_exact = false;
        }
        if (e_side[0] != e_side[1])
            throw PrecisionExhausted(
                    "census_pair: intersection multiplicities do not balance at the working precision");
        std::vector<BranchParam> br;
        for (std::size_t idx : cl) {
            const PairItem& it = items[idx];
            BranchParam b;
            b.component = it.side;
            if (it.at_inf) {
                b.at_infinity = true;
                b.multiplicity = branch_multiplicity(reversed_curve(*curves[it.side]), QOmega());
            } else if (it.exact) {
                b.exact = it.exact;
                b.multiplicity = branch_multiplicity(*curves[it.side], *it.exact);
            } else {
                ball_tangent(*curves[it.side], *it.ball); // certifies immersion
                b.ball = it.ball;
                b.multiplicity = 1;
            }
            br.push_back(std::move(b));
        }
        const std::vector<ParamCurve> comps{c1, c2};
        const bool ordinary = ordinary_check(comps, br, prec);
        const ProjPoint point = P ? *P
                                  : ProjPoint::numeric(items[cl[0]].image[0], items[cl[0]].image[1],
                                                       items[cl[0]].image[2]);
        out.entries.push_back(CensusEntry{point, e_side[0], ordinary, std::move(br),
                                          all_exact ? Certification::exact : Certification::numeric});
    }

    finalize(out);
    out.bezout_total = d1 * d2;
    return out;
}

SingularCensus full_census(const std::vector<ParamCurve>& components, const CensusOptions& opts) {
    check_options(opts);
    const mpfr_prec_t prec = opts.precision_bits;
    SingularCensus out;
    if (components.empty()) return out;

    // Sub censuses with branch components renumbered into the family.
    std::vector<CensusEntry> subs;
    long bezout = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        SingularCensus cs = census_self(components[i], opts);
        for (CensusEntry& e : cs.entries) {
            for (BranchParam& b : e.branches) b.component = i;
            subs.push_back(std::move(e));
        }
    }
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = i + 1; j < components.size(); ++j) {
            SingularCensus cs = census_pair(components[i], components[j], opts);
            bezout += cs.bezout_total;
            for (CensusEntry& e : cs.entries) {
                for (BranchParam& b : e.branches) b.component = b.component == 0 ? i : j;
                subs.push_back(std::move(e));
            }
        }

    std::vector<std::optional<ProjPoint>> pts;
    std::vector<std::array<ComplexBall, 3>> imgs;
    for (const CensusEntry& e : subs) {
        pts.push_back(e.point.is_exact() ? std::optional<ProjPoint>(e.point) : std::nullopt);
        imgs.push_back(point_image(e.point, prec));
    }
    const std::vector<std::vector<std::size_t>> groups =
            cluster_items(pts, imgs, opts.cluster_separation_factor, "full_census");

    for (const std::vector<std::size_t>& gr : groups) {
        if (gr.size() == 1) {
            out.entries.push_back(subs[gr[0]]);
            continue;
        }
        // Merge the branch lists, identifying the same branch reported by
        // several sub censuses.
        std::vector<BranchParam> merged;
        bool all_exact = true;
        std::optional<ProjPoint> P;
        for (std::size_t idx : gr) {
            const CensusEntry& e = subs[idx];
            if (e.certification != Certification::exact) all_exact = false;
            if (e.point.is_exact() && !P) P = e.point;
            for (const BranchParam& b : e.branches) {
                BranchParam* found = nullptr;
                for (BranchParam& m : merged) {
                    if (m.component != b.component || m.at_infinity != b.at_infinity) continue;
                    if (b.at_infinity) {
                        found = &m;
                        break;
                    }
                    bool same;
                    if (b.exact && m.exact)
                        same = *b.exact == *m.exact;
                    else if (b.exact)
                        same = m.ball->contains(*b.exact);
                    else if (m.exact)
                        same = b.ball->contains(*m.exact);
                    else
                        same = balls_may_meet(*b.ball, *m.ball);
                    if (same) {
                        found = &m;
                        break;
                    }
                }
                if (!found) {
                    merged.push_back(b);
                } else {
                    if (b.exact && !found->exact) {
                        found->exact = b.exact;
                        found->ball.reset();
                    }
                    found->multiplicity = std::max(found->multiplicity, b.multiplicity);
                }
            }
        }
        long total = 0;
        for (const BranchParam& b : merged) total += b.multiplicity;
        if (P) {
            // The branch identification is checked against the exact total.
            long expected = 0;
            for (const ParamCurve& c : components) {
                try {
                    expected += multiplicity_at_point_exact(c, *P).multiplicity;
                } catch (const PointNotOnCurve&) {
                }
            }
            if (expected != total)
                throw PrecisionExhausted("full_census: branch identification at " + P->to_string() +
                                         " is inconsistent");
        }
        const bool ordinary = ordinary_check(components, merged, prec);
        const ProjPoint point = P ? *P : subs[gr[0]].point;
        out.entries.push_back(CensusEntry{point, total, ordinary, std::move(merged),
                                          all_exact && P ? Certification::exact
                                                         : Certification::numeric});
    }

    finalize(out);
    out.bezout_total = bezout;
    return out;
}

long delta_total(const SingularCensus& census) {
    long sum = 0;
    for (const CensusEntry& e : census.entries)
        sum += e.multiplicity * (e.multiplicity - 1) / 2;
    return sum;
}

bool delta_check(const SingularCensus& census, const std::vector<long>& degrees) {
    long expected = 0;
    for (long d : degrees) expected += (d - 1) * (d - 2) / 2;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        for (std::size_t j = i + 1; j < degrees.size(); ++j)
            expected += degrees[i] * degrees[j];
    return delta_total(census) == expected;
}

namespace {

nlohmann::json ball_json(const ComplexBall& b) {
    return {{"re", b.mid_re().to_string()}, {"im", b.mid_im().to_string()},
            {"radius", b.radius().to_string()}};
}

nlohmann::json point_json(const ProjPoint& p) {
    nlohmann::json j;
    if (p.is_exact()) {
        const std::array<QOmega, 3> q = p.exact_coords();
        j["exact"] = {to_string(q[0]), to_string(q[1]), to_string(q[2])};
    } else {
        const std::array<ComplexBall, 3> b = p.ball_coords();
        j["ball"] = {ball_json(b[0]), ball_json(b[1]), ball_json(b[2])};
    }
    return j;
}

} // namespace

std::string census_to_json(const SingularCensus& census) {
    nlohmann::json root;
    root["entries"] = nlohmann::json::array();
    for (const CensusEntry& e : census.entries) {
        nlohmann::json je;
        je["point"] = point_json(e.point);
        je["multiplicity"] = e.multiplicity;
        je["ordinary"] = e.ordinary;
        je["certification"] = e.certification == Certification::exact ? "exact" : "numeric";
        je["branches"] = nlohmann::json::array();
        for (const BranchParam& b : e.branches) {
            nlohmann::json jb;
            jb["component"] = b.component;
            jb["at_infinity"] = b.at_infinity;
            jb["multiplicity"] = b.multiplicity;
            if (b.exact)
                jb["parameter"] = to_string(*b.exact);
            else if (b.ball)
                jb["parameter"] = ball_json(*b.ball);
            je["branches"].push_back(std::move(jb));
        }
        root["entries"].push_back(std::move(je));
    }
    root["ordered_pairs"] = census.ordered_pairs;
    root["bezout_total"] = census.bezout_total;
    root["delta"] = delta_total(census);
    return root.dump();
}

} // namespace tpt

/* Rational plane curves over Q(w), in two presentations: parametrized
 * t -> (x(t) : y(t) : z(t)) and implicit F(x,y,z) = 0.  Operations cover
 * evaluation, incidence, exact implicitization, tangents, local intersection
 * multiplicities, and decomposition into root-of-unity twisted components. */
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpt/ball.hpp"
#include "tpt/mpoly.hpp"

namespace tpt {

/// All three coordinates vanish at the requested parameter value.
class BasePoint : public std::runtime_error {
public:
    explicit BasePoint(const std::string& what) : std::runtime_error(what) {}
};

/// The image of the parametrization is a single point, not a curve.
class DegenerateImage : public std::runtime_error {
public:
    explicit DegenerateImage(const std::string& what) : std::runtime_error(what) {}
};

/// Every derivative stays proportional to the point; no branch direction.
class NotImmersed : public std::runtime_error {
public:
    explicit NotImmersed(const std::string& what) : std::runtime_error(what) {}
};

/// The form vanishes identically along the curve.
class IdenticallyZero : public std::runtime_error {
public:
    explicit IdenticallyZero(const std::string& what) : std::runtime_error(what) {}
};

/// The input does not have the t * (n-th power) coordinate shape.
class ShapeMismatch : public std::runtime_error {
public:
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Projective point, either exact over Q(w) (normalized so the last nonzero
/// coordinate is one) or numeric with certified ball coordinates.
class ProjPoint {
public:
    static ProjPoint exact(const QOmega& x, const QOmega& y, const QOmega& z);
    static ProjPoint numeric(ComplexBall x, ComplexBall y, ComplexBall z);

    bool is_exact() const { return exact_; }
    const std::array<QOmega, 3>& exact_coords() const;
    const std::array<ComplexBall, 3>& ball_coords() const;

    /// Equality of exact points (after the shared normalization).
    bool operator==(const ProjPoint& o) const;
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    ProjPoint() = default;
    bool exact_ = false;
    std::array<QOmega, 3> coords_{};
    std::optional<std::array<ComplexBall, 3>> balls_;
};

/// t -> (x(t) : y(t) : z(t)).  The constructor divides out the gcd of the
/// three coordinates, so stored curves are always primitive; a parametrized
/// single point is rejected.
class ParamCurve {
public:
    ParamCurve(UPoly<QOmega> x, UPoly<QOmega> y, UPoly<QOmega> z, std::string label = "");

    const UPoly<QOmega>& x() const { return x_; }
    const UPoly<QOmega>& y() const { return y_; }
    const UPoly<QOmega>& z() const { return z_; }
    const std::string& label() const { return label_; }

    /// max deg(x,y,z): the degree of the parametrization map.
    long degree() const;

private:
    UPoly<QOmega> x_, y_, z_;
    std::string label_;
};

/// F(x,y,z) = 0 with F nonzero and homogeneous in the variables x, y, z.
class PlaneCurve {
public:
    explicit PlaneCurve(MPoly<QOmega> f, std::string label = "");

    const MPoly<QOmega>& poly() const { return f_; }
    long degree() const { return degree_; }
    const std::string& label() const { return label_; }

private:
    MPoly<QOmega> f_;
    long degree_ = 0;
    std::string label_;
};

/// The line a*x + b*y + c*z = 0.
PlaneCurve line_curve(const QOmega& a, const QOmega& b, const QOmega& c);

ProjPoint param_eval(const ParamCurve& c, const QOmega& t);
ProjPoint param_eval(const ParamCurve& c, const ComplexBall& t);

/// F(x(t), y(t), z(t)) as a polynomial in t.
UPoly<QOmega> pullback(const MPoly<QOmega>& f, const ParamCurve& c);

/// True iff the pullback of F along C vanishes identically.
bool lies_on(const PlaneCurve& f, const ParamCurve& c);

/// The squarefree equation of the image curve, normalized so the coefficient
/// of the lexicographically largest monomial is one.  The resultant route is
/// certified by a degree check, a squarefreeness check and lies_on; improper
/// parametrizations fall back to solving for the minimal-degree equation.
PlaneCurve implicitize(const ParamCurve& c);

/// Coefficients (a,b,c) of the tangent line at t0, normalized like an exact
/// projective point.  Follows the first derivative not proportional to the
/// point, so cusps get their honest limit tangent.
std::array<QOmega, 3> tangent_line(const ParamCurve& c, const QOmega& t0);

/// True iff f'(t0) is not proportional to f(t0) (local immersion).
bool is_immersed_at(const ParamCurve& c, const QOmega& t0);

/// Vanishing order of the pullback of F at t = t0.
long intersection_multiplicity_param(const PlaneCurve& f, const ParamCurve& c, const QOmega& t0);

/// For input of the shape t -> (t X(t)^n : t Y(t)^n : Z(t)^n), the n curves
/// t -> (z^k t X(t^n) : t Y(t^n) : Z(t^n)) with z = e^(2 pi i / n); they are
/// the components of the image of t -> (original) under t -> t^n.  Requires
/// the n-th roots of unity to lie in Q(w), so n must divide 6.
std::vector<ParamCurve> root_of_unity_components(const UPoly<QOmega>& x, const UPoly<QOmega>& y,
                                                 const UPoly<QOmega>& z, long n);

/// Coordinate-wise rescaling (sx*x : sy*y : sz*z); scales must be nonzero.
ParamCurve twist_component(const ParamCurve& c, const std::array<QOmega, 3>& scale);

using Mat3 = std::array<std::array<QOmega, 3>, 3>;

QOmega det3(const Mat3& m);

/// The image curve under the projective transformation v -> M v.
ParamCurve apply_projective_linear(const ParamCurve& c, const Mat3& m);
/// The implicit curve {F(M^{-1} v) = 0}, computed with the exact adjugate.
PlaneCurve apply_projective_linear(const PlaneCurve& f, const Mat3& m);

/// Curve JSON: {"kind":"param"|"implicit", "label":..., polynomials}.
std::string param_curve_to_json(const ParamCurve& c);
ParamCurve param_curve_from_json(const std::string& text);
std::string plane_curve_to_json(const PlaneCurve& f);
PlaneCurve plane_curve_from_json(const std::string& text);

} // namespace tpt

/* Census of singular points of parametrized plane curves.  Self-intersection
 * parameters come from the double point system (the minors of f(s), f(t)
 * divided by s - t), eliminated down to one variable and isolated as
 * certified balls; intersections between two curves come from pulling the
 * implicit equation of one back along the other.  Every numeric step either
 * certifies its answer or refuses with PrecisionExhausted; points whose
 * parameters are recognized exactly are verified symbolically. */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tpt/ball.hpp"
#include "tpt/curve.hpp"
#include "tpt/mpoly.hpp"
#include "tpt/upoly.hpp"

namespace tpt {

/// The parametrization traces its image more than once.
class ImproperParametrization : public std::runtime_error {
public:
    explicit ImproperParametrization(const std::string& what) : std::runtime_error(what) {}
};

/// Two components have the same image curve, so their intersection is not
/// a finite set of points.
class SharedComponent : public std::runtime_error {
public:
    explicit SharedComponent(const std::string& what) : std::runtime_error(what) {}
};

/// No parameter (t = infinity included) maps to the requested point.
class PointNotOnCurve : public std::runtime_error {
public:
    explicit PointNotOnCurve(const std::string& what) : std::runtime_error(what) {}
};

/// The three 2x2 minors of the rows f(s), f(t), each divided exactly by
/// s - t, as polynomials in the variables s and t.  Common zeros with
/// s != t are exactly the ordered parameter pairs mapping to the same image
/// point; zeros on the diagonal are the parameters where the map is not
/// immersed.  Each g_i is symmetric under swapping s and t.
struct DoublePointSystem {
    MPoly<QOmega> g1;  // from the (x, y) rows
    MPoly<QOmega> g2;  // from the (x, z) rows
    MPoly<QOmega> g3;  // from the (y, z) rows
};

DoublePointSystem double_point_system(const ParamCurve& c);

struct CensusOptions {
    mpfr_prec_t precision_bits = 192;
    int max_newton_steps = 16;
    /// Distinct image clusters must be separated by at least this factor
    /// times the largest ball radius involved; anything closer that cannot
    /// be identified exactly is a PrecisionExhausted refusal, never a guess.
    long cluster_separation_factor = 65536;
};

/// One local branch through a census point: which component it lies on and
/// its parameter, exactly when recognized, as a certified ball otherwise,
/// or the place t = infinity.  multiplicity is the local multiplicity of
/// the branch at the point (1 for an immersed branch).
struct BranchParam {
    std::size_t component = 0;
    bool at_infinity = false;
    std::optional<QOmega> exact;
    std::optional<ComplexBall> ball;
    long multiplicity = 1;
};

enum class Certification { exact, numeric };

struct CensusEntry {
    ProjPoint point;
    /// Multiplicity of the point on the curve (self and merged censuses);
    /// for a pair census, the local intersection number of the two curves.
    long multiplicity = 0;
    /// All branches immersed with pairwise distinct tangent lines.
    bool ordinary = false;
    std::vector<BranchParam> branches;
    Certification certification = Certification::numeric;
};

/// Entries are sorted canonically, so equal inputs give identical output.
struct SingularCensus {
    std::vector<CensusEntry> entries;
    /// Ordered parameter pairs (s, t), s != t, mapping to the same point,
    /// counted with branch multiplicities: twice the delta invariant.
    long ordered_pairs = 0;
    /// Bezout total accounted for: deg(C1) * deg(C2) for a pair census, the
    /// sum over all pairs for a full census, zero for a self census.
    long bezout_total = 0;
};

/// All multiple points of a single properly parametrized curve.
SingularCensus census_self(const ParamCurve& c, const CensusOptions& opts = {});

/// All common points of two curves with distinct images, with local
/// intersection numbers summing to the Bezout total (checked).
SingularCensus census_pair(const ParamCurve& a, const ParamCurve& b,
                           const CensusOptions& opts = {});

/// Merged census of a list of pairwise distinct components: per-component
/// multiple points and pairwise common points, with branches through a
/// shared point combined.  Entry multiplicity is the total branch count
/// (with branch multiplicities) of the reducible curve at the point.
SingularCensus full_census(const std::vector<ParamCurve>& components,
                           const CensusOptions& opts = {});

struct PointMultiplicity {
    /// Total multiplicity: finite branches plus the branch at t = infinity.
    long multiplicity = 0;
    /// Monic; its roots with multiplicity are the finite parameters at p.
    UPoly<QOmega> parameter_poly;
    long at_infinity = 0;
};

/// Exact multiplicity of the exact point p on c, from the gcd of the cross
/// product coordinates of f(t) and p.  Throws PointNotOnCurve when no
/// parameter maps to p and invariant_error when p is not exact.
PointMultiplicity multiplicity_at_point_exact(const ParamCurve& c, const ProjPoint& p);

/// True iff every branch is immersed and the tangent lines are pairwise
/// distinct.  Exact parameters are decided exactly; ball parameters by
/// certified separation, refusing with PrecisionExhausted when the balls
/// cannot decide.
bool ordinary_check(const std::vector<ParamCurve>& components,
                    const std::vector<BranchParam>& branches,
                    mpfr_prec_t precision_bits = 192);

/// Sum of m(m-1)/2 over the census entries.
long delta_total(const SingularCensus& census);

/// For rational components of the given degrees: the census delta total
/// must equal sum (d_i - 1)(d_i - 2)/2 + sum_{i<j} d_i d_j.
bool delta_check(const SingularCensus& census, const std::vector<long>& degrees);

std::string census_to_json(const SingularCensus& census);

} // namespace tpt

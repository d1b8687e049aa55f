#pragma once
/* Certified isolation of the complex roots of a squarefree polynomial over
 * Q(w).  Candidates come from Aberth-Ehrlich simultaneous iteration in plain
 * floating point; each candidate is then wrapped in an inclusion disk of
 * radius n*|p(z)/p'(z)| whose bounds are computed in ball arithmetic, so a
 * returned answer is a proof.  Disks that cannot be made pairwise disjoint
 * at the requested precision cause a PrecisionExhausted refusal. */
#include <vector>

#include "tpt/ball.hpp"
#include "tpt/errors.hpp"
#include "tpt/upoly.hpp"

namespace tpt {

struct RootIsolationOptions {
    mpfr_prec_t precision_bits = 192;
    int max_newton_steps = 16;
};

/// All deg(p) roots of a squarefree p, as pairwise disjoint certified balls
/// sorted by midpoint (real part, then imaginary part).  Each ball contains
/// exactly one root.  Throws invariant_error on zero/non-squarefree input
/// and PrecisionExhausted when certification fails at this precision.
std::vector<ComplexBall> isolate_roots(const UPoly<QOmega>& p,
                                       const RootIsolationOptions& opts = {});

} // namespace tpt

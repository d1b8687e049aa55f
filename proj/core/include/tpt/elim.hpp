/* Resultant-based elimination of one variable from a pair of polynomials in
 * two variables.  The workhorse evaluates at integer nodes and interpolates;
 * a direct Sylvester-determinant route over polynomial entries serves as an
 * independent cross-check. */
#pragma once

#include <string>

#include "tpt/mpoly.hpp"

namespace tpt {

/// Res_elim(P, Q) as a univariate polynomial in `keep`.  Nodes where either
/// leading coefficient in `elim` vanishes are skipped, since specialization
/// commutes with the resultant only when the degrees do not drop.  P and Q
/// must be nonzero and involve no variables besides elim and keep.
UPoly<QOmega> bivariate_resultant(const MPoly<QOmega>& P, const MPoly<QOmega>& Q,
                                  const std::string& elim, const std::string& keep);

/// The same resultant via fraction-free elimination of the Sylvester matrix
/// with entries in Q(w)[keep].
UPoly<QOmega> bivariate_resultant_direct(const MPoly<QOmega>& P, const MPoly<QOmega>& Q,
                                         const std::string& elim, const std::string& keep);

} // namespace tpt

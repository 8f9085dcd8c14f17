#pragma once

#include "cpmarg/channels.hpp"

namespace cpmarg {

/// Result of conjugating a family by local unitaries so both marginals are
/// diagonal: A_i = v K_i u^dagger. The chosen u and v are kept so the
/// transformation can be replayed (they are not unique on degenerate eigenspaces).
struct CanonicalizationRecord {
  KrausFamily family;
  ComplexMatrix u;  // on the input space
  ComplexMatrix v;  // on the output space
  RealVector d1_diag;
  RealVector d2_diag;
};

/// Eigendecomposes sum K^dagger K and sum K K^dagger; the new family has
/// marginals diag(d1_diag) and diag(d2_diag), eigenvalues nondecreasing.
CanonicalizationRecord diagonalize_marginals(const KrausFamily& family);

/// Extremality verdicts of F and adjoint(F) agree and the marginals swap up to transpose.
bool adjoint_duality_check(const KrausFamily& family);

/// Compresses every operator onto the supports of the two marginals
/// (eigenvalues > 1e-12). Families whose marginals are already invertible are
/// returned unchanged. Throws std::invalid_argument when both marginals vanish.
KrausFamily restrict_to_support(const KrausFamily& family);

}  // namespace cpmarg

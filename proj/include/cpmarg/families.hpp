#pragma once

#include <array>

#include "cpmarg/channels.hpp"

namespace cpmarg {

/// Cyclic shift e_k -> e_{k+1 mod (d+1)} on the first d+1 coordinates of a
/// (d+m)-dimensional space, zero on the rest.
struct ShiftMatrix {
  int d = 0;
  int m = 0;
  ComplexMatrix matrix;
};

ShiftMatrix shift_matrix(int d, int m);

/// The (d, d+m) extremal family: d+m operators of shape (d+m) x d. For
/// i = 1..d+1 operator i sends e_k to e_{mod(k+i-2, d+1)+1}; for i = d+2..d+m it
/// is |e_i><J|. All are scaled by 1/sqrt(d(d+m)); the rational form keeps the
/// integer operators with weight 1/(d(d+m)).
KrausFamily paper_family(int d, int m);

/// Exact target marginals (Z, I/(d+m)) with Z = p I/d + (1-p) J/d, p = (d+1)/(d+m),
/// evaluated directly from the formula.
ExactMarginalPair paper_family_targets(int d, int m);

/// The closed-form expression for the Gram of the unscaled (d, d+m) family,
/// assembled term by term. Used only as a cross-check.
ComplexMatrix closed_form_gram(int d, int m);

/// Closed form of the first-factor partial transpose of choi(paper_family(d, m)):
/// (B^dagger B + J_d (x) (0 + I_{m-1})) / (d(d+m)) with B = [S, S^2, ..., S^d].
ComplexMatrix closed_form_choi_pt(int d, int m);

/// Two Hermitian operators on C^2 with marginals (sigma, sigma), sigma = diag(1/3, 2/3).
KrausFamily sigma_rank2();
ComplexMatrix sigma_state();

/// Four operators on C^3 with marginals (I/3, I/3).
KrausFamily ohno_rank4();

/// d Hermitian operators on C^d with marginals (I/d, I/d). Requires d >= 3.
KrausFamily ohno_rank_d(int d);

/// sigma_rank2 (x) ohno_rank4: 8 operators on C^6 with marginals (D, D), D = sigma (x) I/3.
KrausFamily rank8_66();
ComplexMatrix rank8_marginal();

/// ohno_rank_d(k) (x) rank8_66: 8k operators on C^{6k}. Factor order is (k, 2, 3).
/// Requires k >= 3.
KrausFamily rank8k_6k(int k);

/// Factor order (k, 2, 3) used by rank8k_6k, and the permutation that maps a
/// matrix in that order to the (2, 3, k) order sigma (x) I/3 (x) I/k.
inline constexpr std::array<int, 3> kRank8kToSigmaFirst{1, 2, 0};

/// sigma (x) I_3/3 (x) I_k/k, the marginal written with sigma as the first factor.
ComplexMatrix rank8k_marginal_sigma_first(int k);

}  // namespace cpmarg

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cpmarg/channels.hpp"

namespace cpmarg {

/// Marginals that deviate from declared targets by more than this are flagged.
inline constexpr double kMarginalTol = 1e-9;

/// Numerical verdicts whose gap ratio falls below this are flagged as borderline.
inline constexpr double kBorderlineGap = 10.0;

/// Inner products of the blocks diag(K_i^dagger K_j, K_j K_i^dagger).
/// Rows and columns are indexed by i * r + j (0-based).
ComplexMatrix block_gram(const KrausFamily& family);

/// Columns are the vectorized blocks, so block_gram = A^dagger A.
ComplexMatrix gram_factor(const KrausFamily& family);

/// Rank of block_gram(family) from the squared singular values of its factor.
/// The threshold rule is that of numerical_rank on the r^2 x r^2 Gram.
RankResult numerical_gram_rank(const KrausFamily& family, std::optional<double> tol = std::nullopt);

/// Same Gram over the unscaled rational operators of the family. Its rank equals
/// the rank of block_gram(family).
std::optional<RationalMatrix> exact_block_gram(const KrausFamily& family);

struct ExtremalityCertificate {
  std::size_t r = 0;
  std::size_t gram_size = 0;
  RankResult gram_rank;
  bool extremal = false;
  bool borderline = false;
  bool has_targets = false;
  double marginal_residual = 0.0;
  bool marginals_valid = true;
  RankMode mode = RankMode::Numerical;

  /// Checks gram_size == r^2 and extremal == (rank == r^2).
  bool consistent() const;
};

struct ExtremalityOptions {
  std::optional<RankMode> mode;  // default: exact iff the family has a rational form
  std::optional<double> tol;
};

/// Full-rank test of the block Gram. When targets are given the marginal
/// residual is recorded, and a residual above kMarginalTol marks the
/// certificate's marginals invalid without changing the extremality verdict.
ExtremalityCertificate is_extremal(const KrausFamily& family,
                                   const std::optional<MarginalPair>& targets = std::nullopt,
                                   const ExtremalityOptions& options = {});

/// floor(sqrt(d1^2 + d2^2 - 1)) in integer arithmetic.
std::int64_t parthasarathy_bound(std::int64_t d1, std::int64_t d2);

/// d + m == parthasarathy_bound(d, d + m). Requires d >= 2, m >= 1.
bool bound_attained(std::int64_t d, std::int64_t m);

/// The inequality form 2m > d^2 - 2d - 2.
bool bound_attained_inequality(std::int64_t d, std::int64_t m);

}  // namespace cpmarg

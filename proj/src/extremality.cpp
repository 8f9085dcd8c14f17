#include "cpmarg/extremality.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpmarg {

namespace {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt of a negative number");
  std::int64_t lo = 0;
  std::int64_t hi = n < 2 ? n : std::min<std::int64_t>(n, 3037000499);  // sqrt(INT64_MAX)
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (mid <= n / mid) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

ComplexMatrix gram_factor(const KrausFamily& family) {
  const std::size_t r = family.size();
  const Eigen::Index in_sq = static_cast<Eigen::Index>(family.d_in()) * family.d_in();
  const Eigen::Index out_sq = static_cast<Eigen::Index>(family.d_out()) * family.d_out();

  // Column i*r + j holds vec(K_i^dagger K_j) stacked over vec(K_j K_i^dagger).
  ComplexMatrix blocks(in_sq + out_sq, static_cast<Eigen::Index>(r * r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const auto col = static_cast<Eigen::Index>(i * r + j);
      blocks.col(col).head(in_sq) = vec(family.op(i).adjoint() * family.op(j));
      blocks.col(col).tail(out_sq) = vec(family.op(j) * family.op(i).adjoint());
    }
  }
  return blocks;
}

ComplexMatrix block_gram(const KrausFamily& family) {
  const ComplexMatrix blocks = gram_factor(family);
  ComplexMatrix gram = blocks.adjoint() * blocks;
  return (gram + gram.adjoint()) / 2.0;
}

RankResult numerical_gram_rank(const KrausFamily& family, std::optional<double> tol) {
  const ComplexMatrix blocks = gram_factor(family);
  const Eigen::Index side = blocks.cols();
  RealVector sv = RealVector::Zero(side);
  Eigen::BDCSVD<ComplexMatrix> svd(blocks);
  sv.head(svd.singularValues().size()) = svd.singularValues().cwiseAbs2();
  return rank_from_singular_values(sv, side, side, tol);
}

std::optional<RationalMatrix> exact_block_gram(const KrausFamily& family) {
  const auto& exact = family.exact();
  if (!exact) return std::nullopt;
  const std::size_t r = exact->ops.size();
  const std::size_t in_sq = static_cast<std::size_t>(family.d_in()) * family.d_in();
  const std::size_t out_sq = static_cast<std::size_t>(family.d_out()) * family.d_out();

  std::vector<RationalMatrix> transposed;
  transposed.reserve(r);
  for (const auto& k : exact->ops) transposed.push_back(k.transpose());

  // Rows are block vectors here, so the Gram is blocks * blocks^T.
  RationalMatrix blocks(r * r, in_sq + out_sq);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const RationalMatrix left = transposed[i] * exact->ops[j];
      const RationalMatrix right = exact->ops[j] * transposed[i];
      const std::size_t row = i * r + j;
      for (std::size_t a = 0; a < left.rows(); ++a)
        for (std::size_t b = 0; b < left.cols(); ++b) blocks(row, b * left.rows() + a) = left(a, b);
      for (std::size_t a = 0; a < right.rows(); ++a)
        for (std::size_t b = 0; b < right.cols(); ++b)
          blocks(row, in_sq + b * right.rows() + a) = right(a, b);
    }
  }
  return blocks * blocks.transpose();
}

bool ExtremalityCertificate::consistent() const {
  return gram_size == r * r && extremal == (gram_rank.rank == gram_size);
}

ExtremalityCertificate is_extremal(const KrausFamily& family, const std::optional<MarginalPair>& targets,
                                   const ExtremalityOptions& options) {
  ExtremalityCertificate cert;
  cert.r = family.size();
  cert.gram_size = cert.r * cert.r;
  cert.mode = options.mode.value_or(family.exact() ? RankMode::Exact : RankMode::Numerical);

  if (cert.mode == RankMode::Exact) {
    const auto gram = exact_block_gram(family);
    if (!gram) throw NotRationalError("exact extremality test needs a rational family");
    cert.gram_rank = exact_rank(*gram);
  } else {
    cert.gram_rank = numerical_gram_rank(family, options.tol);
  }
  cert.extremal = cert.gram_rank.rank == cert.gram_size;
  cert.borderline = cert.gram_rank.gap_ratio() < kBorderlineGap;

  if (targets) {
    const MarginalPair got = marginals(family);
    cert.has_targets = true;
    cert.marginal_residual =
        std::max(max_abs_diff(got.rho1, targets->rho1), max_abs_diff(got.rho2, targets->rho2));
    cert.marginals_valid = cert.marginal_residual <= kMarginalTol;
  }
  return cert;
}

std::int64_t parthasarathy_bound(std::int64_t d1, std::int64_t d2) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("dimensions must be at least 1");
  return isqrt(d1 * d1 + d2 * d2 - 1);
}

bool bound_attained(std::int64_t d, std::int64_t m) {
  if (d < 2 || m < 1) throw std::invalid_argument("bound_attained needs d >= 2 and m >= 1");
  return d + m == parthasarathy_bound(d, d + m);
}

bool bound_attained_inequality(std::int64_t d, std::int64_t m) {
  return 2 * m > d * d - 2 * d - 2;
}

}  // namespace cpmarg

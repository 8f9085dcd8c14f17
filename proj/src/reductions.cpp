#include "cpmarg/reductions.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "cpmarg/extremality.hpp"

namespace cpmarg {

namespace {

constexpr double kSupportTol = 1e-12;

// Orthonormal basis (columns) of the eigenvectors with eigenvalue above tol.
ComplexMatrix support_basis(const ComplexMatrix& h) {
  const HermitianEigen eig = canonical_eigen(h);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > kSupportTol) picked.push_back(k);
  // Keep the original coordinate order when the basis is a coordinate selection.
  std::sort(picked.begin(), picked.end(), [&](Eigen::Index a, Eigen::Index b) {
    Eigen::Index ia = 0;
    Eigen::Index ib = 0;
    eig.vectors.col(a).cwiseAbs().maxCoeff(&ia);
    eig.vectors.col(b).cwiseAbs().maxCoeff(&ib);
    return ia < ib;
  });
  ComplexMatrix basis(h.rows(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(picked[k]);
  return basis;
}

bool is_coordinate_selection(const ComplexMatrix& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    int ones = 0;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      if (basis(i, j) == Complex(1.0, 0.0)) {
        ++ones;
      } else if (basis(i, j) != Complex(0.0, 0.0)) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

RationalMatrix select(const RationalMatrix& k, const ComplexMatrix& out_basis, const ComplexMatrix& in_basis) {
  auto index_of = [](const ComplexMatrix& basis, Eigen::Index col) {
    Eigen::Index row = 0;
    basis.col(col).cwiseAbs().maxCoeff(&row);
    return static_cast<std::size_t>(row);
  };
  RationalMatrix out(static_cast<std::size_t>(out_basis.cols()), static_cast<std::size_t>(in_basis.cols()));
  for (Eigen::Index a = 0; a < out_basis.cols(); ++a)
    for (Eigen::Index b = 0; b < in_basis.cols(); ++b)
      out(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = k(index_of(out_basis, a), index_of(in_basis, b));
  return out;
}

}  // namespace

CanonicalizationRecord diagonalize_marginals(const KrausFamily& family) {
  ComplexMatrix left = ComplexMatrix::Zero(family.d_in(), family.d_in());
  ComplexMatrix right = ComplexMatrix::Zero(family.d_out(), family.d_out());
  for (const auto& k : family.ops()) {
    left += k.adjoint() * k;
    right += k * k.adjoint();
  }
  const HermitianEigen in_eig = canonical_eigen(left);
  const HermitianEigen out_eig = canonical_eigen(right);
  ComplexMatrix u = in_eig.vectors.adjoint();
  ComplexMatrix v = out_eig.vectors.adjoint();

  std::vector<ComplexMatrix> ops;
  ops.reserve(family.size());
  for (const auto& k : family.ops()) ops.push_back(v * k * u.adjoint());
  return {KrausFamily(std::move(ops)), std::move(u), std::move(v), in_eig.values, out_eig.values};
}

bool adjoint_duality_check(const KrausFamily& family) {
  const KrausFamily dual = adjoint(family);
  const MarginalPair a = marginals(family);
  const MarginalPair b = marginals(dual);
  const bool swapped = max_abs_diff(b.rho2, a.rho1.transpose()) <= kEqualityTol &&
                       max_abs_diff(b.rho1, a.rho2.transpose()) <= kEqualityTol;
  return swapped && is_extremal(family).extremal == is_extremal(dual).extremal;
}

KrausFamily restrict_to_support(const KrausFamily& family) {
  ComplexMatrix left = ComplexMatrix::Zero(family.d_in(), family.d_in());
  ComplexMatrix right = ComplexMatrix::Zero(family.d_out(), family.d_out());
  for (const auto& k : family.ops()) {
    left += k.adjoint() * k;
    right += k * k.adjoint();
  }
  const ComplexMatrix in_basis = support_basis(left);
  const ComplexMatrix out_basis = support_basis(right);
  if (in_basis.cols() == 0 || out_basis.cols() == 0)
    throw std::invalid_argument("cannot restrict a family whose marginals vanish");
  if (in_basis.cols() == family.d_in() && out_basis.cols() == family.d_out()) return family;

  const auto& exact = family.exact();
  if (exact && is_coordinate_selection(in_basis) && is_coordinate_selection(out_basis)) {
    std::vector<RationalMatrix> ops;
    for (const auto& k : exact->ops) ops.push_back(select(k, out_basis, in_basis));
    return KrausFamily::from_exact(std::move(ops), exact->weight);
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(family.size());
  for (const auto& k : family.ops()) ops.push_back(out_basis.adjoint() * k * in_basis);
  return KrausFamily(std::move(ops));
}

}  // namespace cpmarg

#include "cpmarg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cpmarg {

namespace {

void require_bipartite(const ComplexMatrix& m, int d1, int d2) {
  if (d1 < 1 || d2 < 1) {
    throw DimensionError("subsystem dimensions must be positive");
  }
  const Eigen::Index side = static_cast<Eigen::Index>(d1) * d2;
  if (m.rows() != side || m.cols() != side) {
    throw DimensionError("matrix of shape " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " does not match d1*d2 = " +
                         std::to_string(side));
  }
}

}  // namespace

std::string to_string(RankMode mode) {
  return mode == RankMode::Exact ? "exact" : "numerical";
}

double RankResult::gap_ratio() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (mode == RankMode::Exact) return inf;
  double upper = inf;
  double lower = inf;
  if (rank > 0) upper = threshold > 0 ? smallest_kept / threshold : inf;
  if (largest_discarded > 0) lower = threshold / largest_discarded;
  return std::min(upper, lower);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexVector vec(const ComplexMatrix& m) {
  return m.reshaped();  // Eigen storage is column-major
}

ComplexMatrix unit_matrix(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, Subsystem traced) {
  require_bipartite(m, d1, d2);
  if (traced == Subsystem::Second) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int d1, int d2, Subsystem transposed) {
  require_bipartite(m, d1, d2);
  ComplexMatrix out(m.rows(), m.cols());
  for (int a = 0; a < d1; ++a) {
    for (int b = 0; b < d1; ++b) {
      if (transposed == Subsystem::First) {
        out.block(a * d2, b * d2, d2, d2) = m.block(b * d2, a * d2, d2, d2);
      } else {
        out.block(a * d2, b * d2, d2, d2) = m.block(a * d2, b * d2, d2, d2).transpose();
      }
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> perm) {
  const std::size_t n = dims.size();
  if (perm.size() != n) throw DimensionError("permutation length differs from factor count");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p])
      throw std::invalid_argument("not a permutation of the subsystem factors");
    seen[p] = true;
  }
  const Eigen::Index total =
      std::accumulate(dims.begin(), dims.end(), Eigen::Index{1}, std::multiplies<>());
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("matrix side differs from product of subsystem dimensions");

  // Map each output flat index to the input flat index with the same digits.
  std::vector<int> out_dims(n);
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  std::vector<Eigen::Index> in_stride(n, 1);
  for (std::size_t k = n; k-- > 1;) in_stride[k - 1] = in_stride[k] * dims[k];

  std::vector<Eigen::Index> source(total);
  std::vector<int> digits(n, 0);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index src = 0;
    for (std::size_t k = 0; k < n; ++k) src += digits[k] * in_stride[perm[k]];
    source[flat] = src;
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < out_dims[k]) break;
      digits[k] = 0;
    }
  }
  ComplexMatrix out(total, total);
  for (Eigen::Index i = 0; i < total; ++i)
    for (Eigen::Index j = 0; j < total; ++j) out(i, j) = m(source[i], source[j]);
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("shape mismatch in comparison");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("min_eigenvalue needs a square matrix");
  if (!is_hermitian(h)) throw std::invalid_argument("matrix is not Hermitian within 1e-12");
  const ComplexMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

RankResult rank_from_singular_values(const RealVector& sv, Eigen::Index rows, Eigen::Index cols,
                                    std::optional<double> tol) {
  RankResult result;
  result.mode = RankMode::Numerical;
  const double sigma_max = sv.size() > 0 ? sv.maxCoeff() : 0.0;
  result.threshold = tol ? *tol
                         : static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
                               sigma_max;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > result.threshold) {
      ++result.rank;
      result.smallest_kept = result.rank == 1 ? sv(k) : std::min(result.smallest_kept, sv(k));
    } else {
      result.largest_discarded = std::max(result.largest_discarded, sv(k));
    }
  }
  return result;
}

RankResult numerical_rank(const ComplexMatrix& m, std::optional<double> tol) {
  if (!m.allFinite()) throw std::invalid_argument("numerical rank needs finite entries");
  if (m.size() == 0) return rank_from_singular_values(RealVector(), 0, 0, tol);
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
}

RankResult rank(const ComplexMatrix& m, RankMode mode, std::optional<double> tol) {
  if (mode == RankMode::Exact)
    throw NotRationalError("exact rank requested for a floating-point matrix");
  return numerical_rank(m, tol);
}

HermitianEigen canonical_eigen(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("eigendecomposition needs a square matrix");
  const Eigen::Index n = h.rows();
  HermitianEigen out;

  ComplexMatrix off = h;
  off.diagonal().setZero();
  if (n == 0 || off.cwiseAbs().maxCoeff() <= 1e-14) {
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return h(a, a).real() < h(b, b).real();
    });
    out.values.resize(n);
    out.vectors = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      out.values(k) = h(order[k], order[k]).real();
      out.vectors(order[k], k) = 1.0;
    }
    return out;
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((h + h.adjoint()) / 2.0);
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex c = out.vectors(i, k);
      if (std::abs(c) > 1e-10) {
        out.vectors.col(k) *= std::conj(c) / std::abs(c);
        break;
      }
    }
  }
  return out;
}

}  // namespace cpmarg

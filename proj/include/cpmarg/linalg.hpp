#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cpmarg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Entrywise tolerance for Hermiticity and exact-equality style checks.
inline constexpr double kEqualityTol = 1e-12;

/// Raised when matrix shapes do not agree with declared subsystem dimensions.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when exact arithmetic is requested on data with no rational certificate.
class NotRationalError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { First, Second };
enum class RankMode { Exact, Numerical };

std::string to_string(RankMode mode);

struct RankResult {
  std::size_t rank = 0;
  RankMode mode = RankMode::Numerical;
  // Numerical mode only. Zero when there is nothing on that side of the threshold.
  double smallest_kept = 0.0;
  double largest_discarded = 0.0;
  double threshold = 0.0;

  /// Separation of the singular values from the threshold, as a ratio >= 0.
  /// Infinite in exact mode and when no value lies on one side of the cut.
  double gap_ratio() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-by-column vectorization.
ComplexVector vec(const ComplexMatrix& m);

/// E_{ij} of the given shape (0-based indices).
ComplexMatrix unit_matrix(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j);

/// Traces out `traced` from a matrix on H1 (dim d1) ⊗ H2 (dim d2).
ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, Subsystem traced);

/// Transposes the `transposed` factor of a matrix on H1 ⊗ H2.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int d1, int d2, Subsystem transposed);

/// Reorders tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> perm);

bool is_hermitian(const ComplexMatrix& m, double tol = kEqualityTol);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Smallest eigenvalue of (H + H†)/2. Throws if H is not Hermitian within 1e-12.
double min_eigenvalue(const ComplexMatrix& h);

/// Rank of a rows x cols matrix with singular values `sv`, under the numerical_rank threshold.
RankResult rank_from_singular_values(const RealVector& sv, Eigen::Index rows, Eigen::Index cols,
                                    std::optional<double> tol = std::nullopt);

/// Singular-value rank. Default threshold is max(rows, cols) * eps * sigma_max.
RankResult numerical_rank(const ComplexMatrix& m, std::optional<double> tol = std::nullopt);

/// Numerical mode only; exact mode throws NotRationalError (a floating-point
/// matrix carries no rational certificate).
RankResult rank(const ComplexMatrix& m, RankMode mode, std::optional<double> tol = std::nullopt);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues ascending and each
/// eigenvector's first non-negligible component made real positive. Diagonal
/// inputs get a stable sort of coordinate vectors.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // columns
};
HermitianEigen canonical_eigen(const ComplexMatrix& h);

}  // namespace cpmarg

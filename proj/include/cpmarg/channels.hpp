#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cpmarg/linalg.hpp"
#include "cpmarg/rational.hpp"

namespace cpmarg {

/// Certified rational form of a family: K_i = sqrt(weight) * ops[i], with every
/// ops[i] real rational and weight > 0.
struct ExactKraus {
  std::vector<RationalMatrix> ops;
  mpq_class weight = 1;
};

/// Ordered Kraus operators of shape d_out x d_in representing X -> sum_i K_i X K_i^dagger.
class KrausFamily {
public:
  /// Throws std::invalid_argument on an empty list or mismatched shapes.
  explicit KrausFamily(std::vector<ComplexMatrix> ops);

  /// Builds the floating-point operators from a rational form and keeps the form
  /// for exact-mode checks.
  static KrausFamily from_exact(std::vector<RationalMatrix> ops, mpq_class weight);

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const ComplexMatrix& op(std::size_t i) const { return ops_.at(i); }

  /// d_in == d_out and every operator Hermitian within 1e-12.
  bool hermitian_kraus() const { return hermitian_kraus_; }

  const std::optional<ExactKraus>& exact() const { return exact_; }

  /// tr(sum_i K_i^dagger K_i) == 1 within tol.
  bool is_normalized(double tol = kEqualityTol) const;

private:
  std::vector<ComplexMatrix> ops_;
  int d_in_ = 0;
  int d_out_ = 0;
  bool hermitian_kraus_ = false;
  std::optional<ExactKraus> exact_;
};

/// rho1 lives on the input space, rho2 on the output space.
struct MarginalPair {
  ComplexMatrix rho1;
  ComplexMatrix rho2;
};

struct ExactMarginalPair {
  RationalMatrix rho1;
  RationalMatrix rho2;
};

ComplexMatrix apply(const KrausFamily& family, const ComplexMatrix& x);

/// rho1 = (sum K_i^dagger K_i)^T, rho2 = sum K_i K_i^dagger, as computed.
MarginalPair marginals(const KrausFamily& family);

/// Same sums carried out in rational arithmetic; empty for families without a
/// rational form.
std::optional<ExactMarginalPair> exact_marginals(const KrausFamily& family);

/// C = sum_{r,s} E_rs (x) Phi(E_rs), side d_in * d_out, input factor first.
ComplexMatrix choi(const KrausFamily& family);

/// Rank of the Choi matrix. Without an explicit mode, exact arithmetic is used
/// whenever the family has a rational form.
RankResult choi_rank(const KrausFamily& family, std::optional<RankMode> mode = std::nullopt,
                     std::optional<double> tol = std::nullopt);

/// Phi^*: swaps d_in and d_out and conjugate-transposes every operator.
KrausFamily adjoint(const KrausFamily& family);

/// Operators F_i (x) G_j in lexicographic (i, j) order. Both factors must be normalized.
KrausFamily tensor(const KrausFamily& f, const KrausFamily& g);

/// True iff the vectorized operators are linearly independent.
bool is_minimal(const KrausFamily& family);

/// Reorders choi(tensor(F, G)), whose factors are (in_f, in_g, out_f, out_g),
/// into (in_f, out_f, in_g, out_g) so it can be compared with choi(F) (x) choi(G).
ComplexMatrix interleave_tensor_choi(const ComplexMatrix& c, int in_f, int in_g, int out_f,
                                     int out_g);

}  // namespace cpmarg

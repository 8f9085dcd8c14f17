#include "cpmarg/channels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cpmarg {

namespace {

RationalMatrix exact_choi(const ExactKraus& exact, std::size_t d_in, std::size_t d_out) {
  RationalMatrix c(d_in * d_out, d_in * d_out);
  // C[(r,a),(s,b)] = sum_i K_i[a,r] K_i[b,s] for real operators
  for (const auto& k : exact.ops)
    for (std::size_t r = 0; r < d_in; ++r)
      for (std::size_t a = 0; a < d_out; ++a) {
        if (sgn(k(a, r)) == 0) continue;
        for (std::size_t s = 0; s < d_in; ++s)
          for (std::size_t b = 0; b < d_out; ++b) c(r * d_out + a, s * d_out + b) += k(a, r) * k(b, s);
      }
  return c.scaled(exact.weight);
}

ComplexMatrix stacked_vectorization(const KrausFamily& family) {
  ComplexMatrix stack(static_cast<Eigen::Index>(family.d_in()) * family.d_out(),
                      static_cast<Eigen::Index>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) stack.col(static_cast<Eigen::Index>(i)) = vec(family.op(i));
  return stack;
}

}  // namespace

KrausFamily::KrausFamily(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("a Kraus family needs at least one operator");
  d_out_ = static_cast<int>(ops_.front().rows());
  d_in_ = static_cast<int>(ops_.front().cols());
  if (d_in_ < 1 || d_out_ < 1) throw DimensionError("Kraus operators must be non-empty");
  for (const auto& k : ops_) {
    if (k.rows() != d_out_ || k.cols() != d_in_)
      throw DimensionError("Kraus operators must share one shape");
    if (!k.allFinite()) throw std::invalid_argument("Kraus operators must have finite entries");
  }
  hermitian_kraus_ = d_in_ == d_out_;
  for (const auto& k : ops_) hermitian_kraus_ = hermitian_kraus_ && is_hermitian(k);
}

KrausFamily KrausFamily::from_exact(std::vector<RationalMatrix> ops, mpq_class weight) {
  if (sgn(weight) <= 0) throw std::invalid_argument("exact weight must be positive");
  const double scale = std::sqrt(weight.get_d());
  std::vector<ComplexMatrix> numeric;
  numeric.reserve(ops.size());
  for (const auto& k : ops) numeric.push_back(k.to_complex() * scale);
  KrausFamily family(std::move(numeric));
  family.exact_ = ExactKraus{std::move(ops), std::move(weight)};
  return family;
}

bool KrausFamily::is_normalized(double tol) const {
  double total = 0.0;
  for (const auto& k : ops_) total += k.squaredNorm();
  return std::abs(total - 1.0) <= tol;
}

ComplexMatrix apply(const KrausFamily& family, const ComplexMatrix& x) {
  if (x.rows() != family.d_in() || x.cols() != family.d_in())
    throw DimensionError("input must be square of side d_in");
  ComplexMatrix out = ComplexMatrix::Zero(family.d_out(), family.d_out());
  for (const auto& k : family.ops()) out += k * x * k.adjoint();
  return out;
}

MarginalPair marginals(const KrausFamily& family) {
  ComplexMatrix left = ComplexMatrix::Zero(family.d_in(), family.d_in());
  ComplexMatrix right = ComplexMatrix::Zero(family.d_out(), family.d_out());
  for (const auto& k : family.ops()) {
    left += k.adjoint() * k;
    right += k * k.adjoint();
  }
  return {left.transpose(), right};
}

std::optional<ExactMarginalPair> exact_marginals(const KrausFamily& family) {
  const auto& exact = family.exact();
  if (!exact) return std::nullopt;
  RationalMatrix left(static_cast<std::size_t>(family.d_in()), static_cast<std::size_t>(family.d_in()));
  RationalMatrix right(static_cast<std::size_t>(family.d_out()), static_cast<std::size_t>(family.d_out()));
  for (const auto& k : exact->ops) {
    const RationalMatrix kt = k.transpose();
    left = left + kt * k;
    right = right + k * kt;
  }
  return ExactMarginalPair{left.transpose().scaled(exact->weight), right.scaled(exact->weight)};
}

ComplexMatrix choi(const KrausFamily& family) {
  const int d_in = family.d_in();
  const int d_out = family.d_out();
  ComplexMatrix c(static_cast<Eigen::Index>(d_in) * d_out, static_cast<Eigen::Index>(d_in) * d_out);
  for (int r = 0; r < d_in; ++r)
    for (int s = 0; s < d_in; ++s) {
      // Phi(E_rs) = sum_i K_i[:, r] K_i[:, s]^dagger
      ComplexMatrix block = ComplexMatrix::Zero(d_out, d_out);
      for (const auto& k : family.ops()) block += k.col(r) * k.col(s).adjoint();
      c.block(r * d_out, s * d_out, d_out, d_out) = block;
    }
  return c;
}

RankResult choi_rank(const KrausFamily& family, std::optional<RankMode> mode, std::optional<double> tol) {
  const RankMode chosen = mode.value_or(family.exact() ? RankMode::Exact : RankMode::Numerical);
  if (chosen == RankMode::Exact) {
    if (!family.exact()) throw NotRationalError("family has no rational form");
    return exact_rank(exact_choi(*family.exact(), static_cast<std::size_t>(family.d_in()),
                                 static_cast<std::size_t>(family.d_out())));
  }
  return numerical_rank(choi(family), tol);
}

KrausFamily adjoint(const KrausFamily& family) {
  if (const auto& exact = family.exact()) {
    std::vector<RationalMatrix> ops;
    for (const auto& k : exact->ops) ops.push_back(k.transpose());
    return KrausFamily::from_exact(std::move(ops), exact->weight);
  }
  std::vector<ComplexMatrix> ops;
  for (const auto& k : family.ops()) ops.push_back(k.adjoint());
  return KrausFamily(std::move(ops));
}

KrausFamily tensor(const KrausFamily& f, const KrausFamily& g) {
  if (!f.is_normalized() || !g.is_normalized())
    throw std::invalid_argument("tensor product requires normalized factors");
  if (f.exact() && g.exact()) {
    std::vector<RationalMatrix> ops;
    for (const auto& a : f.exact()->ops)
      for (const auto& b : g.exact()->ops) ops.push_back(kron(a, b));
    return KrausFamily::from_exact(std::move(ops), f.exact()->weight * g.exact()->weight);
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(f.size() * g.size());
  for (const auto& a : f.ops())
    for (const auto& b : g.ops()) ops.push_back(kron(a, b));
  return KrausFamily(std::move(ops));
}

bool is_minimal(const KrausFamily& family) {
  if (const auto& exact = family.exact()) {
    const std::size_t dim = static_cast<std::size_t>(family.d_in()) * family.d_out();
    RationalMatrix stack(family.size(), dim);
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t a = 0; a < exact->ops[i].rows(); ++a)
        for (std::size_t b = 0; b < exact->ops[i].cols(); ++b)
          stack(i, b * exact->ops[i].rows() + a) = exact->ops[i](a, b);
    return exact_rank(stack).rank == family.size();
  }
  return numerical_rank(stacked_vectorization(family)).rank == family.size();
}

ComplexMatrix interleave_tensor_choi(const ComplexMatrix& c, int in_f, int in_g, int out_f, int out_g) {
  const std::array<int, 4> dims{in_f, in_g, out_f, out_g};
  const std::array<int, 4> perm{0, 2, 1, 3};
  return permute_subsystems(c, dims, perm);
}

}  // namespace cpmarg

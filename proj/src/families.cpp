#include "cpmarg/families.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpmarg {

namespace {

// Mathematical modulus for the 1-based index formulas.
int mod(int a, int n) { return ((a % n) + n) % n; }

void require_paper_args(int d, int m) {
  if (d < 2 || m < 1)
    throw std::invalid_argument("paper_family needs d >= 2 and m >= 1, got d=" + std::to_string(d) +
                                ", m=" + std::to_string(m));
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int power) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int k = 0; k < power; ++k) out = out * a;
  return out;
}

// 0_{d+1} + I_{m-1} padded to side d+m.
ComplexMatrix tail_identity(int d, int m) {
  ComplexMatrix p = ComplexMatrix::Zero(d + m, d + m);
  for (int k = d + 1; k < d + m; ++k) p(k, k) = 1.0;
  return p;
}

}  // namespace

ShiftMatrix shift_matrix(int d, int m) {
  require_paper_args(d, m);
  ShiftMatrix s{d, m, ComplexMatrix::Zero(d + m, d + m)};
  for (int k = 1; k <= d + 1; ++k) s.matrix(mod(k, d + 1), k - 1) = 1.0;
  return s;
}

KrausFamily paper_family(int d, int m) {
  require_paper_args(d, m);
  const auto n = static_cast<std::size_t>(d + m);
  std::vector<RationalMatrix> ops;
  ops.reserve(n);
  for (int i = 1; i <= d + 1; ++i) {
    RationalMatrix k(n, static_cast<std::size_t>(d));
    for (int col = 1; col <= d; ++col) k(static_cast<std::size_t>(mod(col + i - 2, d + 1)), col - 1) = 1;
    ops.push_back(std::move(k));
  }
  for (int i = d + 2; i <= d + m; ++i) {
    RationalMatrix k(n, static_cast<std::size_t>(d));
    for (int col = 0; col < d; ++col) k(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(col)) = 1;
    ops.push_back(std::move(k));
  }
  return KrausFamily::from_exact(std::move(ops), mpq_class(1, d * (d + m)));
}

ExactMarginalPair paper_family_targets(int d, int m) {
  require_paper_args(d, m);
  mpq_class p(d + 1, d + m);
  p.canonicalize();
  const auto dd = static_cast<std::size_t>(d);
  RationalMatrix z(dd, dd);
  for (std::size_t i = 0; i < dd; ++i)
    for (std::size_t j = 0; j < dd; ++j) {
      z(i, j) = (1 - p) / d;
      if (i == j) z(i, j) += p / d;
    }
  const auto n = static_cast<std::size_t>(d + m);
  return {std::move(z), RationalMatrix::identity(n).scaled(mpq_class(1, d + m))};
}

ComplexMatrix closed_form_gram(int d, int m) {
  require_paper_args(d, m);
  const int n = d + m;
  const double c = d - 1;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix p = tail_identity(d, m);
  ComplexMatrix jp = p;
  jp.topLeftCorner(d + 1, d + 1).setOnes();

  const ComplexVector vid = vec(id);
  const ComplexVector vp = vec(p);
  const ComplexVector vjp = vec(jp);

  ComplexMatrix gram = kron(id, id) + vid * vid.adjoint();
  gram += 2 * c * (vp * vp.adjoint()) + 2 * c * kron(p, p);
  gram += c * (vjp * vjp.adjoint()) + c * kron(jp, jp);

  const ComplexMatrix s = shift_matrix(d, m).matrix;
  for (int i = 1; i <= d + 1; ++i)
    for (int j = 1; j <= d + 1; ++j)
      gram += 2 * c * kron(unit_matrix(n, n, i - 1, j - 1), matrix_power(s, mod(i - j - 1, d + 1) + 1));
  return gram;
}

ComplexMatrix closed_form_choi_pt(int d, int m) {
  require_paper_args(d, m);
  const int n = d + m;
  const ComplexMatrix s = shift_matrix(d, m).matrix;
  ComplexMatrix row(n, static_cast<Eigen::Index>(d) * n);
  ComplexMatrix power = s;
  for (int k = 0; k < d; ++k) {
    row.middleCols(static_cast<Eigen::Index>(k) * n, n) = power;
    power = power * s;
  }
  const ComplexMatrix ones = ComplexMatrix::Ones(d, d);
  return (row.adjoint() * row + kron(ones, tail_identity(d, m))) / static_cast<double>(d * n);
}

KrausFamily sigma_rank2() {
  const double a = 1.0 / std::sqrt(3.0);
  const double scale = 1.0 / std::sqrt(2.0);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 0) = a;
  a1(1, 1) = 1.0;
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(0, 1) = a;
  a2(1, 0) = a;
  return KrausFamily({a1 * scale, a2 * scale});
}

ComplexMatrix sigma_state() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = 1.0 / 3.0;
  s(1, 1) = 2.0 / 3.0;
  return s;
}

KrausFamily ohno_rank4() {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  auto e = [](int i, int j) { return unit_matrix(3, 3, i - 1, j - 1); };
  const double scale = 1.0 / (2.0 * r3);
  return KrausFamily({
      e(1, 1) * scale,
      (e(1, 2) + r2 * e(2, 3)) * scale,
      (r2 * e(2, 1) + r3 * e(3, 2)) * scale,
      (e(3, 1) + r2 * e(1, 3)) * scale,
  });
}

KrausFamily ohno_rank_d(int d) {
  if (d < 3) throw std::invalid_argument("ohno_rank_d needs d >= 3, got " + std::to_string(d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexMatrix> ops;
  ComplexMatrix first = ComplexMatrix::Zero(d, d);
  for (int j = 1; j < d; ++j) first(j, j) = std::sqrt(static_cast<double>(d - 2) / (d - 1));
  ops.push_back(first * scale);
  const double off = 1.0 / std::sqrt(static_cast<double>(d - 1));
  for (int k = 1; k < d; ++k) {
    ops.push_back((unit_matrix(d, d, 0, k) + unit_matrix(d, d, k, 0)) * (off * scale));
  }
  return KrausFamily(std::move(ops));
}

KrausFamily rank8_66() { return tensor(sigma_rank2(), ohno_rank4()); }

ComplexMatrix rank8_marginal() {
  return kron(sigma_state(), ComplexMatrix::Identity(3, 3) / 3.0);
}

KrausFamily rank8k_6k(int k) {
  if (k < 3) throw std::invalid_argument("rank8k_6k needs k >= 3, got " + std::to_string(k));
  const KrausFamily first = ohno_rank_d(k);
  // Tensor extremality needs the first factor to be a minimal Hermitian decomposition.
  if (!first.hermitian_kraus() || !is_minimal(first))
    throw std::logic_error("ohno_rank_d(k) is not a minimal Hermitian Kraus decomposition");
  return tensor(first, rank8_66());
}

ComplexMatrix rank8k_marginal_sigma_first(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return kron(rank8_marginal(), ComplexMatrix::Identity(k, k) / static_cast<double>(k));
}

}  // namespace cpmarg

#include "cpmarg/random.hpp"

#include <cmath>

namespace cpmarg {

namespace {

ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

}  // namespace

KrausFamily random_family(Rng& rng, int d_in, int d_out, int r) {
  std::vector<ComplexMatrix> ops;
  double total = 0.0;
  for (int i = 0; i < r; ++i) {
    ops.push_back(ginibre(rng, d_out, d_in));
    total += ops.back().squaredNorm();
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& k : ops) k *= scale;
  return KrausFamily(std::move(ops));
}

KrausFamily random_integer_family(Rng& rng, int d_in, int d_out, int r, int max_abs) {
  std::uniform_int_distribution<int> pick(-max_abs, max_abs);
  for (;;) {
    std::vector<RationalMatrix> ops;
    mpz_class total = 0;
    for (int i = 0; i < r; ++i) {
      RationalMatrix k(static_cast<std::size_t>(d_out), static_cast<std::size_t>(d_in));
      for (std::size_t a = 0; a < k.rows(); ++a)
        for (std::size_t b = 0; b < k.cols(); ++b) {
          const int v = pick(rng);
          k(a, b) = v;
          total += v * v;
        }
      ops.push_back(std::move(k));
    }
    if (total != 0) return KrausFamily::from_exact(std::move(ops), mpq_class(mpz_class(1), total));
  }
}

ComplexMatrix random_unitary(Rng& rng, int n) {
  const ComplexMatrix z = ginibre(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace cpmarg

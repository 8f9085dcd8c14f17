#pragma once

#include <cmath>
#include <vector>

#include "cpmarg/channels.hpp"
#include "cpmarg/random.hpp"

namespace fixture {

using cpmarg::ComplexMatrix;
using cpmarg::KrausFamily;

inline KrausFamily identity_channel(int d) {
  return KrausFamily({ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d))});
}

// {E11, E12, E21, E22} / sqrt(2) on (2,2)
inline KrausFamily e_basis() {
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ops.push_back(cpmarg::unit_matrix(2, 2, i, j) / std::sqrt(2.0));
  return KrausFamily(ops);
}

inline KrausFamily duplicated(const ComplexMatrix& k) { return KrausFamily({k, k}); }

inline KrausFamily conjugated(const KrausFamily& f, const ComplexMatrix& out, const ComplexMatrix& in) {
  std::vector<ComplexMatrix> ops;
  for (const auto& k : f.ops()) ops.push_back(out * k * in.adjoint());
  return KrausFamily(ops);
}

inline KrausFamily scaled(const KrausFamily& f, double s) {
  std::vector<ComplexMatrix> ops;
  for (const auto& k : f.ops()) ops.push_back(k * s);
  return KrausFamily(ops);
}

inline KrausFamily padded(const KrausFamily& f) {
  std::vector<ComplexMatrix> ops;
  for (const auto& k : f.ops()) {
    ComplexMatrix p = ComplexMatrix::Zero(k.rows() + 1, k.cols() + 1);
    p.topLeftCorner(k.rows(), k.cols()) = k;
    ops.push_back(p);
  }
  return KrausFamily(ops);
}

inline ComplexMatrix random_state(cpmarg::Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cpmarg::Complex(g(rng), g(rng));
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace fixture

#include <doctest.h>

#include <array>
#include <cmath>

#include "cpmarg/channels.hpp"
#include "cpmarg/families.hpp"
#include "cpmarg/random.hpp"
#include "oracles.hpp"

using namespace cpmarg;

namespace {

ComplexMatrix bell_state() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

ComplexMatrix random_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("partial trace of a product state factors") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const int d1 = 1 + trial % 3;
      const int d2 = 1 + (trial / 3) % 4;
      const ComplexMatrix a = random_matrix(rng, d1, d1);
      ComplexMatrix b = random_matrix(rng, d2, d2);
      b /= b.trace();
      const ComplexMatrix ab = kron(a, b);
      CHECK(max_abs_diff(partial_trace(ab, d1, d2, Subsystem::Second), a) <= 1e-12);
      CHECK(std::abs(partial_trace(ab, d1, d2, Subsystem::First).trace() - ab.trace()) <= 1e-12);
      CHECK(max_abs_diff(partial_trace(ab, d1, d2, Subsystem::First), a.trace() * b) <= 1e-12);
    }
  }

  TEST_CASE("partial trace agrees with the basis-sum oracle") {
    Rng rng(11);
    const ComplexMatrix m = random_matrix(rng, 12, 12);
    CHECK(max_abs_diff(partial_trace(m, 3, 4, Subsystem::Second), oracle::partial_trace_brute(m, 3, 4, true)) <=
          1e-12);
    CHECK(max_abs_diff(partial_trace(m, 3, 4, Subsystem::First), oracle::partial_trace_brute(m, 3, 4, false)) <=
          1e-12);
  }

  TEST_CASE("partial trace of paper_family Choi matrices") {
    const ComplexMatrix c21 = choi(paper_family(2, 1));
    CHECK(max_abs_diff(partial_trace(c21, 2, 3, Subsystem::First), ComplexMatrix::Identity(3, 3) / 3.0) <= 1e-12);

    // Z at d=3, m=2: diagonal 1/3, off-diagonal 1/15.
    const ComplexMatrix z = partial_trace(choi(paper_family(3, 2)), 3, 5, Subsystem::Second);
    ComplexMatrix expected = ComplexMatrix::Constant(3, 3, 1.0 / 15.0);
    expected.diagonal().setConstant(1.0 / 3.0);
    CHECK(max_abs_diff(z, expected) <= 1e-12);
  }

  TEST_CASE("partial trace rejects mismatched dimensions") {
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(5, 5), 2, 3, Subsystem::First), DimensionError);
    CHECK_THROWS_AS(partial_transpose(ComplexMatrix::Identity(6, 5), 2, 3, Subsystem::First), DimensionError);
  }

  TEST_CASE("partial transpose is an involution and commutes with adjoint") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix m = random_matrix(rng, 6, 6);
      for (Subsystem s : {Subsystem::First, Subsystem::Second}) {
        const ComplexMatrix pt = partial_transpose(m, 2, 3, s);
        CHECK(max_abs_diff(partial_transpose(pt, 2, 3, s), m) <= 1e-12);
        CHECK(max_abs_diff(partial_transpose(m.adjoint(), 2, 3, s), pt.adjoint()) <= 1e-12);
        CHECK(std::abs(pt.trace() - m.trace()) <= 1e-12);
      }
    }
  }

  TEST_CASE("Bell state partial transpose has eigenvalues 1/2, 1/2, 1/2, -1/2") {
    const ComplexMatrix pt = partial_transpose(bell_state(), 2, 2, Subsystem::First);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(pt);
    const RealVector ev = eig.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) CHECK(ev(k) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5).epsilon(1e-12));
  }

  TEST_CASE("paper_family(2,1) Choi partial transpose equals the closed form and is PSD") {
    const ComplexMatrix pt = partial_transpose(choi(paper_family(2, 1)), 2, 3, Subsystem::First);
    CHECK(max_abs_diff(pt, closed_form_choi_pt(2, 1)) <= 1e-12);
    CHECK(min_eigenvalue(pt) >= -1e-12);
  }

  TEST_CASE("min_eigenvalue") {
    CHECK(min_eigenvalue(ComplexMatrix::Identity(3, 3)) == doctest::Approx(1.0));
    CHECK(min_eigenvalue(closed_form_choi_pt(2, 1)) >= -1e-12);
    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(min_eigenvalue(skew), std::invalid_argument);
  }

  TEST_CASE("numerical rank") {
    const RankResult id = numerical_rank(ComplexMatrix::Identity(9, 9));
    CHECK(id.rank == 9);
    CHECK(id.smallest_kept > id.threshold);
    CHECK(numerical_rank(ComplexMatrix::Zero(3, 4)).rank == 0);
    CHECK_THROWS_AS(rank(ComplexMatrix::Identity(2, 2), RankMode::Exact), NotRationalError);

    ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
    nan(0, 1) = std::nan("");
    CHECK_THROWS_AS(numerical_rank(nan), std::invalid_argument);

    const RankResult explicit_tol = numerical_rank(ComplexMatrix::Identity(3, 3) * 1e-3, 1e-2);
    CHECK(explicit_tol.rank == 0);
    CHECK(explicit_tol.threshold == 1e-2);
  }

  TEST_CASE("gap ratio") {
    RankResult r;
    r.rank = 2;
    r.smallest_kept = 1.0;
    r.threshold = 1e-3;
    r.largest_discarded = 1e-6;
    CHECK(r.gap_ratio() == doctest::Approx(1000.0));
    r.largest_discarded = 5e-4;
    CHECK(r.gap_ratio() == doctest::Approx(2.0));
    r.mode = RankMode::Exact;
    CHECK(std::isinf(r.gap_ratio()));
  }

  TEST_CASE("kron, direct sum and column-stacking vec") {
    ComplexMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    const ComplexMatrix b = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix k = kron(a, b);
    CHECK(k(0, 2) == Complex(2.0));
    CHECK(k(3, 1) == Complex(3.0));
    const ComplexVector v = vec(a);
    CHECK(v(1) == Complex(3.0));  // second entry of the first column
    CHECK(v(2) == Complex(2.0));
    const ComplexMatrix s = direct_sum(a, b);
    CHECK(s.rows() == 4);
    CHECK(s(2, 2) == Complex(1.0));
    CHECK(s(0, 3) == Complex(0.0));
  }

  TEST_CASE("permute_subsystems swaps tensor factors") {
    Rng rng(5);
    const ComplexMatrix a = random_matrix(rng, 2, 2);
    const ComplexMatrix b = random_matrix(rng, 3, 3);
    const ComplexMatrix c = random_matrix(rng, 4, 4);
    const std::array<int, 3> dims{2, 3, 4};
    const std::array<int, 3> perm{2, 0, 1};
    CHECK(max_abs_diff(permute_subsystems(kron(kron(a, b), c), dims, perm), kron(kron(c, a), b)) <= 1e-12);
    const std::array<int, 3> bad{0, 0, 1};
    CHECK_THROWS_AS(permute_subsystems(kron(kron(a, b), c), dims, bad), std::invalid_argument);
  }

  TEST_CASE("canonical_eigen sorts and fixes phases") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 0.5;
    d(1, 1) = 0.2;
    d(2, 2) = 0.3;
    const HermitianEigen e = canonical_eigen(d);
    CHECK(e.values(0) == doctest::Approx(0.2));
    CHECK(e.values(2) == doctest::Approx(0.5));
    CHECK(e.vectors(1, 0) == Complex(1.0));

    Rng rng(9);
    ComplexMatrix h = random_matrix(rng, 4, 4);
    h = h * h.adjoint();
    const HermitianEigen g = canonical_eigen(h);
    CHECK(max_abs_diff(g.vectors * g.values.cast<Complex>().asDiagonal() * g.vectors.adjoint(), h) <= 1e-10);
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(g.vectors(0, k).imag()) <= 1e-12);
      CHECK(g.vectors(0, k).real() > 0);
    }
  }
}

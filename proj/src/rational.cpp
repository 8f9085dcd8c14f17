#include "cpmarg/rational.hpp"

#include <utility>

namespace cpmarg {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, mpq_class(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("rational product shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpq_class& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (sgn(rhs(k, j)) != 0) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("rational sum shape mismatch");
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + rhs.entries_[k];
  return out;
}

RationalMatrix RationalMatrix::scaled(const mpq_class& s) const {
  RationalMatrix out(*this);
  for (auto& e : out.entries_) e *= s;
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

bool RationalMatrix::is_integral() const {
  for (const auto& e : entries_)
    if (e.get_den() != 1) return false;
  return true;
}

ComplexMatrix RationalMatrix::to_complex() const {
  ComplexMatrix out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
  return out;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in: " + text);
  q.canonicalize();
  return q;
}

RankResult exact_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  // Scaling a row by a nonzero integer leaves the rank unchanged.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class den = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (den / m(i, j).get_den());
  }

  // Fraction-free elimination: after step k every remaining entry is a (k+1)-minor,
  // so the division by the previous pivot is exact.
  mpz_class previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && sgn(a[pivot][c]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    const mpz_class& p = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = p * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = p;
    ++r;
  }

  RankResult result;
  result.rank = r;
  result.mode = RankMode::Exact;
  return result;
}

RankResult rank(const RationalMatrix& m, RankMode mode, std::optional<double> tol) {
  if (mode == RankMode::Exact) return exact_rank(m);
  return numerical_rank(m.to_complex(), tol);
}

}  // namespace cpmarg

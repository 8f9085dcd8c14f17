#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cpmarg/linalg.hpp"

namespace cpmarg {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpq_class& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator+(const RationalMatrix& rhs) const;
  RationalMatrix scaled(const mpq_class& s) const;

  bool operator==(const RationalMatrix& rhs) const;

  bool is_integral() const;
  ComplexMatrix to_complex() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> entries_;
};

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or q = 0.
mpq_class parse_rational(const std::string& text);

/// Rank by fraction-free (Bareiss) elimination on the row-wise denominator-cleared matrix.
RankResult exact_rank(const RationalMatrix& m);

/// Exact mode uses Bareiss; numerical mode converts and uses the SVD.
RankResult rank(const RationalMatrix& m, RankMode mode, std::optional<double> tol = std::nullopt);

}  // namespace cpmarg

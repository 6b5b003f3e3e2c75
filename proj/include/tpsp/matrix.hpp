#pragma once

#include "tpsp/cyclotomic.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tpsp {

/// Dense row-major matrix over a single cyclotomic field.
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols, int conductor);

  static ExactMatrix identity(std::size_t n, int conductor);
  static ExactMatrix from_rationals(const std::vector<std::vector<Rational>>& rows, int conductor = 1);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int conductor() const noexcept { return conductor_; }

  const CyclotomicScalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, CyclotomicScalar value);
  void set(std::size_t r, std::size_t c, const Rational& value);

  std::span<const CyclotomicScalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  /// Rows of `top` followed by rows of `bottom`; column counts must agree.
  static ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom);
  /// Block-diagonal [a 0; 0 b].
  static ExactMatrix block_diagonal(const ExactMatrix& a, const ExactMatrix& b);

  std::string to_string() const;

 private:
  friend struct Elimination;

  std::size_t rows_;
  std::size_t cols_;
  int conductor_;
  std::vector<CyclotomicScalar> data_;
};

/// Field rank, by fraction-free elimination with first-nonzero pivoting.
std::size_t rank(ExactMatrix m);

/// Determinant of a square matrix (Bareiss). Throws DimensionMismatch.
CyclotomicScalar det(ExactMatrix m);

/// Some x with m·x = b. m may be rectangular; free variables are set to zero.
/// Throws DimensionMismatch or NoSolution.
std::vector<CyclotomicScalar> solve(const ExactMatrix& m, std::span<const CyclotomicScalar> b);

/// Inverse of a square matrix. Throws DimensionMismatch or NoSolution if singular.
ExactMatrix inverse(const ExactMatrix& m);

/// First (row, col) at which two equally-shaped matrices differ.
std::optional<std::pair<std::size_t, std::size_t>> first_difference(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace tpsp

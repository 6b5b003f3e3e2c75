#include "tpsp/matrix.hpp"

#include <sstream>

namespace tpsp {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, int conductor)
    : rows_(rows), cols_(cols), conductor_(conductor), data_(rows * cols, CyclotomicScalar(conductor)) {}

ExactMatrix ExactMatrix::identity(std::size_t n, int conductor) {
  ExactMatrix out(n, n, conductor);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, Rational(1));
  return out;
}

ExactMatrix ExactMatrix::from_rationals(const std::vector<std::vector<Rational>>& rows, int conductor) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix out(rows.size(), cols, conductor);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::DimensionMismatch, "ragged rows in matrix literal");
    for (std::size_t c = 0; c < cols; ++c) out.set(r, c, rows[r][c]);
  }
  return out;
}

void ExactMatrix::set(std::size_t r, std::size_t c, CyclotomicScalar value) {
  if (value.conductor() != conductor_) {
    throw Error(Errc::ConductorMismatch, "entry conductor " + std::to_string(value.conductor()) +
                                             " in matrix over conductor " + std::to_string(conductor_));
  }
  data_[r * cols_ + c] = std::move(value);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  data_[r * cols_ + c] = CyclotomicScalar(conductor_, value);
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(cols_, rows_, conductor_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = at(r, c);
  }
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(Errc::DimensionMismatch, "product of " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                             " and " + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
  }
  if (conductor_ != rhs.conductor_) throw Error(Errc::ConductorMismatch, "matrix product across conductors");
  ExactMatrix out(rows_, rhs.cols_, conductor_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const auto& b = rhs.at(k, j);
        if (b.is_zero()) continue;
        out.data_[i * rhs.cols_ + j] += a * b;
      }
    }
  }
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.conductor_ == b.conductor_ && a.data_ == b.data_;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& top, const ExactMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw Error(Errc::DimensionMismatch, "vstack with different column counts");
  if (top.conductor_ != bottom.conductor_) throw Error(Errc::ConductorMismatch, "vstack across conductors");
  ExactMatrix out(top.rows_ + bottom.rows_, top.cols_, top.conductor_);
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
  return out;
}

ExactMatrix ExactMatrix::block_diagonal(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.conductor_ != b.conductor_) throw Error(Errc::ConductorMismatch, "block_diagonal across conductors");
  ExactMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_, a.conductor_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) out.set(r, c, a.at(r, c));
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) out.set(a.rows_ + r, a.cols_ + c, b.at(r, c));
  return out;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? ", " : "") << at(r, c).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

// Forward Bareiss pass over the first `active_cols` columns; any trailing
// columns (an augmented right-hand side) receive the same row operations.
struct Elimination {
  std::vector<std::size_t> pivot_cols;
  bool odd_swaps = false;

  static Elimination run(ExactMatrix& m, std::size_t active_cols) {
    Elimination e;
    const std::size_t rows = m.rows_;
    const std::size_t cols = m.cols_;
    auto& d = m.data_;
    CyclotomicScalar prev_inv(m.conductor_, Rational(1));
    std::size_t r = 0;
    for (std::size_t c = 0; c < active_cols && r < rows; ++c) {
      std::size_t p = r;
      while (p < rows && d[p * cols + c].is_zero()) ++p;
      if (p == rows) continue;
      if (p != r) {
        for (std::size_t j = 0; j < cols; ++j) std::swap(d[p * cols + j], d[r * cols + j]);
        e.odd_swaps = !e.odd_swaps;
      }
      const CyclotomicScalar pivot = d[r * cols + c];
      for (std::size_t i = r + 1; i < rows; ++i) {
        const CyclotomicScalar factor = d[i * cols + c];
        for (std::size_t j = c + 1; j < cols; ++j) {
          auto& entry = d[i * cols + j];
          const auto& upper = d[r * cols + j];
          if (factor.is_zero()) {
            if (entry.is_zero()) continue;
            entry *= pivot;
          } else {
            entry *= pivot;
            if (!upper.is_zero()) entry -= factor * upper;
          }
          if (!entry.is_zero() && !prev_inv.is_one()) entry *= prev_inv;
        }
        d[i * cols + c] = CyclotomicScalar(m.conductor_);
      }
      prev_inv = pivot.inverse();
      e.pivot_cols.push_back(c);
      ++r;
    }
    return e;
  }
};

std::size_t rank(ExactMatrix m) {
  return Elimination::run(m, m.cols()).pivot_cols.size();
}

CyclotomicScalar det(ExactMatrix m) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::DimensionMismatch, "determinant of non-square " + std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()) + " matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return CyclotomicScalar(m.conductor(), Rational(1));
  const auto e = Elimination::run(m, n);
  if (e.pivot_cols.size() < n) return CyclotomicScalar(m.conductor());
  CyclotomicScalar d = m.at(n - 1, n - 1);
  return e.odd_swaps ? -d : d;
}

std::vector<CyclotomicScalar> solve(const ExactMatrix& m, std::span<const CyclotomicScalar> b) {
  if (b.size() != m.rows()) {
    throw Error(Errc::DimensionMismatch, "right-hand side of length " + std::to_string(b.size()) + " for " +
                                             std::to_string(m.rows()) + " rows");
  }
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  ExactMatrix aug(rows, cols + 1, m.conductor());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, cols, b[r]);
  }
  const auto e = Elimination::run(aug, cols);
  const std::size_t rk = e.pivot_cols.size();
  for (std::size_t r = rk; r < rows; ++r) {
    if (!aug.at(r, cols).is_zero()) {
      throw Error(Errc::NoSolution, "inconsistent system (row " + std::to_string(r) + " after elimination)");
    }
  }
  std::vector<CyclotomicScalar> x(cols, CyclotomicScalar(m.conductor()));
  for (std::size_t t = rk; t-- > 0;) {
    const std::size_t pc = e.pivot_cols[t];
    CyclotomicScalar acc = aug.at(t, cols);
    for (std::size_t j = pc + 1; j < cols; ++j) {
      if (!aug.at(t, j).is_zero() && !x[j].is_zero()) acc -= aug.at(t, j) * x[j];
    }
    x[pc] = acc / aug.at(t, pc);
  }
  return x;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (rank(m) < n) throw Error(Errc::NoSolution, "matrix is singular");
  ExactMatrix out(n, n, m.conductor());
  std::vector<CyclotomicScalar> e(n, CyclotomicScalar(m.conductor()));
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = CyclotomicScalar(m.conductor(), Rational(1));
    if (c > 0) e[c - 1] = CyclotomicScalar(m.conductor());
    const auto col = solve(m, e);
    for (std::size_t r = 0; r < n; ++r) out.set(r, c, col[r]);
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, "comparing matrices of different shapes");
  }
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!(a.at(r, c) == b.at(r, c))) return std::make_pair(r, c);
    }
  }
  return std::nullopt;
}

}  // namespace tpsp

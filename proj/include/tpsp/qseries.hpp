#pragma once

#include "tpsp/lattice.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace tpsp {

/// Power series in q with integer exponents, known modulo q^(T+1).
/// Zero coefficients are never stored.
class QSeries {
 public:
  explicit QSeries(long truncation = 0);

  static QSeries one(long truncation);
  static QSeries monomial(long truncation, long exponent, const BigInt& coeff = 1);

  long truncation() const noexcept { return truncation_; }
  const std::map<long, BigInt>& terms() const noexcept { return terms_; }
  BigInt coeff(long n) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c q^n; terms with n > T are dropped.
  void add_term(long n, const BigInt& c);

  QSeries shifted(long s) const;         // q^s f, s >= 0
  QSeries truncated(long order) const;   // restrict to order <= T
  QSeries scaled(long factor) const;     // f(q^factor), factor >= 1
  /// f(q^(1/factor)): requires every exponent divisible by factor.
  QSeries decimated(long factor) const;
  /// 1/f, requires constant term ±1.
  QSeries reciprocal() const;

  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
  }

  /// Dense list of coefficients 0..T.
  std::vector<BigInt> dense() const;
  std::string to_string() const;

 private:
  long truncation_;
  std::map<long, BigInt> terms_;
};

/// 1/(q^b; q^b)_m: partitions into parts from {b, 2b, ..., m b}.
QSeries poch_inverse(long b, long m, long truncation);
/// (q^b; q^b)_m as a polynomial, truncated.
QSeries poch_finite(long b, long m, long truncation);
/// prod_{j >= 0} (1 - q^(a + j step)).
QSeries poch_infinite(long a, long step, long truncation);

using Charge = std::vector<int>;

/// A_m(q) for every charge m with m^T A m / 2 <= T.
struct CharacterTable {
  int d = 0;
  int k = 0;
  long truncation = 0;
  IntMatrix a;              // character matrix, k-scaled
  std::vector<long> steps;  // k / l_i
  std::map<Charge, QSeries> entries;

  const QSeries* find(const Charge& m) const;
  long quadratic(const Charge& m) const;  // m^T A m
};

/// Throws TwistedGramSingular if the twisted Gram matrix is singular and
/// NotPositiveDefinite if A is not.
CharacterTable character(const Lattice& lattice, long truncation, Exec exec = Exec::parallel);
/// Raw form used by tests: any positive definite A with even diagonal.
CharacterTable character(const IntMatrix& a, const std::vector<long>& steps, int k, long truncation,
                         Exec exec = Exec::parallel);

/// Every charge m with m^T A m <= 2T, in lexicographic order.
std::vector<Charge> enumerate_charges(const IntMatrix& a, long truncation);

/// χ'(1, ..., 1; q).
QSeries at_ones(const CharacterTable& table);

nlohmann::ordered_json series_json(const QSeries& s);
nlohmann::ordered_json to_json(const CharacterTable& table);

/// χ'(x) = χ'(.., q^(k/l_i) x_i, ..) + x_i q^(A_ii/2) χ'(q^(A_1i) x_1, .., q^(A_di) x_d),
/// compared coefficientwise for every charge in the table. i is zero-based.
CheckReport check_recursion(const CharacterTable& table, int i);
/// A_{m+e_i} (1 - q^(k(m_i+1)/l_i)) = A_m q^(A_ii/2 + (A m)_i) for adjacent charges.
CheckReport check_coefficient_recursion(const CharacterTable& table, int i);

/// Partitions of n = 0..N with no part more than twice and no two parts differing by 1.
std::vector<BigInt> count_restricted_partitions(int max_n);

struct IdentityReport {
  std::string name;
  bool agrees = false;
  long compared_to = 0;
  std::string detail;  // first mismatch or "agree through q^N"
  std::vector<BigInt> sum_side;
  std::vector<BigInt> product_side;
  bool is_stated_form = true;
};

/// "x3": sum side vs brute-force partition count.
/// "x4": sum side vs the stated product, plus the modulus-9 variant
/// (is_stated_form = false). Coefficients are in the example's variable,
/// that is normalized exponents halved.
std::vector<IdentityReport> verify_partition_identity(const std::string& preset_name, long order);

nlohmann::ordered_json to_json(const std::vector<IdentityReport>& reports);

}  // namespace tpsp

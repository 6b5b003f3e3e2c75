#pragma once

#include "tpsp/common.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tpsp {

int euler_phi(int n);

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<BigInt> cyclotomic_polynomial(int n);

/// Q(η) for η a primitive k-th root of unity, presented as Q[x]/Φ_k(x).
///
/// Instances are interned per conductor and immutable, so elements can share
/// one through a pointer and compare fields by address.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(int conductor);

  int conductor() const noexcept { return conductor_; }
  int degree() const noexcept { return degree_; }
  const std::vector<BigInt>& modulus() const noexcept { return modulus_; }

  /// x^(degree + j) mod Φ_k for 0 <= j < degree - 1.
  const std::vector<std::vector<Rational>>& high_powers() const noexcept { return high_powers_; }

  /// Reduced coefficients of η^e, 0 <= e < conductor.
  const std::vector<Rational>& eta_power(int e) const { return eta_powers_[e]; }

  explicit CyclotomicField(int conductor);

 private:
  int conductor_;
  int degree_;
  std::vector<BigInt> modulus_;
  std::vector<std::vector<Rational>> high_powers_;
  std::vector<std::vector<Rational>> eta_powers_;
};

/// Exact element of Q(η_k), stored as the unique representative of degree
/// below φ(k). Elements of different conductors never mix; the caller embeds
/// explicitly when needed.
class CyclotomicScalar {
 public:
  CyclotomicScalar() : CyclotomicScalar(1) {}
  explicit CyclotomicScalar(int conductor);
  CyclotomicScalar(int conductor, const Rational& value);

  static CyclotomicScalar from_coeffs(int conductor, std::vector<Rational> coeffs);
  /// η^e in Q(η_conductor); e may be negative.
  static CyclotomicScalar eta_power(int conductor, long e);

  int conductor() const noexcept { return field_->conductor(); }
  const CyclotomicField& field() const noexcept { return *field_; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept;
  /// Throws InvalidInput unless is_rational().
  Rational to_rational() const;

  CyclotomicScalar inverse() const;
  CyclotomicScalar pow(long e) const;

  CyclotomicScalar& operator+=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator-=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator*=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator/=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator*=(const Rational& rhs);

  friend CyclotomicScalar operator+(CyclotomicScalar a, const CyclotomicScalar& b) { return a += b; }
  friend CyclotomicScalar operator-(CyclotomicScalar a, const CyclotomicScalar& b) { return a -= b; }
  friend CyclotomicScalar operator*(CyclotomicScalar a, const CyclotomicScalar& b) { return a *= b; }
  friend CyclotomicScalar operator/(CyclotomicScalar a, const CyclotomicScalar& b) { return a /= b; }
  friend CyclotomicScalar operator*(CyclotomicScalar a, const Rational& b) { return a *= b; }
  CyclotomicScalar operator-() const;

  friend bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b);

  /// Polynomial in η with rational coefficients, e.g. "1/2 - 3*η^2".
  std::string to_string() const;

 private:
  void require_same_field(const CyclotomicScalar& other) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;
};

/// η^(k/m) inside Q(η_k): a primitive m-th root of unity. Throws NotADivisor.
CyclotomicScalar root_of_unity(int k, int m);

/// z(z-1)...(z-m+1)/m!, with rational_binomial(z, 0) = 1.
Rational rational_binomial(const Rational& z, int m);

}  // namespace tpsp

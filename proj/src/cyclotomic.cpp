#include "tpsp/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace tpsp {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials where the divisor is monic.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

// Polynomial long division over Q; returns {quotient, remainder}.
std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
  Poly quot;
  const std::size_t dn = den.size() - 1;
  if (num.size() >= den.size()) quot.assign(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    if (num[i] == 0) continue;
    Rational c = num[i] / den.back();
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  trim(num);
  trim(quot);
  return {quot, num};
}

Poly mul_poly(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Poly sub_poly(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

int euler_phi(int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "euler_phi of non-positive integer");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<BigInt> cyclotomic_polynomial(int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "cyclotomic polynomial index must be positive");
  // x^n - 1 divided by Φ_d for every proper divisor d.
  std::vector<BigInt> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

CyclotomicField::CyclotomicField(int conductor)
    : conductor_(conductor), degree_(euler_phi(conductor)), modulus_(cyclotomic_polynomial(conductor)) {
  const int n = degree_;
  // Start from x^n = -(Φ - x^n) and multiply by x repeatedly.
  std::vector<Rational> cur(n, 0);
  for (int i = 0; i < n; ++i) cur[i] = -Rational(modulus_[i]);
  for (int j = 0; j + 1 < n; ++j) {
    high_powers_.push_back(cur);
    const Rational top = cur[n - 1];
    for (int i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int i = 0; i < n; ++i) cur[i] -= top * Rational(modulus_[i]);
    }
  }

  std::vector<Rational> power(n, 0);
  power[0] = 1;
  for (int e = 0; e < conductor_; ++e) {
    eta_powers_.push_back(power);
    const Rational top = power[n - 1];
    for (int i = n - 1; i > 0; --i) power[i] = power[i - 1];
    power[0] = 0;
    if (top != 0) {
      for (int i = 0; i < n; ++i) power[i] -= top * Rational(modulus_[i]);
    }
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int conductor) {
  if (conductor < 1) throw Error(Errc::InvalidInput, "conductor must be positive, got " + std::to_string(conductor));
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[conductor];
  if (!slot) slot = std::make_shared<const CyclotomicField>(conductor);
  return slot;
}

CyclotomicScalar::CyclotomicScalar(int conductor)
    : field_(CyclotomicField::get(conductor)), coeffs_(field_->degree(), 0) {}

CyclotomicScalar::CyclotomicScalar(int conductor, const Rational& value) : CyclotomicScalar(conductor) {
  coeffs_[0] = value;
}

CyclotomicScalar CyclotomicScalar::from_coeffs(int conductor, std::vector<Rational> coeffs) {
  CyclotomicScalar out(conductor);
  const auto& field = *out.field_;
  const int n = field.degree();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (static_cast<int>(i) < n) {
      out.coeffs_[i] += coeffs[i];
    } else {
      // x^i with i >= n: reduce through x^(i mod k) and the power table.
      const auto& red = field.eta_power(static_cast<int>(i % field.conductor()));
      for (int j = 0; j < n; ++j) out.coeffs_[j] += coeffs[i] * red[j];
    }
  }
  return out;
}

CyclotomicScalar CyclotomicScalar::eta_power(int conductor, long e) {
  CyclotomicScalar out(conductor);
  long r = e % conductor;
  if (r < 0) r += conductor;
  out.coeffs_ = out.field_->eta_power(static_cast<int>(r));
  return out;
}

bool CyclotomicScalar::is_zero() const noexcept {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool CyclotomicScalar::is_one() const noexcept {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

bool CyclotomicScalar::is_rational() const noexcept {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

Rational CyclotomicScalar::to_rational() const {
  if (!is_rational()) throw Error(Errc::InvalidInput, "element " + to_string() + " is not rational");
  return coeffs_[0];
}

void CyclotomicScalar::require_same_field(const CyclotomicScalar& other) const {
  if (field_ != other.field_) {
    throw Error(Errc::ConductorMismatch, "conductors " + std::to_string(conductor()) + " and " +
                                             std::to_string(other.conductor()));
  }
}

CyclotomicScalar& CyclotomicScalar::operator+=(const CyclotomicScalar& rhs) {
  require_same_field(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (rhs.coeffs_[i] != 0) coeffs_[i] += rhs.coeffs_[i];
  }
  return *this;
}

CyclotomicScalar& CyclotomicScalar::operator-=(const CyclotomicScalar& rhs) {
  require_same_field(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (rhs.coeffs_[i] != 0) coeffs_[i] -= rhs.coeffs_[i];
  }
  return *this;
}

CyclotomicScalar& CyclotomicScalar::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) {
    if (c != 0) c *= rhs;
  }
  return *this;
}

CyclotomicScalar& CyclotomicScalar::operator*=(const CyclotomicScalar& rhs) {
  require_same_field(rhs);
  const int n = field_->degree();
  if (n == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  if (rhs.is_rational()) return *this *= rhs.coeffs_[0];
  if (is_rational()) {
    const Rational c = coeffs_[0];
    coeffs_ = rhs.coeffs_;
    return *this *= c;
  }
  std::vector<Rational> prod(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  const auto& high = field_->high_powers();
  for (int e = n; e < 2 * n - 1; ++e) {
    if (prod[e] == 0) continue;
    const auto& red = high[e - n];
    for (int j = 0; j < n; ++j) {
      if (red[j] != 0) prod[j] += prod[e] * red[j];
    }
  }
  prod.resize(n);
  coeffs_ = std::move(prod);
  return *this;
}

CyclotomicScalar CyclotomicScalar::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero in Q(eta_" + std::to_string(conductor()) + ")");
  if (is_rational()) return CyclotomicScalar(conductor(), 1 / coeffs_[0]);

  // Extended Euclid on (Φ_k, a): track s with s*a ≡ r (mod Φ_k).
  Poly modulus(field_->modulus().begin(), field_->modulus().end());
  Poly a(coeffs_.begin(), coeffs_.end());
  trim(a);
  Poly r0 = modulus, r1 = a;
  Poly s0 = {}, s1 = {Rational(1)};
  while (!(r1.size() == 1)) {
    auto [q, r] = divmod(r0, r1);
    Poly s = sub_poly(s0, mul_poly(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // Φ_k is irreducible, so the last non-zero remainder is a constant.
  const Rational c = r1[0];
  auto [unused, rem] = divmod(s1, modulus);
  std::vector<Rational> out(field_->degree(), 0);
  for (std::size_t i = 0; i < rem.size(); ++i) out[i] = rem[i] / c;
  CyclotomicScalar result(conductor());
  result.coeffs_ = std::move(out);
  return result;
}

CyclotomicScalar& CyclotomicScalar::operator/=(const CyclotomicScalar& rhs) {
  require_same_field(rhs);
  if (rhs.is_rational()) {
    if (rhs.coeffs_[0] == 0) throw Error(Errc::DivisionByZero, "division by zero");
    return *this *= Rational(1 / rhs.coeffs_[0]);
  }
  return *this *= rhs.inverse();
}

CyclotomicScalar CyclotomicScalar::pow(long e) const {
  CyclotomicScalar base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  CyclotomicScalar result(conductor(), 1);
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

CyclotomicScalar CyclotomicScalar::operator-() const {
  CyclotomicScalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b) {
  return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

std::string CyclotomicScalar::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "η";
    if (i > 1) out << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

CyclotomicScalar root_of_unity(int k, int m) {
  if (k < 1 || m < 1 || k % m != 0) {
    throw Error(Errc::NotADivisor, std::to_string(m) + " does not divide conductor " + std::to_string(k));
  }
  return CyclotomicScalar::eta_power(k, k / m);
}

Rational rational_binomial(const Rational& z, int m) {
  if (m < 0) throw Error(Errc::InvalidInput, "binomial lower index must be non-negative");
  Rational result = 1;
  for (int j = 0; j < m; ++j) {
    result *= (z - j);
    result /= (j + 1);
  }
  return result;
}

}  // namespace tpsp

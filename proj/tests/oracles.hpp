#pragma once

// Test-only reference computations. Nothing here calls into the series or
// elimination code under test; they are slow, direct, and easy to audit.

#include "tpsp/cyclotomic.hpp"
#include "tpsp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using tpsp::BigInt;
using tpsp::CyclotomicScalar;
using tpsp::Rational;

using Complex = std::complex<long double>;

/// Numeric value under η -> exp(2πi/k).
inline Complex embed(const CyclotomicScalar& s) {
  const long double pi = std::acos(-1.0L);
  Complex acc = 0;
  auto c = s.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    long double v = c[j].get_d();
    acc += v * std::polar(1.0L, 2 * pi * j / s.conductor());
  }
  return acc;
}

inline bool close(Complex a, Complex b, long double tol = 1e-6L) {
  return std::abs(a - b) <= tol * (1 + std::abs(a) + std::abs(b));
}

/// Sum over permutations. Fine up to n = 6.
inline CyclotomicScalar leibniz_det(const tpsp::ExactMatrix& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  CyclotomicScalar total(m.conductor());
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (p[a] > p[b]) ++inversions;
    CyclotomicScalar term(m.conductor(), Rational(inversions % 2 ? -1 : 1));
    for (std::size_t r = 0; r < n; ++r) term *= m.at(r, p[r]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Partitions of n into parts of size at most m.
inline BigInt bounded_partitions(long n, long m) {
  static std::map<std::pair<long, long>, BigInt> memo;
  if (n == 0) return 1;
  if (n < 0 || m <= 0) return 0;
  auto key = std::make_pair(n, m);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  // either no part equals m, or remove one part m
  BigInt v = bounded_partitions(n, m - 1) + bounded_partitions(n - m, m);
  memo.emplace(key, v);
  return v;
}

/// Coefficient of q^n in q^(m^T A m / 2) prod_i 1/(q^s_i; q^s_i)_{m_i}:
/// tuples of partitions, the i-th with at most m_i parts, each part scaled by s_i.
inline BigInt character_coefficient(const std::vector<std::vector<long>>& a, const std::vector<long>& steps,
                                    const std::vector<int>& m, long n) {
  long quad = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) quad += m[i] * a[i][j] * m[j];
  long rest = n - quad / 2;
  if (rest < 0) return 0;
  std::function<BigInt(std::size_t, long)> go = [&](std::size_t i, long left) -> BigInt {
    if (i == m.size()) return left == 0 ? 1 : 0;
    BigInt acc = 0;
    for (long used = 0; used <= left; used += steps[i])
      acc += bounded_partitions(used / steps[i], m[i]) * go(i + 1, left - used);
    return acc;
  };
  return go(0, rest);
}

/// Dense series helpers on plain vectors, index = exponent.
using Dense = std::vector<BigInt>;

inline Dense dense_mul(const Dense& f, const Dense& g) {
  Dense h(f.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; i + j < h.size(); ++j) h[i + j] += f[i] * g[j];
  }
  return h;
}

/// f / (1 - q^e), by running sums.
inline Dense divide_one_minus(Dense f, std::size_t e) {
  for (std::size_t i = e; i < f.size(); ++i) f[i] += f[i - e];
  return f;
}

/// Σ_m q^(m²) / (q;q)_m through q^order.
inline Dense rogers_ramanujan_sum(std::size_t order) {
  Dense total(order + 1, 0);
  for (std::size_t m = 0; m * m <= order; ++m) {
    Dense term(order + 1, 0);
    term[m * m] = 1;
    for (std::size_t j = 1; j <= m; ++j) term = divide_one_minus(term, j);
    for (std::size_t i = 0; i <= order; ++i) total[i] += term[i];
  }
  return total;
}

/// Partitions of n with every pair of parts differing by at least 2.
inline Dense distinct_gap_two(std::size_t order) {
  Dense counts(order + 1, 0);
  // descending parts, each at most the previous minus 2
  std::function<BigInt(long, long)> ways = [&](long n, long max_part) -> BigInt {
    if (n == 0) return 1;
    BigInt acc = 0;
    for (long p = std::min(n, max_part); p >= 1; --p) acc += ways(n - p, p - 2);
    return acc;
  };
  for (std::size_t n = 0; n <= order; ++n) counts[n] = ways(n, n);
  return counts;
}

/// Partitions where no part appears more than twice and no two parts differ by 1,
/// enumerated over multiplicity vectors from the largest part down.
inline Dense bressoud_type(std::size_t order) {
  Dense counts(order + 1, 0);
  std::function<BigInt(long, long, bool)> ways = [&](long n, long part, bool upper_used) -> BigInt {
    if (n == 0) return 1;
    if (part == 0) return 0;
    BigInt acc = ways(n, part - 1, false);
    if (!upper_used)
      for (long mult = 1; mult <= 2 && mult * part <= n; ++mult) acc += ways(n - mult * part, part - 1, true);
    return acc;
  };
  for (std::size_t n = 0; n <= order; ++n) counts[n] = ways(n, n, false);
  return counts;
}

/// Coefficients of prod over parts p of 1/(1-q^p)^mult(p), where mult(p) is the number
/// of hits of p among the given predicates.
inline Dense product_of_geometric(std::size_t order, const std::function<int(long)>& multiplicity) {
  Dense f(order + 1, 0);
  f[0] = 1;
  for (long p = 1; p <= static_cast<long>(order); ++p)
    for (int c = multiplicity(p); c > 0; --c) f = divide_one_minus(f, p);
  return f;
}

/// Random rational with numerator and denominator in [-9, 9], denominator nonzero.
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline CyclotomicScalar random_scalar(std::mt19937_64& rng, int conductor) {
  int deg = tpsp::euler_phi(conductor);
  std::vector<Rational> c(deg);
  for (auto& x : c) x = random_rational(rng);
  return CyclotomicScalar::from_coeffs(conductor, c);
}

}  // namespace oracle

#include "tpsp/qseries.hpp"

#include "tpsp/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace tpsp {

namespace {

std::string charge_str(const Charge& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

QSeries from_dense(const std::vector<BigInt>& c, long truncation) {
  QSeries out(truncation);
  for (std::size_t n = 0; n < c.size(); ++n) out.add_term(static_cast<long>(n), c[n]);
  return out;
}

// Smallest exponent at which two equally truncated series differ, or -1.
long first_mismatch(const QSeries& a, const QSeries& b) {
  const long t = std::min(a.truncation(), b.truncation());
  for (long n = 0; n <= t; ++n) {
    if (a.coeff(n) != b.coeff(n)) return n;
  }
  return -1;
}

}  // namespace

QSeries::QSeries(long truncation) : truncation_(truncation) {
  if (truncation < 0) throw Error(Errc::InvalidInput, "truncation order must be non-negative");
}

QSeries QSeries::one(long truncation) { return monomial(truncation, 0); }

QSeries QSeries::monomial(long truncation, long exponent, const BigInt& coeff) {
  QSeries out(truncation);
  out.add_term(exponent, coeff);
  return out;
}

BigInt QSeries::coeff(long n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void QSeries::add_term(long n, const BigInt& c) {
  if (n < 0) throw Error(Errc::InvalidInput, "negative exponent " + std::to_string(n));
  if (n > truncation_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QSeries QSeries::shifted(long s) const {
  if (s < 0) throw Error(Errc::InvalidInput, "negative shift");
  QSeries out(truncation_);
  for (const auto& [n, c] : terms_) {
    if (n + s > truncation_) break;
    out.terms_.emplace(n + s, c);
  }
  return out;
}

QSeries QSeries::truncated(long order) const {
  if (order > truncation_) {
    throw Error(Errc::InvalidInput, "cannot extend a series known to q^" + std::to_string(truncation_) + " to q^" +
                                        std::to_string(order));
  }
  QSeries out(order);
  for (const auto& [n, c] : terms_) {
    if (n > order) break;
    out.terms_.emplace(n, c);
  }
  return out;
}

QSeries QSeries::scaled(long factor) const {
  if (factor < 1) throw Error(Errc::InvalidInput, "substitution factor must be positive");
  QSeries out(truncation_);
  for (const auto& [n, c] : terms_) {
    if (n * factor > truncation_) break;
    out.terms_.emplace(n * factor, c);
  }
  return out;
}

QSeries QSeries::decimated(long factor) const {
  if (factor < 1) throw Error(Errc::InvalidInput, "substitution factor must be positive");
  QSeries out(truncation_ / factor);
  for (const auto& [n, c] : terms_) {
    if (n % factor != 0) {
      throw Error(Errc::InvalidInput, "exponent " + std::to_string(n) + " is not divisible by " + std::to_string(factor));
    }
    if (n / factor <= out.truncation_) out.terms_.emplace(n / factor, c);
  }
  return out;
}

QSeries QSeries::reciprocal() const {
  const BigInt c0 = coeff(0);
  if (c0 != 1 && c0 != -1) throw Error(Errc::DivisionByZero, "reciprocal needs constant term ±1");
  const auto f = dense();
  std::vector<BigInt> g(static_cast<std::size_t>(truncation_ + 1));
  g[0] = c0;  // 1/c0 = c0 for c0 = ±1
  for (long n = 1; n <= truncation_; ++n) {
    BigInt acc = 0;
    for (long j = 1; j <= n; ++j) {
      if (f[j] != 0) acc += f[j] * g[n - j];
    }
    g[n] = -c0 * acc;
  }
  return from_dense(g, truncation_);
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  truncation_ = std::min(truncation_, rhs.truncation_);
  while (!terms_.empty() && terms_.rbegin()->first > truncation_) terms_.erase(std::prev(terms_.end()));
  for (const auto& [n, c] : rhs.terms_) add_term(n, c);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) {
  truncation_ = std::min(truncation_, rhs.truncation_);
  while (!terms_.empty() && terms_.rbegin()->first > truncation_) terms_.erase(std::prev(terms_.end()));
  for (const auto& [n, c] : rhs.terms_) add_term(n, -c);
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const long t = std::min(a.truncation_, b.truncation_);
  std::vector<BigInt> acc(static_cast<std::size_t>(t + 1));
  for (const auto& [n1, c1] : a.terms_) {
    if (n1 > t) break;
    for (const auto& [n2, c2] : b.terms_) {
      if (n1 + n2 > t) break;
      acc[n1 + n2] += c1 * c2;
    }
  }
  return from_dense(acc, t);
}

std::vector<BigInt> QSeries::dense() const {
  std::vector<BigInt> out(static_cast<std::size_t>(truncation_ + 1));
  for (const auto& [n, c] : terms_) out[n] = c;
  return out;
}

std::string QSeries::to_string() const {
  if (terms_.empty()) return "0 + O(q^" + std::to_string(truncation_ + 1) + ")";
  std::ostringstream out;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    const bool neg = c < 0;
    const BigInt mag = neg ? BigInt(-c) : c;
    out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (n == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "q";
    if (n != 1) out << "^" << n;
  }
  out << " + O(q^" << truncation_ + 1 << ")";
  return out.str();
}

QSeries poch_inverse(long b, long m, long truncation) {
  if (b < 1 || m < 0) throw Error(Errc::InvalidInput, "poch_inverse needs b >= 1 and m >= 0");
  std::vector<BigInt> dp(static_cast<std::size_t>(truncation + 1));
  dp[0] = 1;
  for (long j = 1; j <= m; ++j) {
    const long part = j * b;
    for (long n = part; n <= truncation; ++n) dp[n] += dp[n - part];
  }
  return from_dense(dp, truncation);
}

QSeries poch_finite(long b, long m, long truncation) {
  if (b < 1 || m < 0) throw Error(Errc::InvalidInput, "poch_finite needs b >= 1 and m >= 0");
  std::vector<BigInt> p(static_cast<std::size_t>(truncation + 1));
  p[0] = 1;
  for (long j = 1; j <= m; ++j) {
    const long e = j * b;
    for (long n = truncation; n >= e; --n) p[n] -= p[n - e];
  }
  return from_dense(p, truncation);
}

QSeries poch_infinite(long a, long step, long truncation) {
  if (a < 1 || step < 1) throw Error(Errc::InvalidInput, "poch_infinite needs a >= 1 and step >= 1");
  std::vector<BigInt> p(static_cast<std::size_t>(truncation + 1));
  p[0] = 1;
  for (long e = a; e <= truncation; e += step) {
    for (long n = truncation; n >= e; --n) p[n] -= p[n - e];
  }
  return from_dense(p, truncation);
}

const QSeries* CharacterTable::find(const Charge& m) const {
  auto it = entries.find(m);
  return it == entries.end() ? nullptr : &it->second;
}

long CharacterTable::quadratic(const Charge& m) const {
  long q = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) q += static_cast<long>(m[i]) * a[i][j] * m[j];
  return q;
}

std::vector<Charge> enumerate_charges(const IntMatrix& a, long truncation) {
  const int d = static_cast<int>(a.size());
  if (!is_positive_definite(a)) throw Error(Errc::NotPositiveDefinite, "character matrix A is not positive definite");
  // m_i^2 <= (A^-1)_ii m^T A m, so the box below holds every charge with m^T A m <= 2T.
  std::vector<std::vector<Rational>> rows(d);
  for (int i = 0; i < d; ++i)
    for (long v : a[i]) rows[i].emplace_back(v);
  const ExactMatrix inv = inverse(ExactMatrix::from_rationals(rows));
  std::vector<int> bound(d);
  for (int i = 0; i < d; ++i) {
    const Rational cap = inv.at(i, i).to_rational() * (2 * truncation);
    BigInt floor_cap = cap.get_num() / cap.get_den();
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), floor_cap.get_mpz_t());
    bound[i] = static_cast<int>(root.get_si());
  }
  std::vector<Charge> out;
  Charge m(d, 0);
  while (true) {
    long q = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) q += static_cast<long>(m[i]) * a[i][j] * m[j];
    if (q <= 2 * truncation) out.push_back(m);
    int pos = d - 1;
    while (pos >= 0 && m[pos] == bound[pos]) m[pos--] = 0;
    if (pos < 0) break;
    ++m[pos];
  }
  return out;
}

CharacterTable character(const IntMatrix& a, const std::vector<long>& steps, int k, long truncation, Exec exec) {
  const int d = static_cast<int>(a.size());
  if (static_cast<int>(steps.size()) != d) throw Error(Errc::DimensionMismatch, "one step per orbit required");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(a[i].size()) != d) throw Error(Errc::DimensionMismatch, "A is not square");
    if (a[i][i] % 2 != 0) throw Error(Errc::NonIntegralCharacterMatrix, "A has an odd diagonal entry");
  }
  CharacterTable table;
  table.d = d;
  table.k = k;
  table.truncation = truncation;
  table.a = a;
  table.steps = steps;
  const auto charges = enumerate_charges(a, truncation);
  std::vector<QSeries> series(charges.size());
  auto run = [&](std::size_t idx) {
    const Charge& m = charges[idx];
    const long lead = table.quadratic(m) / 2;
    QSeries s = QSeries::monomial(truncation, lead);
    for (int i = 0; i < d; ++i) {
      if (m[i] > 0) s = s * poch_inverse(steps[i], m[i], truncation);
    }
    series[idx] = std::move(s);
  };
  const auto count = static_cast<std::ptrdiff_t>(charges.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  }
  for (std::size_t i = 0; i < charges.size(); ++i) table.entries.emplace(charges[i], std::move(series[i]));
  return table;
}

CharacterTable character(const Lattice& lattice, long truncation, Exec exec) {
  if (!twisted_gram_invertible(lattice.pairings)) {
    throw Error(Errc::TwistedGramSingular, "twisted Gram matrix is singular; the character formula does not apply");
  }
  std::vector<long> steps;
  for (int l : lattice.orbits.lengths) steps.push_back(lattice.k() / l);
  return character(lattice.pairings.char_matrix, steps, lattice.k(), truncation, exec);
}

QSeries at_ones(const CharacterTable& table) {
  QSeries out(table.truncation);
  for (const auto& [m, s] : table.entries) out += s;
  return out;
}

nlohmann::ordered_json series_json(const QSeries& s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [n, c] : s.terms()) out[std::to_string(n)] = c.get_str();
  return out;
}

nlohmann::ordered_json to_json(const CharacterTable& table) {
  nlohmann::ordered_json out;
  out["d"] = table.d;
  out["k"] = table.k;
  out["truncation"] = table.truncation;
  out["normalization"] = "k-weight-shifted";
  auto charges = nlohmann::ordered_json::array();
  for (const auto& [m, s] : table.entries) {
    nlohmann::ordered_json entry;
    entry["m"] = m;
    entry["series"] = series_json(s);
    charges.push_back(std::move(entry));
  }
  out["charges"] = std::move(charges);
  return out;
}

CheckReport check_recursion(const CharacterTable& table, int i) {
  if (i < 0 || i >= table.d) throw Error(Errc::InvalidInput, "orbit index outside the table");
  const long t = table.truncation;
  const QSeries zero(t);
  // Charges present plus their e_i neighbours; anything else is zero on both sides.
  std::vector<Charge> cells;
  for (const auto& [m, s] : table.entries) {
    cells.push_back(m);
    Charge up = m;
    ++up[i];
    if (!table.find(up)) cells.push_back(up);
  }
  std::sort(cells.begin(), cells.end());
  CheckReport report;
  for (const auto& m : cells) {
    const QSeries* here = table.find(m);
    const QSeries lhs = here ? *here : zero;
    QSeries rhs = here ? here->shifted(table.steps[i] * m[i]) : zero;
    if (m[i] > 0) {
      Charge down = m;
      --down[i];
      if (const QSeries* prev = table.find(down)) {
        long shift = table.a[i][i] / 2;
        for (int j = 0; j < table.d; ++j) shift += table.a[j][i] * down[j];
        rhs += prev->shifted(shift);
      }
    }
    report.checked += t + 1;
    if (const long n = first_mismatch(lhs, rhs); n >= 0) {
      return CheckReport::fail("RecursionMismatch: i=" + std::to_string(i + 1) + " m=" + charge_str(m) +
                               " n=" + std::to_string(n) + ": lhs " + lhs.coeff(n).get_str() + ", rhs " +
                               rhs.coeff(n).get_str());
    }
  }
  return report;
}

CheckReport check_coefficient_recursion(const CharacterTable& table, int i) {
  if (i < 0 || i >= table.d) throw Error(Errc::InvalidInput, "orbit index outside the table");
  const long t = table.truncation;
  CheckReport report;
  for (const auto& [m, s] : table.entries) {
    Charge up = m;
    ++up[i];
    const QSeries* next = table.find(up);
    if (!next) continue;
    QSeries factor = QSeries::one(t);
    factor -= QSeries::monomial(t, table.steps[i] * (m[i] + 1));
    const QSeries lhs = *next * factor;
    long shift = table.a[i][i] / 2;
    for (int j = 0; j < table.d; ++j) shift += table.a[j][i] * m[j];
    const QSeries rhs = s.shifted(shift);
    report.checked += t + 1;
    if (const long n = first_mismatch(lhs, rhs); n >= 0) {
      return CheckReport::fail("Mismatch: i=" + std::to_string(i + 1) + " m=" + charge_str(m) + " n=" +
                               std::to_string(n) + ": lhs " + lhs.coeff(n).get_str() + ", rhs " +
                               rhs.coeff(n).get_str());
    }
  }
  return report;
}

std::vector<BigInt> count_restricted_partitions(int max_n) {
  std::vector<BigInt> counts(static_cast<std::size_t>(max_n + 1));
  std::vector<int> parts;
  // Walk every partition of every n <= max_n in non-increasing part order,
  // testing the conditions only on complete partitions.
  auto admissible = [&]() {
    for (std::size_t a = 0; a < parts.size(); ++a) {
      int mult = 0;
      for (int p : parts) {
        if (p == parts[a]) ++mult;
        if (p == parts[a] + 1) return false;
      }
      if (mult > 2) return false;
    }
    return true;
  };
  auto walk = [&](auto&& self, int remaining, int max_part, int total) -> void {
    if (admissible()) counts[total] += 1;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p, total + p);
      parts.pop_back();
    }
  };
  walk(walk, max_n, max_n, 0);
  return counts;
}

namespace {

IdentityReport compare(std::string name, const QSeries& sum, const QSeries& product, long order) {
  IdentityReport r;
  r.name = std::move(name);
  r.compared_to = order;
  r.sum_side = sum.truncated(order).dense();
  r.product_side = product.truncated(order).dense();
  r.agrees = true;
  for (long n = 0; n <= order; ++n) {
    if (r.sum_side[n] != r.product_side[n]) {
      r.agrees = false;
      r.detail = "first mismatch at q^" + std::to_string(n) + ": sum side " + r.sum_side[n].get_str() +
                 ", product side " + r.product_side[n].get_str();
      return r;
    }
  }
  r.detail = "agree through q^" + std::to_string(order);
  return r;
}

// χ'(1,1) in the example's variable: normalized exponents are all even and halve.
QSeries example_sum_side(const std::string& preset_name, long order) {
  const auto lattice = Lattice::from_input(preset(preset_name));
  const auto table = character(lattice, 2 * order);
  return at_ones(table).decimated(2);
}

}  // namespace

std::vector<IdentityReport> verify_partition_identity(const std::string& preset_name, long order) {
  if (order < 0) throw Error(Errc::InvalidInput, "order must be non-negative");
  std::vector<IdentityReport> out;
  if (preset_name == "x3") {
    const QSeries sum = example_sum_side("x3", order);
    const auto counts = count_restricted_partitions(static_cast<int>(order));
    QSeries count_series(order);
    for (long n = 0; n <= order; ++n) count_series.add_term(n, counts[n]);
    out.push_back(compare("x3: sum side vs partitions (multiplicity <= 2, no parts differing by 1)", sum,
                          count_series, order));
  } else if (preset_name == "x4") {
    const QSeries sum = example_sum_side("x4", order);
    QSeries printed = QSeries::one(order);
    for (long a : {1, 3, 6, 9}) printed = printed * poch_infinite(a, 1, order);
    out.push_back(compare("x4: sum side vs 1/(q,q^3,q^6,q^9;q)_inf (stated product)", sum, printed.reciprocal(), order));
    QSeries mod9 = QSeries::one(order);
    for (long a : {1, 3, 6, 8}) mod9 = mod9 * poch_infinite(a, 9, order);
    auto variant = compare("x4: sum side vs 1/(q,q^3,q^6,q^8;q^9)_inf (modulus-9 variant, not the stated product)", sum,
                           mod9.reciprocal(), order);
    variant.is_stated_form = false;
    out.push_back(std::move(variant));
  } else {
    throw Error(Errc::InvalidInput, "partition identities exist for presets x3 and x4 only");
  }
  return out;
}

nlohmann::ordered_json to_json(const std::vector<IdentityReport>& reports) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["stated_form"] = r.is_stated_form;
    j["agrees"] = r.agrees;
    j["order"] = r.compared_to;
    j["detail"] = r.detail;
    auto to_strings = [](const std::vector<BigInt>& v) {
      std::vector<std::string> s;
      for (const auto& c : v) s.push_back(c.get_str());
      return s;
    };
    j["sum_side"] = to_strings(r.sum_side);
    j["product_side"] = to_strings(r.product_side);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace tpsp

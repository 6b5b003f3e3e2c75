#pragma once

#include "tpsp/matrix.hpp"
#include "tpsp/qseries.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tpsp {

/// x_{α^(i)}(n) for n in Z_i^-, stored by normalized weight w = -n k > 0.
struct TwistedVariable {
  int orbit = 0;
  long weight = 0;

  friend auto operator<=>(const TwistedVariable&, const TwistedVariable&) = default;
};

struct Monomial {
  std::vector<TwistedVariable> vars;  // sorted by (orbit, weight)
  Charge charge;
  long weight = 0;

  static Monomial unit(int d);
  Monomial times(const Monomial& other) const;
  /// e.g. "x1(-1)x2(-1/2)"; mode indices are -w/k.
  std::string to_string(int k) const;

  friend bool operator<(const Monomial& a, const Monomial& b) { return a.vars < b.vars; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.vars == b.vars; }
};

struct RelationLabel {
  int i = 0, j = 0;  // ordered orbit pair, zero-based
  int r = 0;         // 0 <= r < l_i
  int m = 1;         // 1 <= m <= <ν^r α^(i), α^(j)>
  long weight = 0;   // t k
};

struct RelationGenerator {
  RelationLabel label;
  std::vector<std::pair<CyclotomicScalar, Monomial>> terms;  // merged, sorted by monomial
};

/// Alphabet and weight data shared by all oracle computations.
struct OracleContext {
  explicit OracleContext(const Lattice& lattice);

  const Lattice* lattice;
  int d;
  int k;
  std::vector<long> base;  // weight of the top mode -a_i, that is A_ii / 2
  std::vector<long> step;  // k / l_i

  bool in_alphabet(int orbit, long w) const { return w >= base[orbit] && (w - base[orbit]) % step[orbit] == 0; }
  /// Least weight of any monomial of this charge.
  long min_weight(const Charge& charge) const;
};

std::vector<Monomial> enumerate_monomials(const OracleContext& ctx, const Charge& charge, long weight);

/// R(i, j, r, m | t) for every admissible (r, m) at normalized weight t k.
/// Zero generators are kept. Empty when t k is not a sum of alphabet weights.
std::vector<RelationGenerator> build_relations(const OracleContext& ctx, int i, int j, long weight);

struct OracleOptions {
  int max_charge_total = 3;
  long max_weight = 24;
  std::size_t max_rows = 20000;
  std::size_t max_cols = 5000;
  /// Generators for which this returns true are left out (fault injection).
  std::function<bool(const RelationLabel&)> drop;
};

struct CellResult {
  Charge charge;
  long weight = 0;
  std::size_t monomials = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  BigInt coefficient = 0;  // from the character
  bool agrees = true;
  std::string error;
};

/// Dimension of the (charge, weight) piece of the quotient by the relation ideal.
/// Throws BudgetExceeded past the configured limits.
CellResult quotient_dimension(const OracleContext& ctx, const Charge& charge, long weight,
                              const OracleOptions& opts = {});

struct ComparisonReport {
  std::string lattice_name;
  int charge_bound = 0;
  long weight_bound = 0;
  std::vector<CellResult> cells;
  std::size_t mismatches = 0;

  bool passed() const { return mismatches == 0; }
  std::string table() const;
  nlohmann::ordered_json json() const;
};

/// Every charge with total <= charge_bound and every weight 0..weight_bound.
ComparisonReport compare_with_character(const Lattice& lattice, int charge_bound, long weight_bound,
                                        const OracleOptions& opts = {}, Exec exec = Exec::parallel);

struct MembershipResult {
  bool member = false;
  /// The x_j mode lies outside Z_j, so the product is not a variable of the ring.
  bool vacuous = false;
  std::size_t generators = 0;
};

/// Whether x_i(-a_i - s/l_i) x_j(-a_j - t/l_i) lies in the relation ideal.
/// Requires s, t >= 0 and s + t <= l_i <α^(i)_(0), α^(j)> - 1 (PreconditionViolated).
MembershipResult new_relations_membership(const OracleContext& ctx, int i, int j, int s, int t);

/// l_i <α^(i)_(0), α^(j)>, the size of the square system behind membership.
long membership_rank(const Lattice& lattice, int i, int j);

/// Square matrix with rows (r, m) and columns p:
/// η_{L_i}^(r(-a_i - p/l_i)L_i) binom(a_i + p/l_i - <α^(i),α^(i)>/2, m - 1).
ExactMatrix membership_matrix(const Lattice& lattice, int i, int j);

/// Checks membership_matrix row by row against the stacked binomial matrix
/// (unit multiples of its rows) and that both are invertible.
CheckReport membership_matrix_check(const Lattice& lattice, int i, int j);

struct MembershipSweep {
  long cases = 0;
  long vacuous = 0;
  long failures = 0;
  long matrices_checked = 0;
  std::vector<std::string> failure_messages;
  bool passed() const { return failures == 0; }
};

/// Every (i, j, s, t) in range, membership and matrix checks.
MembershipSweep new_relations_sweep(const Lattice& lattice, Exec exec = Exec::parallel);

}  // namespace tpsp

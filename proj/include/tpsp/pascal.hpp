#pragma once

#include "tpsp/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tpsp {

/// Stacked binomial matrix A = [A(0); ...; A(k-1)] where block r is N_r x N
/// with entry (i, p) = η^(p r) binom(z + p w, i) for η a primitive k-th root.
struct PascalSpec {
  int k = 1;
  std::vector<int> block_sizes;  // N_0..N_{k-1}
  Rational z;
  Rational w = 1;
  /// Field the entries live in; 0 means k. Must be a multiple of k.
  int field_conductor = 0;

  int total() const;
  int conductor() const { return field_conductor == 0 ? k : field_conductor; }
};

/// Throws PreconditionViolated unless N >= 1, w != 0 and block_sizes has k entries.
void check_spec(const PascalSpec& spec);

ExactMatrix build_block(const PascalSpec& spec, int r);
ExactMatrix build_stacked(const PascalSpec& spec);

struct Invertibility {
  bool invertible = false;
  CyclotomicScalar det;
};
Invertibility verify_invertible(const PascalSpec& spec);

/// A_x(z, w, p, q): p x q, entry (i, j) = x^j binom(z + j w, i).
ExactMatrix binomial_block(const CyclotomicScalar& x, const Rational& z, const Rational& w, int p, int q);
/// A'(x, p, q): p x q, entry (i, j) = x^j binom(j, i).
ExactMatrix pascal_prime(const CyclotomicScalar& x, int p, int q);

/// Rebuilds Z, M, H and the elimination matrices Q(n), Q, and checks
/// A = Z M H, every intermediate P(n) M = M(n), and P M = binom(j, i).
CheckReport factorization_check(const CyclotomicScalar& x, const Rational& z, const Rational& w, int p, int q);

/// Row equivalence of B = [A'(x,s,n); A'(y,t,n)] and B' = [A'(x,s,n); A'(y-x,t,n-s) C],
/// by ranks and by replaying (U')^-1 (V')^-1 Q' B = B'.
CheckReport two_blocks_check(const CyclotomicScalar& x, const CyclotomicScalar& y, int n, int s, int t);

struct TheoremCase {
  PascalSpec spec;
  bool invertible = false;
  std::string det;
  std::string error;  // set if the check threw
};

struct TheoremSweepOptions {
  int max_k = 4;
  int max_n = 6;
  int samples = 10;
  std::uint64_t seed = 7;
};

/// Every k <= max_k, every weak composition of N = 1..max_n into k parts,
/// `samples` seeded (z, w) pairs each. Cases come back in generation order.
std::vector<TheoremCase> theorem_sweep(const TheoremSweepOptions& opts, Exec exec = Exec::parallel);

struct LemmaCase {
  std::string kind;  // "factorization" or "two-blocks"
  std::string params;
  CheckReport report;
};

/// `instances` seeded random factorization_check and two_blocks_check cases
/// each, with p, q, n <= max_dim and x, y rational or cyclotomic.
std::vector<LemmaCase> lemma_sweep(int instances, int max_dim, std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace tpsp

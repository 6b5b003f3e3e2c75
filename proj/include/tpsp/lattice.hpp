#pragma once

#include "tpsp/common.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tpsp {

using IntMatrix = std::vector<std::vector<long>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// A Gram matrix in a fixed Z-basis together with a basis permutation.
/// `perm` is zero-based one-line notation: basis vector i maps to perm[i].
struct LatticeInput {
  int rank = 0;
  IntMatrix gram;
  std::vector<int> perm;
};

/// Cycle structure of the permutation and everything derived from it.
struct OrbitData {
  std::vector<std::vector<int>> cycles;  // cycles[r] = {rep, ν rep, ν² rep, ...}
  std::vector<int> reps;
  std::vector<int> lengths;
  int nu_order = 1;  // lcm of lengths
  int k = 2;         // twice the order
  std::vector<bool> evenness;
  std::vector<int> mode_denominator;  // L_i
  std::vector<Rational> z_offsets;    // Z_i = z_offsets[i] + (1/l_i)Z
  Rational vacuum_weight;

  int orbit_count() const noexcept { return static_cast<int>(cycles.size()); }
};

struct PairingTables {
  RationalMatrix zero_mode;  // <α^(i)_(0), α^(j)_(0)>
  IntMatrix char_matrix;     // k * zero_mode
  IntMatrix twisted_gram;    // <α[i], α[j]>
  std::vector<Rational> a_half;
  /// root_pairing[i][j][r] = <ν^r α^(i), α^(j)>, 0 <= r < l_i.
  std::vector<std::vector<std::vector<long>>> root_pairing;
  /// <α^(i), α^(i)>.
  std::vector<long> root_norm;
};

/// Validated input with all derived invariants. Immutable after construction.
struct Lattice {
  LatticeInput input;
  OrbitData orbits;
  PairingTables pairings;

  static Lattice from_input(LatticeInput input);
  int k() const noexcept { return orbits.k; }
  int orbit_count() const noexcept { return orbits.orbit_count(); }
};

OrbitData validate(const LatticeInput& input);
PairingTables pairings(const LatticeInput& input, const OrbitData& orbits);

/// Number of cycles whose eigenvalues include η^j, i.e. (k/l_r) | j.
int eigenspace_dim(const OrbitData& orbits, int j);
Rational vacuum_weight(const OrbitData& orbits);
bool twisted_gram_invertible(const PairingTables& tables);
/// max(0, max_r -<ν^r α_i, α_j>), zero-based basis indices.
long n_min(const LatticeInput& input, int i, int j);

/// Exact determinant of an integer matrix.
BigInt integer_determinant(const IntMatrix& m);
/// Leading principal minors all positive, checked exactly.
bool is_positive_definite(const RationalMatrix& m);
bool is_positive_definite(const IntMatrix& m);

std::vector<int> permutation_power(const std::vector<int>& perm, int power);

/// "1 3 2" (one-line, 1-based) or "(1)(2 3)" (cycles, 1-based).
std::vector<int> parse_permutation(std::string_view text, int rank);

/// Key/value text format:
///   rank = 3
///   gram = 2 1 1  1 2 0  1 0 2     (row-major; commas, brackets, ';' ignored)
///   perm = (1)(2 3)                (or one-line "1 3 2")
/// '#' starts a comment.
LatticeInput parse_lattice_config(std::string_view text);
LatticeInput load_lattice_config(const std::string& path);

/// rank1, swap2, x3, x4.
LatticeInput preset(std::string_view name);
const std::vector<std::string>& preset_names();

}  // namespace tpsp

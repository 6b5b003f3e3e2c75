#include "tpsp/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tpsp {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::string pair_str(int i, int j) { return "(" + idx(i) + "," + idx(j) + ")"; }

void check_shape(const LatticeInput& in) {
  if (in.rank < 1) throw Error(Errc::InvalidInput, "rank must be positive");
  if (static_cast<int>(in.gram.size()) != in.rank) {
    throw Error(Errc::InvalidInput, "gram has " + std::to_string(in.gram.size()) + " rows, rank is " +
                                        std::to_string(in.rank));
  }
  for (const auto& row : in.gram) {
    if (static_cast<int>(row.size()) != in.rank) throw Error(Errc::InvalidInput, "gram is not square");
  }
  if (static_cast<int>(in.perm.size()) != in.rank) {
    throw Error(Errc::InvalidInput, "permutation has " + std::to_string(in.perm.size()) + " entries, rank is " +
                                        std::to_string(in.rank));
  }
  std::vector<bool> seen(in.rank, false);
  for (int v : in.perm) {
    if (v < 0 || v >= in.rank || seen[v]) throw Error(Errc::InvalidInput, "perm is not a permutation of 1.." +
                                                                              std::to_string(in.rank));
    seen[v] = true;
  }
}

}  // namespace

BigInt integer_determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<BigInt>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (long v : m[i]) a[i].emplace_back(v);
  }
  BigInt prev = 1;
  bool negate = false;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  if (n == 0) return 1;
  return negate ? BigInt(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

bool is_positive_definite(const RationalMatrix& m) {
  const std::size_t n = m.size();
  // Gaussian elimination without pivoting: the pivots are ratios of
  // consecutive leading principal minors, so all minors are positive iff all
  // pivots are.
  RationalMatrix a = m;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c][c] <= 0) return false;
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return true;
}

bool is_positive_definite(const IntMatrix& m) {
  RationalMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (long v : m[i]) r[i].emplace_back(v);
  }
  return is_positive_definite(r);
}

std::vector<int> permutation_power(const std::vector<int>& perm, int power) {
  std::vector<int> out(perm.size());
  std::iota(out.begin(), out.end(), 0);
  for (int p = 0; p < power; ++p) {
    for (auto& v : out) v = perm[v];
  }
  return out;
}

OrbitData validate(const LatticeInput& in) {
  check_shape(in);
  const int n = in.rank;
  const auto& g = in.gram;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g[i][j] != g[j][i]) throw Error(Errc::NotSymmetric, "gram" + pair_str(i, j) + " != gram" + pair_str(j, i));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (g[i][i] <= 0 || g[i][i] % 2 != 0) {
      throw Error(Errc::NotEven, "diagonal entry gram" + pair_str(i, i) + " = " + std::to_string(g[i][i]) +
                                     " is not a positive even integer");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g[i][j] < 0) throw Error(Errc::NegativeEntry, "gram" + pair_str(i, j) + " = " + std::to_string(g[i][j]));
    }
  }
  if (!is_positive_definite(g)) throw Error(Errc::NotPositiveDefinite, "a leading principal minor of gram is not positive");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g[in.perm[i]][in.perm[j]] != g[i][j]) {
        throw Error(Errc::NotIsometry, "gram" + pair_str(in.perm[i], in.perm[j]) + " != gram" + pair_str(i, j));
      }
    }
  }

  OrbitData o;
  std::vector<bool> placed(n, false);
  for (int start = 0; start < n; ++start) {
    if (placed[start]) continue;
    std::vector<int> cycle;
    for (int v = start; !placed[v]; v = in.perm[v]) {
      placed[v] = true;
      cycle.push_back(v);
    }
    o.reps.push_back(start);
    o.lengths.push_back(static_cast<int>(cycle.size()));
    o.cycles.push_back(std::move(cycle));
  }
  o.nu_order = 1;
  for (int l : o.lengths) o.nu_order = std::lcm(o.nu_order, l);
  o.k = 2 * o.nu_order;

  for (std::size_t r = 0; r < o.cycles.size(); ++r) {
    const int l = o.lengths[r];
    bool even = true;
    if (l % 2 == 0) {
      const int rep = o.reps[r];
      const int half = o.cycles[r][l / 2];  // ν^(l/2) rep
      even = g[rep][half] % 2 == 0;
    }
    o.evenness.push_back(even);
    o.mode_denominator.push_back(even ? l : 2 * l);
    o.z_offsets.push_back(even ? Rational(0) : ratio(1, 2 * l));
  }
  o.vacuum_weight = vacuum_weight(o);
  return o;
}

int eigenspace_dim(const OrbitData& orbits, int j) {
  if (j < 0 || j >= orbits.k) throw Error(Errc::InvalidInput, "eigenspace index outside [0, k)");
  int count = 0;
  for (int l : orbits.lengths) {
    if (j % (orbits.k / l) == 0) ++count;
  }
  return count;
}

Rational vacuum_weight(const OrbitData& orbits) {
  const int k = orbits.k;
  Rational sum = 0;
  for (int j = 1; j < k; ++j) sum += Rational(j * (k - j) * eigenspace_dim(orbits, j));
  return sum / (4 * k * k);
}

PairingTables pairings(const LatticeInput& in, const OrbitData& o) {
  const int d = o.orbit_count();
  const auto& g = in.gram;
  PairingTables t;
  t.zero_mode.assign(d, std::vector<Rational>(d));
  t.char_matrix.assign(d, std::vector<long>(d));
  t.twisted_gram.assign(d, std::vector<long>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      long sum = 0;
      for (int a : o.cycles[i]) {
        for (int b : o.cycles[j]) sum += g[a][b];
      }
      t.twisted_gram[i][j] = sum;
      t.zero_mode[i][j] = Rational(sum, static_cast<long>(o.lengths[i]) * o.lengths[j]);
      t.zero_mode[i][j].canonicalize();
      const Rational scaled = t.zero_mode[i][j] * o.k;
      if (scaled.get_den() != 1) {
        throw Error(Errc::NonIntegralCharacterMatrix, "A" + pair_str(i, j) + " = " + scaled.get_str());
      }
      t.char_matrix[i][j] = scaled.get_num().get_si();
    }
  }
  for (int i = 0; i < d; ++i) {
    if (t.char_matrix[i][i] % 2 != 0) {
      throw Error(Errc::NonIntegralCharacterMatrix, "A" + pair_str(i, i) + " is odd, so m^T A m / 2 is not integral");
    }
    Rational a = t.zero_mode[i][i] / 2;
    // -a_i must lie in Z_i = z_i + (1/l_i)Z.
    Rational shifted = (-a - o.z_offsets[i]) * o.lengths[i];
    if (shifted.get_den() != 1) {
      throw Error(Errc::TopModeOutsideIndexSet, "-a_" + idx(i) + " = " + Rational(-a).get_str() +
                                                    " is not in the mode index set of orbit " + idx(i));
    }
    t.a_half.push_back(a);
    t.root_norm.push_back(g[o.reps[i]][o.reps[i]]);
  }
  t.root_pairing.assign(d, std::vector<std::vector<long>>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int r = 0; r < o.lengths[i]; ++r) t.root_pairing[i][j].push_back(g[o.cycles[i][r]][o.reps[j]]);
    }
  }
  return t;
}

bool twisted_gram_invertible(const PairingTables& tables) { return integer_determinant(tables.twisted_gram) != 0; }

long n_min(const LatticeInput& in, int i, int j) {
  if (i < 0 || j < 0 || i >= in.rank || j >= in.rank) throw Error(Errc::InvalidInput, "n_min index out of range");
  long best = 0;
  int v = i;
  do {
    best = std::max(best, -in.gram[v][j]);
    v = in.perm[v];
  } while (v != i);
  return best;
}

Lattice Lattice::from_input(LatticeInput input) {
  Lattice lat;
  lat.orbits = validate(input);
  lat.pairings = tpsp::pairings(input, lat.orbits);
  lat.input = std::move(input);
  return lat;
}

std::vector<int> parse_permutation(std::string_view text, int rank) {
  std::string s(text);
  std::vector<int> perm(rank);
  std::iota(perm.begin(), perm.end(), 0);
  auto bad = [&](const std::string& why) { return Error(Errc::InvalidInput, "permutation '" + s + "': " + why); };
  if (s.find('(') != std::string::npos) {
    std::vector<bool> seen(rank, false);
    std::size_t pos = 0;
    while ((pos = s.find('(', pos)) != std::string::npos) {
      const std::size_t close = s.find(')', pos);
      if (close == std::string::npos) throw bad("unbalanced parenthesis");
      std::string body = s.substr(pos + 1, close - pos - 1);
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream in(body);
      std::vector<int> cycle;
      std::string tok;
      while (in >> tok) {
        int v = 0;
        try {
          v = std::stoi(tok);
        } catch (const std::exception&) {
          throw bad("non-integer entry '" + tok + "'");
        }
        if (v < 1 || v > rank) throw bad("entry out of range 1.." + std::to_string(rank));
        if (seen[v - 1]) throw bad("entry " + std::to_string(v) + " repeated");
        seen[v - 1] = true;
        cycle.push_back(v - 1);
      }
      for (std::size_t c = 0; c < cycle.size(); ++c) perm[cycle[c]] = cycle[(c + 1) % cycle.size()];
      pos = close + 1;
    }
    return perm;
  }
  std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '[' || c == ']'; }, ' ');
  std::istringstream in(s);
  std::vector<int> values;
  std::string tok;
  while (in >> tok) {
    try {
      values.push_back(std::stoi(tok) - 1);
    } catch (const std::exception&) {
      throw bad("non-integer entry '" + tok + "'");
    }
  }
  if (static_cast<int>(values.size()) != rank) throw bad("expected " + std::to_string(rank) + " entries");
  std::vector<bool> seen(rank, false);
  for (int v : values) {
    if (v < 0 || v >= rank) throw bad("entry out of range 1.." + std::to_string(rank));
    if (seen[v]) throw bad("entry " + std::to_string(v + 1) + " repeated");
    seen[v] = true;
  }
  return values;
}

LatticeInput parse_lattice_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string gram_text, perm_text;
  int rank = 0;
  bool have_rank = false;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find_first_of("=:");
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw Error(Errc::InvalidInput, "config line without '=': " + line);
      }
      continue;
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    if (key == "rank") {
      try {
        rank = std::stoi(value);
      } catch (const std::exception&) {
        throw Error(Errc::InvalidInput, "rank is not an integer");
      }
      have_rank = true;
    } else if (key == "gram") {
      gram_text += " " + value;
    } else if (key == "perm") {
      perm_text += " " + value;
    } else {
      throw Error(Errc::InvalidInput, "unknown config key '" + key + "'");
    }
  }
  if (!have_rank) throw Error(Errc::InvalidInput, "config is missing 'rank'");
  if (rank < 1) throw Error(Errc::InvalidInput, "rank must be positive");

  std::replace_if(gram_text.begin(), gram_text.end(),
                  [](char c) { return c == ',' || c == '[' || c == ']' || c == ';'; }, ' ');
  std::istringstream gin(gram_text);
  std::vector<long> flat;
  std::string tok;
  while (gin >> tok) {
    try {
      std::size_t used = 0;
      flat.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "gram entry '" + tok + "' is not an integer");
    }
  }
  if (static_cast<int>(flat.size()) != rank * rank) {
    throw Error(Errc::InvalidInput, "gram has " + std::to_string(flat.size()) + " entries, expected " +
                                        std::to_string(rank * rank));
  }
  LatticeInput out;
  out.rank = rank;
  out.gram.assign(rank, std::vector<long>(rank));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) out.gram[i][j] = flat[static_cast<std::size_t>(i * rank + j)];
  }
  if (perm_text.find_first_not_of(" \t\r") == std::string::npos) {
    out.perm.resize(rank);
    std::iota(out.perm.begin(), out.perm.end(), 0);
  } else {
    out.perm = parse_permutation(perm_text, rank);
  }
  return out;
}

LatticeInput load_lattice_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(Errc::InvalidInput, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_lattice_config(buf.str());
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"rank1", "swap2", "x3", "x4"};
  return names;
}

LatticeInput preset(std::string_view name) {
  if (name == "rank1") return parse_lattice_config("rank = 1\ngram = 2\nperm = 1\n");
  if (name == "swap2") return parse_lattice_config("rank = 2\ngram = 2 1  1 2\nperm = (1 2)\n");
  if (name == "x3") return parse_lattice_config("rank = 3\ngram = 2 1 1  1 2 0  1 0 2\nperm = (1)(2 3)\n");
  if (name == "x4") {
    return parse_lattice_config("rank = 4\ngram = 2 1 1 1  1 2 0 0  1 0 2 0  1 0 0 2\nperm = (1)(2 3 4)\n");
  }
  throw Error(Errc::UnknownPreset, "no preset named '" + std::string(name) + "' (known: rank1, swap2, x3, x4)");
}

}  // namespace tpsp

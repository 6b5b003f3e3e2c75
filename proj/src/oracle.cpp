#include "tpsp/oracle.hpp"

#include "tpsp/pascal.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace tpsp {

namespace {

std::string charge_str(const Charge& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

Monomial make_pair_monomial(int d, int i, long wi, int j, long wj) {
  Monomial out = Monomial::unit(d);
  out.vars = {{i, wi}, {j, wj}};
  std::sort(out.vars.begin(), out.vars.end());
  ++out.charge[i];
  ++out.charge[j];
  out.weight = wi + wj;
  return out;
}

void extend(const OracleContext& ctx, const Charge& charge, int orbit, int left_in_orbit, long min_w, long remaining,
            Monomial& cur, std::vector<Monomial>& out) {
  if (orbit == ctx.d) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  if (left_in_orbit == 0) {
    const int next = orbit + 1;
    extend(ctx, charge, next, next < ctx.d ? charge[next] : 0, next < ctx.d ? ctx.base[next] : 0, remaining, cur, out);
    return;
  }
  // Least weight still needed by the later orbits.
  long tail = 0;
  for (int o = orbit + 1; o < ctx.d; ++o) tail += charge[o] * ctx.base[o];
  for (long w = min_w; w * left_in_orbit + tail <= remaining; w += ctx.step[orbit]) {
    cur.vars.push_back({orbit, w});
    extend(ctx, charge, orbit, left_in_orbit - 1, w, remaining - w, cur, out);
    cur.vars.pop_back();
  }
}

}  // namespace

Monomial Monomial::unit(int d) {
  Monomial m;
  m.charge.assign(d, 0);
  return m;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out;
  out.vars.reserve(vars.size() + other.vars.size());
  std::merge(vars.begin(), vars.end(), other.vars.begin(), other.vars.end(), std::back_inserter(out.vars));
  out.charge = charge;
  for (std::size_t i = 0; i < out.charge.size(); ++i) out.charge[i] += other.charge[i];
  out.weight = weight + other.weight;
  return out;
}

std::string Monomial::to_string(int k) const {
  if (vars.empty()) return "1";
  std::string s;
  for (const auto& v : vars) {
    const Rational mode = ratio(-v.weight, k);
    s += "x" + std::to_string(v.orbit + 1) + "(" + mode.get_str() + ")";
  }
  return s;
}

OracleContext::OracleContext(const Lattice& lat) : lattice(&lat), d(lat.orbit_count()), k(lat.k()) {
  for (int i = 0; i < d; ++i) {
    base.push_back(lat.pairings.char_matrix[i][i] / 2);
    step.push_back(k / lat.orbits.lengths[i]);
  }
}

long OracleContext::min_weight(const Charge& charge) const {
  long w = 0;
  for (int i = 0; i < d; ++i) w += charge[i] * base[i];
  return w;
}

std::vector<Monomial> enumerate_monomials(const OracleContext& ctx, const Charge& charge, long weight) {
  if (static_cast<int>(charge.size()) != ctx.d) throw Error(Errc::DimensionMismatch, "charge has the wrong length");
  for (int c : charge) {
    if (c < 0) throw Error(Errc::InvalidInput, "negative charge");
  }
  std::vector<Monomial> out;
  if (weight < 0) return out;
  Monomial cur = Monomial::unit(ctx.d);
  cur.charge = charge;
  cur.weight = weight;
  extend(ctx, charge, 0, ctx.d > 0 ? charge[0] : 0, ctx.d > 0 ? ctx.base[0] : 0, weight, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RelationGenerator> build_relations(const OracleContext& ctx, int i, int j, long weight) {
  if (i < 0 || j < 0 || i >= ctx.d || j >= ctx.d) throw Error(Errc::InvalidInput, "orbit index out of range");
  const auto& lat = *ctx.lattice;
  const int k = ctx.k;
  const int l_i = lat.orbits.lengths[i];
  const long big_l = lat.orbits.mode_denominator[i];
  const Rational half_norm = ratio(lat.pairings.root_norm[i], 2);

  std::vector<std::pair<long, long>> pairs;
  for (long w1 = ctx.base[i]; w1 + ctx.base[j] <= weight; w1 += ctx.step[i]) {
    if (ctx.in_alphabet(j, weight - w1)) pairs.emplace_back(w1, weight - w1);
  }
  std::vector<RelationGenerator> out;
  if (pairs.empty()) return out;

  for (int r = 0; r < l_i; ++r) {
    const long top = lat.pairings.root_pairing[i][j][r];
    for (int m = 1; m <= top; ++m) {
      std::map<Monomial, CyclotomicScalar> acc;
      for (const auto& [w1, w2] : pairs) {
        // η_{L_i}^(r n1 L_i) with n1 = -w1/k; as a power of η_k this is η_k^(-r w1).
        Rational power(-static_cast<long>(r) * w1 * big_l, k);
        power.canonicalize();
        if (power.get_den() != 1) {
          throw Error(Errc::PreconditionViolated, "relation exponent r n1 L_i = " + power.get_str() + " is not an integer");
        }
        const Rational arg = ratio(w1, k) - half_norm;
        CyclotomicScalar c = CyclotomicScalar::eta_power(k, -static_cast<long>(r) * w1) * rational_binomial(arg, m - 1);
        if (c.is_zero()) continue;
        auto mono = make_pair_monomial(ctx.d, i, w1, j, w2);
        auto [it, fresh] = acc.try_emplace(std::move(mono), c);
        if (!fresh) it->second += c;
      }
      RelationGenerator g;
      g.label = {i, j, r, m, weight};
      for (auto& [mono, c] : acc) {
        if (!c.is_zero()) g.terms.emplace_back(std::move(c), mono);
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

CellResult quotient_dimension(const OracleContext& ctx, const Charge& charge, long weight, const OracleOptions& opts) {
  int total = 0;
  for (int c : charge) total += c;
  if (total > opts.max_charge_total) {
    throw Error(Errc::BudgetExceeded, "charge total " + std::to_string(total) + " exceeds " +
                                          std::to_string(opts.max_charge_total));
  }
  if (weight > opts.max_weight) {
    throw Error(Errc::BudgetExceeded, "weight " + std::to_string(weight) + " exceeds " + std::to_string(opts.max_weight));
  }
  CellResult cell;
  cell.charge = charge;
  cell.weight = weight;
  const auto monos = enumerate_monomials(ctx, charge, weight);
  cell.monomials = monos.size();
  if (monos.size() > opts.max_cols) {
    throw Error(Errc::BudgetExceeded, std::to_string(monos.size()) + " monomials exceed the column budget");
  }
  if (monos.empty()) return cell;
  std::map<Monomial, std::size_t> index;
  for (std::size_t c = 0; c < monos.size(); ++c) index.emplace(monos[c], c);

  std::vector<std::vector<std::pair<std::size_t, CyclotomicScalar>>> rows;
  for (int i = 0; i < ctx.d; ++i) {
    for (int j = 0; j < ctx.d; ++j) {
      Charge rest = charge;
      --rest[i];
      --rest[j];
      if (rest[i] < 0 || rest[j] < 0) continue;
      const long rest_min = ctx.min_weight(rest);
      for (long wg = ctx.base[i] + ctx.base[j]; wg + rest_min <= weight; ++wg) {
        const auto gens = build_relations(ctx, i, j, wg);
        if (gens.empty()) continue;
        const auto cofactors = enumerate_monomials(ctx, rest, weight - wg);
        for (const auto& g : gens) {
          if (opts.drop && opts.drop(g.label)) continue;
          for (const auto& cof : cofactors) {
            std::vector<std::pair<std::size_t, CyclotomicScalar>> row;
            for (const auto& [coef, mono] : g.terms) {
              auto it = index.find(cof.times(mono));
              if (it == index.end()) throw Error(Errc::DimensionMismatch, "product left the bidegree basis");
              row.emplace_back(it->second, coef);
            }
            rows.push_back(std::move(row));
            if (rows.size() > opts.max_rows) {
              throw Error(Errc::BudgetExceeded, "relation rows exceed " + std::to_string(opts.max_rows));
            }
          }
        }
      }
    }
  }
  cell.rows = rows.size();
  ExactMatrix mat(rows.size(), monos.size(), ctx.k);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto& [c, v] : rows[r]) mat.set(r, c, mat.at(r, c) + v);
  }
  cell.rank = rows.empty() ? 0 : rank(std::move(mat));
  cell.dimension = monos.size() - cell.rank;
  return cell;
}

std::string ComparisonReport::table() const {
  std::ostringstream out;
  out << "lattice " << lattice_name << ", charges up to " << charge_bound << ", weights up to " << weight_bound << "\n";
  out << std::left << std::setw(12) << "charge" << std::setw(8) << "weight" << std::setw(11) << "monomials"
      << std::setw(7) << "rows" << std::setw(6) << "rank" << std::setw(5) << "dim" << std::setw(7) << "coeff"
      << "status\n";
  for (const auto& c : cells) {
    if (c.monomials == 0 && c.coefficient == 0 && c.agrees) continue;
    out << std::left << std::setw(12) << charge_str(c.charge) << std::setw(8) << c.weight << std::setw(11)
        << c.monomials << std::setw(7) << c.rows << std::setw(6) << c.rank << std::setw(5) << c.dimension
        << std::setw(7) << c.coefficient.get_str() << (c.agrees ? "ok" : "MISMATCH")
        << (c.error.empty() ? "" : " " + c.error) << "\n";
  }
  out << cells.size() << " cells, " << mismatches << " mismatches\n";
  return out.str();
}

nlohmann::ordered_json ComparisonReport::json() const {
  nlohmann::ordered_json out;
  out["lattice"] = lattice_name;
  out["charge_bound"] = charge_bound;
  out["weight_bound"] = weight_bound;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json j;
    j["charge"] = c.charge;
    j["weight"] = c.weight;
    j["monomials"] = c.monomials;
    j["rows"] = c.rows;
    j["rank"] = c.rank;
    j["dimension"] = c.dimension;
    j["coefficient"] = c.coefficient.get_str();
    j["status"] = c.agrees ? "ok" : "mismatch";
    if (!c.error.empty()) j["error"] = c.error;
    arr.push_back(std::move(j));
  }
  out["cells"] = std::move(arr);
  out["mismatches"] = mismatches;
  out["passed"] = passed();
  return out;
}

ComparisonReport compare_with_character(const Lattice& lattice, int charge_bound, long weight_bound,
                                        const OracleOptions& opts, Exec exec) {
  const OracleContext ctx(lattice);
  const auto table = character(lattice, weight_bound, exec);
  ComparisonReport report;
  report.charge_bound = charge_bound;
  report.weight_bound = weight_bound;

  std::vector<Charge> charges;
  Charge m(ctx.d, 0);
  while (true) {
    int total = 0;
    for (int c : m) total += c;
    if (total <= charge_bound) charges.push_back(m);
    int pos = ctx.d - 1;
    while (pos >= 0 && m[pos] == charge_bound) m[pos--] = 0;
    if (pos < 0) break;
    ++m[pos];
  }
  for (const auto& c : charges) {
    for (long w = 0; w <= weight_bound; ++w) {
      CellResult cell;
      cell.charge = c;
      cell.weight = w;
      report.cells.push_back(std::move(cell));
    }
  }
  auto run = [&](std::size_t idx) {
    auto& cell = report.cells[idx];
    const QSeries* s = table.find(cell.charge);
    const BigInt coefficient = s ? s->coeff(cell.weight) : BigInt(0);
    try {
      cell = quotient_dimension(ctx, cell.charge, cell.weight, opts);
      cell.coefficient = coefficient;
      cell.agrees = BigInt(static_cast<unsigned long>(cell.dimension)) == coefficient;
    } catch (const std::exception& e) {
      cell.coefficient = coefficient;
      cell.error = e.what();
      cell.agrees = false;
    }
  };
  const auto count = static_cast<std::ptrdiff_t>(report.cells.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  }
  for (const auto& c : report.cells) report.mismatches += c.agrees ? 0 : 1;
  return report;
}

long membership_rank(const Lattice& lattice, int i, int j) {
  long n = 0;
  for (long v : lattice.pairings.root_pairing[i][j]) n += v;
  return n;
}

MembershipResult new_relations_membership(const OracleContext& ctx, int i, int j, int s, int t) {
  if (i < 0 || j < 0 || i >= ctx.d || j >= ctx.d) throw Error(Errc::InvalidInput, "orbit index out of range");
  const auto& lat = *ctx.lattice;
  const long n = membership_rank(lat, i, j);
  if (s < 0 || t < 0 || s + t > n - 1) {
    throw Error(Errc::PreconditionViolated, "need s, t >= 0 and s + t <= " + std::to_string(n - 1) + " for (i,j)=(" +
                                                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
  MembershipResult out;
  const long wi = ctx.base[i] + s * ctx.step[i];
  const long shift_j = static_cast<long>(t) * (ctx.k / lat.orbits.lengths[i]);
  if (shift_j % ctx.step[j] != 0) {
    out.vacuous = true;
    out.member = true;
    return out;
  }
  const long wj = ctx.base[j] + shift_j;
  const long w = wi + wj;
  const Monomial target = make_pair_monomial(ctx.d, i, wi, j, wj);

  auto gens = build_relations(ctx, i, j, w);
  if (i != j) {
    auto more = build_relations(ctx, j, i, w);
    gens.insert(gens.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  out.generators = gens.size();
  const auto monos = enumerate_monomials(ctx, target.charge, w);
  std::map<Monomial, std::size_t> index;
  for (std::size_t c = 0; c < monos.size(); ++c) index.emplace(monos[c], c);

  // Columns are generators; solve for coefficients reproducing the target.
  ExactMatrix g(monos.size(), gens.size(), ctx.k);
  for (std::size_t col = 0; col < gens.size(); ++col) {
    for (const auto& [coef, mono] : gens[col].terms) g.set(index.at(mono), col, coef);
  }
  std::vector<CyclotomicScalar> rhs(monos.size(), CyclotomicScalar(ctx.k));
  rhs[index.at(target)] = CyclotomicScalar(ctx.k, Rational(1));
  try {
    (void)solve(g, rhs);
    out.member = true;
  } catch (const Error& e) {
    if (e.code() != Errc::NoSolution) throw;
    out.member = false;
  }
  return out;
}

ExactMatrix membership_matrix(const Lattice& lattice, int i, int j) {
  const int k = lattice.k();
  const int l_i = lattice.orbits.lengths[i];
  const long big_l = lattice.orbits.mode_denominator[i];
  const Rational a_i = lattice.pairings.a_half[i];
  const Rational half_norm = ratio(lattice.pairings.root_norm[i], 2);
  const long n = membership_rank(lattice, i, j);
  ExactMatrix out(n, n, k);
  std::size_t row = 0;
  for (int r = 0; r < l_i; ++r) {
    for (long m = 1; m <= lattice.pairings.root_pairing[i][j][r]; ++m, ++row) {
      for (long p = 0; p < n; ++p) {
        const Rational mode = -a_i - ratio(p, l_i);
        Rational power = Rational(r) * mode * big_l;
        power.canonicalize();
        if (power.get_den() != 1) {
          throw Error(Errc::PreconditionViolated, "exponent " + power.get_str() + " is not an integer");
        }
        // η_{L_i} = η_k^(k / L_i)
        const long e = power.get_num().get_si() * (k / big_l);
        out.set(row, p, CyclotomicScalar::eta_power(k, e) *
                            rational_binomial(a_i + ratio(p, l_i) - half_norm, static_cast<int>(m - 1)));
      }
    }
  }
  return out;
}

CheckReport membership_matrix_check(const Lattice& lattice, int i, int j) {
  const int k = lattice.k();
  const int l_i = lattice.orbits.lengths[i];
  const long n = membership_rank(lattice, i, j);
  if (n < 1) return {};
  const ExactMatrix proof = membership_matrix(lattice, i, j);

  // Block r of the proof matrix is η^(-r A_ii/2) times block (l_i - r) mod l_i
  // of the stacked binomial matrix with k = l_i, z = a_i - <α,α>/2, w = 1/l_i.
  PascalSpec spec;
  spec.k = l_i;
  spec.block_sizes.assign(l_i, 0);
  for (int r = 0; r < l_i; ++r) spec.block_sizes[(l_i - r) % l_i] = static_cast<int>(lattice.pairings.root_pairing[i][j][r]);
  spec.z = lattice.pairings.a_half[i] - ratio(lattice.pairings.root_norm[i], 2);
  spec.w = ratio(1, l_i);
  spec.field_conductor = k;
  const ExactMatrix stacked = build_stacked(spec);

  std::vector<long> offset(l_i, 0);
  for (int b = 1; b < l_i; ++b) offset[b] = offset[b - 1] + spec.block_sizes[b - 1];
  const long top_weight = lattice.pairings.char_matrix[i][i] / 2;  // a_i k
  CheckReport report;
  std::size_t row = 0;
  for (int r = 0; r < l_i; ++r) {
    const int block = (l_i - r) % l_i;
    const auto unit = CyclotomicScalar::eta_power(k, -static_cast<long>(r) * top_weight);
    for (long m = 1; m <= lattice.pairings.root_pairing[i][j][r]; ++m, ++row) {
      const std::size_t prow = static_cast<std::size_t>(offset[block] + m - 1);
      for (long p = 0; p < n; ++p) {
        ++report.checked;
        if (!(proof.at(row, p) == unit * stacked.at(prow, p))) {
          return CheckReport::fail("membership matrix row (r=" + std::to_string(r) + ",m=" + std::to_string(m) +
                                   ") column " + std::to_string(p) + ": " + proof.at(row, p).to_string() + " vs " +
                                   (unit * stacked.at(prow, p)).to_string());
        }
      }
    }
  }
  if (!verify_invertible(spec).invertible) return CheckReport::fail("stacked binomial matrix is singular");
  if (det(proof).is_zero()) return CheckReport::fail("membership matrix is singular");
  return report;
}

MembershipSweep new_relations_sweep(const Lattice& lattice, Exec exec) {
  const OracleContext ctx(lattice);
  struct Case {
    int i, j, s, t;
  };
  std::vector<Case> cases;
  std::vector<std::pair<int, int>> matrix_pairs;
  for (int i = 0; i < ctx.d; ++i) {
    for (int j = 0; j < ctx.d; ++j) {
      const long n = membership_rank(lattice, i, j);
      if (n < 1) continue;
      matrix_pairs.emplace_back(i, j);
      for (int s = 0; s < n; ++s)
        for (int t = 0; s + t < n; ++t) cases.push_back({i, j, s, t});
    }
  }
  std::vector<std::string> messages(cases.size() + matrix_pairs.size());
  std::vector<char> vacuous(cases.size(), 0);
  auto run = [&](std::size_t idx) {
    try {
      if (idx < cases.size()) {
        const auto& c = cases[idx];
        const auto res = new_relations_membership(ctx, c.i, c.j, c.s, c.t);
        vacuous[idx] = res.vacuous;
        if (!res.member) {
          messages[idx] = "not in the ideal: (i,j,s,t)=(" + std::to_string(c.i + 1) + "," + std::to_string(c.j + 1) +
                          "," + std::to_string(c.s) + "," + std::to_string(c.t) + ")";
        }
      } else {
        const auto [i, j] = matrix_pairs[idx - cases.size()];
        const auto rep = membership_matrix_check(lattice, i, j);
        if (!rep.passed) messages[idx] = rep.failure;
      }
    } catch (const std::exception& e) {
      messages[idx] = e.what();
    }
  };
  const auto count = static_cast<std::ptrdiff_t>(messages.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  }
  MembershipSweep out;
  out.cases = static_cast<long>(cases.size());
  out.matrices_checked = static_cast<long>(matrix_pairs.size());
  for (char v : vacuous) out.vacuous += v;
  for (const auto& msg : messages) {
    if (msg.empty()) continue;
    ++out.failures;
    out.failure_messages.push_back(msg);
  }
  return out;
}

}  // namespace tpsp

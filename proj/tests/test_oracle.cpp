#include "oracles.hpp"
#include "support.hpp"

#include "tpsp/oracle.hpp"
#include "tpsp/pascal.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tpsp;

namespace {

const Lattice& lattice(const std::string& name) {
  static std::map<std::string, Lattice> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, Lattice::from_input(preset(name))).first;
  return it->second;
}

/// Brute-force count of multisets of alphabet weights with given charge and total.
long count_monomials(const OracleContext& ctx, const Charge& charge, long weight) {
  std::function<long(std::size_t, int, long, long)> go = [&](std::size_t orbit, int left, long min_w, long w) -> long {
    if (orbit == charge.size()) return w == 0 ? 1 : 0;
    if (left == 0) return go(orbit + 1, orbit + 1 < charge.size() ? charge[orbit + 1] : 0, 0, w);
    long acc = 0;
    for (long v = std::max(min_w, ctx.base[orbit]); v <= w; ++v)
      if (ctx.in_alphabet(static_cast<int>(orbit), v)) acc += go(orbit, left - 1, v, w - v);
    return acc;
  };
  return go(0, charge.empty() ? 0 : charge[0], 0, weight);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("alphabet") {
  OracleContext r1(lattice("rank1"));
  CHECK(r1.k == 2);
  CHECK(r1.base == std::vector<long>{2});
  CHECK(r1.step == std::vector<long>{2});
  OracleContext x3(lattice("x3"));
  CHECK(x3.base == std::vector<long>{4, 2});
  CHECK(x3.step == std::vector<long>{4, 2});
  OracleContext sw(lattice("swap2"));
  // a = 3/4, modes -3/4, -5/4, ... so weights 3, 5, 7, ...
  CHECK(sw.base == std::vector<long>{3});
  CHECK(sw.step == std::vector<long>{2});
}

TEST_CASE("enumerate_monomials") {
  OracleContext ctx(lattice("rank1"));
  auto one = enumerate_monomials(ctx, {1}, 4);
  REQUIRE(one.size() == 1);
  CHECK(one[0].to_string(2) == "x1(-2)");
  auto two = enumerate_monomials(ctx, {2}, 8);
  REQUIRE(two.size() == 2);
  CHECK(two[0].to_string(2) == "x1(-1)x1(-3)");
  CHECK(two[1].to_string(2) == "x1(-2)x1(-2)");
  CHECK(enumerate_monomials(ctx, {0}, 0).size() == 1);
  CHECK(enumerate_monomials(ctx, {0}, 6).empty());

  for (auto name : {"rank1", "swap2", "x3", "x4"}) {
    OracleContext c(lattice(name));
    std::vector<Charge> charges = c.d == 1 ? std::vector<Charge>{{1}, {2}, {3}}
                                           : std::vector<Charge>{{1, 0}, {0, 2}, {1, 1}, {2, 1}};
    for (auto& m : charges)
      for (long w = 0; w <= 30; ++w) {
        auto monos = enumerate_monomials(c, m, w);
        CAPTURE(name);
        CAPTURE(w);
        CHECK(static_cast<long>(monos.size()) == count_monomials(c, m, w));
        CHECK(std::is_sorted(monos.begin(), monos.end()));
        for (auto& mono : monos) {
          CHECK(mono.weight == w);
          CHECK(mono.charge == m);
        }
      }
  }
}

TEST_CASE("relation generators, rank1") {
  OracleContext ctx(lattice("rank1"));
  auto at2 = build_relations(ctx, 0, 0, 4);
  REQUIRE(at2.size() == 2);
  CHECK(at2[0].label.m == 1);
  REQUIRE(at2[0].terms.size() == 1);
  CHECK(at2[0].terms[0].first.is_one());
  CHECK(at2[1].terms.empty());

  auto at4 = build_relations(ctx, 0, 0, 8);
  REQUIRE(at4.size() == 2);
  for (auto& g : at4) {
    REQUIRE(g.terms.size() == 2);
    CHECK(g.terms[0].second.to_string(2) == "x1(-1)x1(-3)");
    CHECK(g.terms[0].first == CyclotomicScalar(2, 2));
    CHECK(g.terms[1].first == CyclotomicScalar(2, 1));
  }
  // odd weight is no sum of two alphabet weights
  CHECK(build_relations(ctx, 0, 0, 5).empty());
}

TEST_CASE("relation generators, x3 cross pair") {
  OracleContext ctx(lattice("x3"));
  // minimal t = a_1 + a_2 = 3/2, normalized 6; (r, m) = (0, 1) only
  auto g = build_relations(ctx, 0, 1, 6);
  REQUIRE(g.size() == 1);
  CHECK(g[0].label.r == 0);
  CHECK(g[0].label.m == 1);
  CHECK(build_relations(ctx, 0, 1, 5).empty());
}

TEST_CASE("merging equals unordered pairs with doubled off-diagonal terms") {
  for (auto name : {"rank1", "swap2", "x3", "x4"}) {
    const Lattice& lat = lattice(name);
    OracleContext ctx(lat);
    for (int i = 0; i < ctx.d; ++i)
      for (long w = 0; w <= 24; ++w) {
        auto gens = build_relations(ctx, i, i, w);
        for (auto& g : gens) {
          int r = g.label.r, m = g.label.m;
          std::map<std::pair<long, long>, CyclotomicScalar> expect;
          for (long w1 = ctx.base[i]; w - w1 >= w1; w1 += ctx.step[i]) {
            long w2 = w - w1;
            if (!ctx.in_alphabet(i, w2)) continue;
            auto coeff = [&](long a) {
              // η_{L_i}^(r n1 L_i) with n1 = -a/k is η_k^(-r a)
              Rational n1 = ratio(-a, ctx.k);
              return CyclotomicScalar::eta_power(ctx.k, -r * a) *
                     rational_binomial(-n1 - ratio(lat.pairings.root_norm[i], 2), m - 1);
            };
            auto c = coeff(w1);
            if (w1 != w2) c += coeff(w2);
            if (!c.is_zero()) expect.emplace(std::make_pair(w1, w2), c);
          }
          REQUIRE(g.terms.size() == expect.size());
          std::size_t idx = 0;
          for (auto& [pair, c] : expect) {
            CHECK(g.terms[idx].second.vars[0].weight == pair.first);
            CHECK(g.terms[idx].first == c);
            ++idx;
          }
        }
      }
  }
}

TEST_CASE("quotient dimensions") {
  OracleContext ctx(lattice("rank1"));
  CHECK(quotient_dimension(ctx, {2}, 4).dimension == 0);
  auto c = quotient_dimension(ctx, {2}, 8);
  CHECK(c.monomials == 2);
  CHECK(c.rank == 1);
  CHECK(c.dimension == 1);
  for (auto name : {"rank1", "swap2", "x3", "x4"}) {
    OracleContext x(lattice(name));
    Charge zero(x.d, 0);
    CHECK(quotient_dimension(x, zero, 0).dimension == 1);
    // a single variable is never constrained
    for (int i = 0; i < x.d; ++i) {
      Charge e(x.d, 0);
      e[i] = 1;
      for (long w = 0; w <= 20; ++w) CHECK(quotient_dimension(x, e, w).dimension == (x.in_alphabet(i, w) ? 1u : 0u));
    }
  }
}

TEST_CASE("budgets") {
  OracleContext ctx(lattice("rank1"));
  OracleOptions tight;
  tight.max_cols = 1;
  CHECK(support::error_code([&] { quotient_dimension(ctx, {3}, 24, tight); }) == Errc::BudgetExceeded);
  OracleOptions small;
  small.max_weight = 10;
  CHECK(support::error_code([&] { quotient_dimension(ctx, {1}, 12, small); }) == Errc::BudgetExceeded);
}

TEST_CASE("oracle agrees with the character formula") {
  for (auto name : {"rank1", "swap2", "x3"}) {
    auto report = compare_with_character(lattice(name), 3, 24);
    CAPTURE(name);
    CHECK(report.passed());
    CHECK(report.cells.size() > 0);
    for (auto& cell : report.cells) CHECK(cell.dimension <= cell.monomials);
  }
  // x4 on a smaller box
  CHECK(compare_with_character(lattice("x4"), 2, 24).passed());
}

TEST_CASE("dropping a generator is detected") {
  OracleOptions opts;
  opts.drop = [](const RelationLabel& l) { return l.m == 1 && l.weight == 4; };
  auto report = compare_with_character(lattice("rank1"), 3, 24, opts);
  CHECK_FALSE(report.passed());
  bool found = false;
  for (auto& cell : report.cells)
    if (!cell.agrees && cell.charge == Charge{2} && cell.weight == 4) {
      found = true;
      CHECK(cell.dimension == 1);
      CHECK(cell.coefficient == 0);
    }
  CHECK(found);
}

TEST_CASE("report formats") {
  auto report = compare_with_character(lattice("rank1"), 2, 8);
  report.lattice_name = "rank1";
  CHECK(report.table().find("rank1") != std::string::npos);
  auto j = report.json();
  CHECK(j["mismatches"] == 0);
  auto again = compare_with_character(lattice("rank1"), 2, 8);
  again.lattice_name = "rank1";
  CHECK(j.dump() == again.json().dump());
}

TEST_CASE("new relations") {
  OracleContext x3(lattice("x3"));
  CHECK(membership_rank(lattice("x3"), 0, 1) == 1);
  CHECK(new_relations_membership(x3, 0, 1, 0, 0).member);
  CHECK(support::error_code([&] { new_relations_membership(x3, 0, 1, 1, 0); }) == Errc::PreconditionViolated);

  OracleContext r1(lattice("rank1"));
  CHECK(membership_rank(lattice("rank1"), 0, 0) == 2);
  CHECK(new_relations_membership(r1, 0, 0, 0, 0).member);
  CHECK(new_relations_membership(r1, 0, 0, 1, 0).member);

  for (auto name : {"rank1", "swap2", "x3", "x4"}) {
    auto sweep = new_relations_sweep(lattice(name));
    CAPTURE(name);
    CHECK(sweep.passed());
    CHECK(sweep.cases > 0);
    for (auto& msg : sweep.failure_messages) MESSAGE(msg);
  }
}

TEST_CASE("membership matrix is the stacked binomial matrix up to units") {
  for (auto name : {"rank1", "swap2", "x3", "x4"}) {
    const Lattice& lat = lattice(name);
    for (int i = 0; i < lat.orbit_count(); ++i)
      for (int j = 0; j < lat.orbit_count(); ++j) {
        if (membership_rank(lat, i, j) == 0) continue;
        auto r = membership_matrix_check(lat, i, j);
        CAPTURE(name);
        CHECK_MESSAGE(r.passed, r.failure);
        auto m = membership_matrix(lat, i, j);
        CHECK(m.rows() == static_cast<std::size_t>(membership_rank(lat, i, j)));
        if (m.rows() <= 6) CHECK(det(m) == oracle::leibniz_det(m));
      }
  }
}

}

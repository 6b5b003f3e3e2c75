#include "oracles.hpp"
#include "support.hpp"

#include "tpsp/pascal.hpp"

#include <doctest.h>

using namespace tpsp;

namespace {

PascalSpec spec(int k, std::vector<int> sizes, Rational z, Rational w = 1) {
  PascalSpec s;
  s.k = k;
  s.block_sizes = std::move(sizes);
  s.z = z;
  s.w = w;
  return s;
}

}  // namespace

TEST_SUITE("pascal") {

TEST_CASE("blocks") {
  auto s = spec(2, {1, 1}, 0);
  CHECK(build_block(s, 0) == ExactMatrix::from_rationals({{1, 1}}, 2));
  CHECK(build_block(s, 1) == ExactMatrix::from_rationals({{1, -1}}, 2));
  CHECK(build_stacked(s) == ExactMatrix::from_rationals({{1, 1}, {1, -1}}, 2));

  auto classical = spec(1, {3}, 0);
  CHECK(build_stacked(classical) == ExactMatrix::from_rationals({{1, 1, 1}, {0, 1, 2}, {0, 0, 1}}));

  // arbitrary parameters: top row of block 0 is all ones
  auto odd = spec(3, {2, 0, 2}, Rational(-2, 7), Rational(5, 3));
  auto b0 = build_block(odd, 0);
  for (std::size_t p = 0; p < b0.cols(); ++p) CHECK(b0.at(0, p).is_one());
  CHECK(build_block(odd, 1).rows() == 0);
  CHECK(build_stacked(odd).rows() == 4);
}

TEST_CASE("DFT specialization") {
  auto s = spec(4, {1, 1, 1, 1}, Rational(1, 2), Rational(1, 3));
  auto a = build_stacked(s);
  for (int r = 0; r < 4; ++r)
    for (int p = 0; p < 4; ++p) CHECK(a.at(r, p) == CyclotomicScalar::eta_power(4, r * p));
  auto inv = verify_invertible(s);
  CHECK(inv.invertible);
  CHECK(inv.det == oracle::leibniz_det(a));
}

TEST_CASE("verify_invertible examples") {
  auto two = verify_invertible(spec(2, {1, 1}, 0));
  CHECK(two.invertible);
  CHECK(two.det == CyclotomicScalar(2, -2));
  for (int n = 1; n <= 6; ++n) {
    auto c = verify_invertible(spec(1, {n}, 0));
    CHECK(c.invertible);
    CHECK(c.det.is_one());
  }
}

TEST_CASE("invalid parameters") {
  CHECK(support::error_code([] { check_spec(spec(2, {0, 0}, 0)); }) == Errc::PreconditionViolated);
  CHECK(support::error_code([] { check_spec(spec(2, {1, 1}, 0, 0)); }) == Errc::PreconditionViolated);
  CHECK(support::error_code([] { check_spec(spec(2, {1}, 0)); }) == Errc::PreconditionViolated);
}

TEST_CASE("determinants agree with the permutation expansion on small sweeps") {
  std::mt19937_64 rng(3);
  for (int k = 1; k <= 3; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> sizes(k, 0);
      std::uniform_int_distribution<int> part(0, 2);
      int total = 0;
      for (auto& n : sizes) total += (n = part(rng));
      if (total == 0) sizes[0] = total = 1;
      Rational w = 0;
      while (w == 0) w = oracle::random_rational(rng);
      auto s = spec(k, sizes, oracle::random_rational(rng), w);
      CHECK(verify_invertible(s).det == oracle::leibniz_det(build_stacked(s)));
    }
  }
}

TEST_CASE("factorization lemma") {
  CyclotomicScalar one(1, 1);
  CHECK(factorization_check(one, 0, 1, 2, 3).passed);
  CHECK(factorization_check(CyclotomicScalar(1, -1), Rational(1, 2), Rational(1, 3), 3, 3).passed);
  CHECK(factorization_check(one, 0, 1, 1, 1).passed);
  // PM for (p, q) = (2, 3)
  CHECK(pascal_prime(one, 2, 3) == ExactMatrix::from_rationals({{1, 1, 1}, {0, 1, 2}}));
  auto eta = CyclotomicScalar::eta_power(6, 1);
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      auto r = factorization_check(eta, Rational(-3, 4), Rational(2, 5), p, q);
      CHECK_MESSAGE(r.passed, r.failure);
    }
}

TEST_CASE("binomial block entries") {
  auto x = CyclotomicScalar::eta_power(4, 1);
  auto b = binomial_block(x, Rational(1, 2), Rational(1, 3), 3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(b.at(i, j) == x.pow(j) * rational_binomial(Rational(1, 2) + ratio(j, 3), i));
}

TEST_CASE("two-block lemma") {
  CHECK(two_blocks_check(CyclotomicScalar(1, 1), CyclotomicScalar(1, -1), 2, 1, 1).passed);
  auto r = two_blocks_check(CyclotomicScalar(4, 1), CyclotomicScalar::eta_power(4, 1), 3, 2, 1);
  CHECK_MESSAGE(r.passed, r.failure);
  CHECK(two_blocks_check(CyclotomicScalar(1, 2), CyclotomicScalar(1, 3), 4, 2, 0).passed);
  auto w = CyclotomicScalar::eta_power(12, 1);
  for (int n = 1; n <= 6; ++n)
    for (int s = 0; s <= n; ++s)
      for (int t = 0; t <= s && s + t <= n; ++t) {
        auto rep = two_blocks_check(w, w.pow(5), n, s, t);
        CAPTURE(n);
        CAPTURE(s);
        CAPTURE(t);
        CHECK_MESSAGE(rep.passed, rep.failure);
      }
  CHECK(support::error_code([] { two_blocks_check(CyclotomicScalar(1, 1), CyclotomicScalar(1, 1), 2, 1, 1); }) ==
        Errc::PreconditionViolated);
}

TEST_CASE("theorem sweep") {
  auto cases = theorem_sweep({});
  CHECK(cases.size() == 3250);
  int bad = 0;
  for (auto& c : cases)
    if (!c.invertible || !c.error.empty()) ++bad;
  CHECK(bad == 0);
}

TEST_CASE("lemma sweep") {
  auto cases = lemma_sweep(50, 6, 7);
  CHECK(cases.size() == 100);
  for (auto& c : cases) CHECK_MESSAGE(c.report.passed, std::string(c.kind + " " + c.params + ": " + c.report.failure));
}

}

#include "oracles.hpp"
#include "support.hpp"

#include "tpsp/matrix.hpp"

#include <doctest.h>

using namespace tpsp;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int k, int sparsity = 0) {
  ExactMatrix m(r, c, k);
  std::uniform_int_distribution<int> coin(0, 9);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) >= sparsity) m.set(i, j, oracle::random_scalar(rng, k));
  return m;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("small examples") {
  auto m = ExactMatrix::from_rationals({{1, 1}, {1, -1}});
  CHECK(det(m) == CyclotomicScalar(1, -2));
  CHECK(rank(m) == 2);

  ExactMatrix p(2, 3, 4);
  auto eta = CyclotomicScalar::eta_power(4, 1);
  for (int j = 0; j < 3; ++j) {
    p.set(0, j, CyclotomicScalar(4, j + 1));
    p.set(1, j, eta * CyclotomicScalar(4, j + 1));
  }
  CHECK(rank(p) == 1);

  auto pascal = ExactMatrix::from_rationals({{1, 1, 1}, {0, 1, 2}, {0, 0, 1}});
  CHECK(det(pascal).is_one());
  CHECK(rank(ExactMatrix(3, 2, 1)) == 0);
}

TEST_CASE("solve") {
  auto m = ExactMatrix::from_rationals({{2, 1}, {1, 3}});
  std::vector<CyclotomicScalar> b = {CyclotomicScalar(1, 3), CyclotomicScalar(1, 4)};
  auto x = solve(m, b);
  CHECK(x[0] == CyclotomicScalar(1, 1));
  CHECK(x[1] == CyclotomicScalar(1, 1));

  // rectangular, consistent: x + y = 2 has a solution
  auto wide = ExactMatrix::from_rationals({{1, 1}});
  auto y = solve(wide, std::vector<CyclotomicScalar>{CyclotomicScalar(1, 2)});
  CHECK(y[0] + y[1] == CyclotomicScalar(1, 2));

  auto singular = ExactMatrix::from_rationals({{1, 2}, {2, 4}});
  std::vector<CyclotomicScalar> bad = {CyclotomicScalar(1, 1), CyclotomicScalar(1, 1)};
  CHECK(support::error_code([&] { solve(singular, bad); }) == Errc::NoSolution);
  CHECK(support::error_code([&] { solve(singular, std::vector<CyclotomicScalar>{CyclotomicScalar(1, 1)}); }) ==
        Errc::DimensionMismatch);
  CHECK(support::error_code([&] { det(wide); }) == Errc::DimensionMismatch);
  CHECK(support::error_code([&] { inverse(singular); }) == Errc::NoSolution);
}

TEST_CASE("determinant against the permutation expansion") {
  std::mt19937_64 rng(11);
  for (int k : {1, 3, 4, 12}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        auto m = random_matrix(rng, n, n, k, trial % 2 ? 5 : 0);
        CAPTURE(k);
        CAPTURE(n);
        CHECK(det(m) == oracle::leibniz_det(m));
        CHECK((rank(m) == n) == !oracle::leibniz_det(m).is_zero());
      }
    }
  }
}

TEST_CASE("rank of transpose, multiplicativity of det, inverse") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    int k = (trial % 3 == 0) ? 1 : (trial % 3 == 1 ? 4 : 6);
    std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
    auto m = random_matrix(rng, r, c, k, trial % 7);
    CHECK(rank(m) == rank(m.transpose()));

    std::size_t n = 1 + trial % 4;
    auto a = random_matrix(rng, n, n, k), b = random_matrix(rng, n, n, k);
    CHECK(det(a * b) == det(a) * det(b));
    if (!det(a).is_zero()) CHECK(inverse(a) * a == ExactMatrix::identity(n, k));
  }
  // low-rank product
  auto u = random_matrix(rng, 5, 2, 4), v = random_matrix(rng, 2, 5, 4);
  CHECK(rank(u * v) <= 2);
}

TEST_CASE("Vandermonde over distinct roots of unity") {
  for (int k : {3, 4, 6, 12}) {
    ExactMatrix v(static_cast<std::size_t>(k), static_cast<std::size_t>(k), k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) v.set(i, j, CyclotomicScalar::eta_power(k, static_cast<long>(i) * j));
    CHECK_FALSE(det(v).is_zero());
    if (k <= 6) CHECK(det(v) == oracle::leibniz_det(v));
  }
}

TEST_CASE("first_difference") {
  auto a = ExactMatrix::from_rationals({{1, 2}, {3, 4}});
  auto b = a;
  CHECK_FALSE(first_difference(a, b).has_value());
  b.set(1, 0, Rational(5));
  auto d = first_difference(a, b);
  REQUIRE(d.has_value());
  CHECK(d->first == 1);
  CHECK(d->second == 0);
}

TEST_CASE("stacking") {
  auto a = ExactMatrix::from_rationals({{1, 2}});
  auto b = ExactMatrix::from_rationals({{3, 4}});
  auto s = ExactMatrix::vstack(a, b);
  CHECK(s == ExactMatrix::from_rationals({{1, 2}, {3, 4}}));
  auto bd = ExactMatrix::block_diagonal(a, b);
  CHECK(bd.rows() == 2);
  CHECK(bd.cols() == 4);
  CHECK(bd.at(1, 2) == CyclotomicScalar(1, 3));
  CHECK(bd.at(0, 2).is_zero());
}

}

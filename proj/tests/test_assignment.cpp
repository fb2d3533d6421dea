#include <doctest.h>

#include <random>

#include "ged/assignment.hpp"
#include "oracles.hpp"

using namespace ged;

TEST_CASE("hungarian: examples") {
  DenseMatrix m(3, 3);
  m.values = {4, 1, 3, 2, 0, 5, 3, 2, 2};
  const auto a = hungarian(m);
  CHECK(a.cost == 5);
  CHECK(a.row_to_col == std::vector<std::size_t>{1, 0, 2});

  CHECK(hungarian(DenseMatrix(0, 0)).cost == 0);
  DenseMatrix one(1, 1, 7.5);
  CHECK(hungarian(one).cost == 7.5);
  CHECK_THROWS_AS(hungarian(DenseMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("hungarian: agrees with brute force") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    DenseMatrix m(n, n);
    for (auto& v : m.values) v = static_cast<double>(rng() % 50) / 4;
    if (trial % 5 == 0) m(0, 0) = kForbiddenCost;
    const auto a = hungarian(m);
    CHECK(oracle::close(a.cost, oracle::brute_force_assignment(m)));
    std::vector<bool> used(n, false);
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(a.row_to_col[i] < n);
      CHECK_FALSE(used[a.row_to_col[i]]);
      used[a.row_to_col[i]] = true;
      sum += m(i, a.row_to_col[i]);
    }
    CHECK(sum == a.cost);
  }
}

TEST_CASE("edit assignment matrix layout") {
  const std::vector<double> sub{1, 2}, del{5}, ins{6, 7};
  const auto m = edit_assignment_matrix(1, 2, sub, del, ins);
  REQUIRE(m.rows == 3);
  CHECK(m(0, 0) == 1);
  CHECK(m(0, 1) == 2);
  CHECK(m(0, 2) == 5);
  CHECK(m(1, 0) == 6);
  CHECK(m(2, 1) == 7);
  CHECK(m(1, 1) == kForbiddenCost);
  CHECK(m(2, 2) == 0);
  // Deleting everything costs 5 + 6 + 7; substituting 0 -> 0 and inserting 1 costs 8.
  CHECK(hungarian(m).cost == 8);
}

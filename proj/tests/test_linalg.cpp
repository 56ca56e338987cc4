#include <catch2/catch_amalgamated.hpp>

#include "lfpoly/linalg.hpp"

using namespace lfpoly;

namespace {
RVec rv(std::initializer_list<int> xs) {
  RVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}
}  // namespace

TEST_CASE("rref and rank") {
  RMat m{rv({1, 2, 3}), rv({2, 4, 6}), rv({1, 0, 1})};
  CHECK(rank_of(m) == 2);
  RMat id{rv({1, 0}), rv({0, 1})};
  CHECK(rank_of(id) == 2);
  RMat zero{rv({0, 0})};
  CHECK(rank_of(zero) == 0);
}

TEST_CASE("solve_linear") {
  RMat a{rv({1, 1}), rv({1, -1})};
  auto x = solve_linear(a, rv({3, 1}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);

  RMat bad{rv({1, 1}), rv({2, 2})};
  CHECK_FALSE(solve_linear(bad, rv({1, 3})).has_value());

  // Underdetermined systems return some solution.
  RMat under{rv({1, 1, 1})};
  auto y = solve_linear(under, rv({6}));
  REQUIRE(y.has_value());
  CHECK((*y)[0] + (*y)[1] + (*y)[2] == 6);
}

TEST_CASE("nullspace vectors annihilate the matrix") {
  RMat a{rv({1, 2, 3}), rv({0, 1, 1})};
  auto ns = nullspace(a);
  REQUIRE(ns.size() == 1);
  for (const auto& row : a) CHECK(dot(row, ns[0]) == 0);

  RMat full{rv({1, 0}), rv({0, 1})};
  CHECK(nullspace(full).empty());
}

TEST_CASE("invert") {
  RMat a{rv({2, 1}), rv({1, 1})};
  RMat inv;
  REQUIRE(invert(a, inv));
  CHECK(inv[0][0] == 1);
  CHECK(inv[0][1] == -1);
  CHECK(inv[1][0] == -1);
  CHECK(inv[1][1] == 2);

  RMat sing{rv({1, 2}), rv({2, 4})};
  RMat out;
  CHECK_FALSE(invert(sing, out));
}

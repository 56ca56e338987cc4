#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lfpoly/dd.hpp"
#include "lfpoly/models.hpp"
#include "oracle.hpp"

using namespace lfpoly;

namespace {

HRow ineq(std::initializer_list<int> coeffs, int offset) {
  HRow r;
  r.offset = offset;
  for (int c : coeffs) r.coeffs.emplace_back(c);
  return r;
}

HPolytope unit_simplex3() {
  HPolytope h;
  h.dim = 3;
  h.inequalities = {ineq({1, 0, 0}, 0), ineq({0, 1, 0}, 0), ineq({0, 0, 1}, 0)};
  HRow eq = ineq({1, 1, 1}, -1);
  h.equalities = {eq};
  return h;
}

HPolytope cube(int d) {
  HPolytope h;
  h.dim = d;
  for (int i = 0; i < d; ++i) {
    HRow lo;
    lo.offset = 0;
    lo.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
    lo.coeffs[static_cast<std::size_t>(i)] = 1;
    HRow hi;
    hi.offset = 1;
    hi.coeffs.assign(static_cast<std::size_t>(d), Rational(0));
    hi.coeffs[static_cast<std::size_t>(i)] = -1;
    h.inequalities.push_back(lo);
    h.inequalities.push_back(hi);
  }
  return h;
}

bool satisfies(const HPolytope& h, const RVec& p) {
  for (const auto& r : h.inequalities)
    if (evaluate_row(r, p) < 0) return false;
  for (const auto& r : h.equalities)
    if (evaluate_row(r, p) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("vertex_enum on the unit simplex") {
  VPolytope v = vertex_enum(unit_simplex3());
  REQUIRE(v.vertices.size() == 3);
  for (const auto& vert : v.vertices) {
    Rational sum = 0;
    int ones = 0;
    for (const auto& c : vert) {
      sum += c;
      if (c == 1) ++ones;
    }
    CHECK(sum == 1);
    CHECK(ones == 1);
  }
}

TEST_CASE("vertex_enum on cubes") {
  VPolytope v3 = vertex_enum(cube(3));
  CHECK(v3.vertices.size() == 8);
  VPolytope v4 = vertex_enum(cube(4));
  CHECK(v4.vertices.size() == 16);
}

TEST_CASE("vertex_enum error paths") {
  HPolytope halfspace;
  halfspace.dim = 1;
  halfspace.inequalities = {ineq({1}, 0)};
  CHECK_THROWS_AS(vertex_enum(halfspace), unbounded_error);

  HPolytope empty;
  empty.dim = 1;
  empty.inequalities = {ineq({1}, -1), ineq({-1}, 0)};  // x >= 1 and x <= 0
  CHECK_THROWS_AS(vertex_enum(empty), empty_error);

  HPolytope bad_eq;
  bad_eq.dim = 1;
  bad_eq.equalities = {ineq({1}, -1), ineq({1}, -2)};  // x = 1 and x = 2
  CHECK_THROWS_AS(vertex_enum(bad_eq), empty_error);

  HPolytope slab;  // unbounded along y
  slab.dim = 2;
  slab.inequalities = {ineq({1, 0}, 0), ineq({-1, 0}, 1)};
  CHECK_THROWS_AS(vertex_enum(slab), unbounded_error);
}

TEST_CASE("ns vertex enumeration matches the brute-force oracle") {
  Scenario chsh = Scenario::homogeneous(2, 2, 2, 2);
  HPolytope h = ns_hrep(chsh);
  VPolytope dd = vertex_enum(h);
  auto oracle_vertices = oracle::brute_force_vertices(h);
  REQUIRE(dd.vertices.size() == 24);
  REQUIRE(oracle_vertices.size() == 24);
  CHECK(dd.vertices == oracle_vertices);  // both sorted ascending
}

TEST_CASE("the CH rows plus positivity and no-signalling cut out the local polytope") {
  Scenario chsh = Scenario::homogeneous(2, 2, 2, 2);
  HPolytope h = ns_hrep(chsh);
  for (const auto& row : ch_inequalities(chsh)) h.inequalities.push_back(negate_row(row));
  VPolytope v = vertex_enum(h);
  VPolytope ld = ld_vertices(chsh);
  CHECK(v.vertices == ld.vertices);
}

TEST_CASE("facet_enum on a triangle") {
  VPolytope tri;
  tri.dim = 2;
  tri.vertices = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  HPolytope h = facet_enum(tri);
  CHECK(h.equalities.empty());
  CHECK(h.inequalities.size() == 3);
  for (const auto& vert : tri.vertices) CHECK(satisfies(h, vert));
}

TEST_CASE("facet_enum on a single point pins all coordinates") {
  VPolytope pt;
  pt.dim = 3;
  pt.vertices = {{Rational(1, 2), Rational(-1), Rational(3)}};
  HPolytope h = facet_enum(pt);
  CHECK(h.inequalities.empty());
  CHECK(h.equalities.size() == 3);
  CHECK(satisfies(h, pt.vertices[0]));
  RVec other{Rational(1, 2), Rational(-1), Rational(4)};
  CHECK_FALSE(satisfies(h, other));
}

TEST_CASE("facet_enum of a lower-dimensional polytope emits affine-hull equalities") {
  // A segment in 3-space.
  VPolytope seg;
  seg.dim = 3;
  seg.vertices = {{Rational(0), Rational(0), Rational(1)}, {Rational(1), Rational(1), Rational(1)}};
  HPolytope h = facet_enum(seg);
  CHECK(h.equalities.size() == 2);
  CHECK(h.inequalities.size() == 2);
  for (const auto& vert : seg.vertices) CHECK(satisfies(h, vert));
  RVec mid{Rational(1, 2), Rational(1, 2), Rational(1)};
  CHECK(satisfies(h, mid));
  RVec off{Rational(1, 2), Rational(1, 2), Rational(2)};
  CHECK_FALSE(satisfies(h, off));
}

TEST_CASE("facet rows are tight on full-rank vertex sets") {
  VPolytope v = vertex_enum(cube(3));
  HPolytope h = facet_enum(v);
  REQUIRE(h.inequalities.size() == 6);
  for (const auto& row : h.inequalities) {
    auto tight = tight_vertices(row, v);
    std::vector<RVec> pts;
    for (auto i : tight) pts.push_back(v.vertices[i]);
    CHECK(affine_rank(pts) == 3);  // a 2-face of a 3-polytope
  }
}

TEST_CASE("round-trip: facet_enum after vertex_enum describes the same set") {
  std::vector<HPolytope> cases{unit_simplex3(), cube(3), ns_hrep(Scenario::homogeneous(2, 2, 2, 2))};
  std::mt19937 rng(7);
  for (const auto& h : cases) {
    VPolytope v1 = vertex_enum(h);
    HPolytope h2 = facet_enum(v1);
    VPolytope v2 = vertex_enum(h2);
    CHECK(polytope_equal(v1, v2));
    for (const auto& vert : v1.vertices) {
      CHECK(satisfies(h, vert));
      CHECK(satisfies(h2, vert));
    }
    // Random rational convex combinations live in both descriptions.
    std::uniform_int_distribution<int> w(0, 5);
    for (int trial = 0; trial < 10; ++trial) {
      RVec p(static_cast<std::size_t>(h.dim), Rational(0));
      Rational total = 0;
      for (const auto& vert : v1.vertices) {
        Rational wi(w(rng));
        total += wi;
        for (std::size_t c = 0; c < p.size(); ++c) p[c] += wi * vert[c];
      }
      if (total == 0) continue;
      for (auto& c : p) c /= total;
      CHECK(satisfies(h, p));
      CHECK(satisfies(h2, p));
    }
    // Points pushed outward through a vertex leave both descriptions.
    RVec c = centroid(v1);
    for (const auto& vert : v1.vertices) {
      RVec outside(vert.size());
      for (std::size_t k = 0; k < vert.size(); ++k)
        outside[k] = vert[k] + (vert[k] - c[k]) / 100;
      CHECK_FALSE(satisfies(h, outside));
      CHECK_FALSE(satisfies(h2, outside));
    }
  }
}

TEST_CASE("vertex_enum output is minimal") {
  VPolytope ns = ns_vertices(Scenario::homogeneous(2, 2, 2, 2));
  VPolytope pruned = remove_redundant_vertices(ns);
  CHECK(pruned.vertices == ns.vertices);
}

TEST_CASE("scale guard rejects oversized dimensions") {
  HPolytope h;
  h.dim = 65;
  CHECK_THROWS_AS(vertex_enum(h), scale_error);
}

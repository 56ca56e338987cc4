#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lfpoly/membership.hpp"
#include "lfpoly/models.hpp"
#include "lfpoly/symmetry.hpp"

using namespace lfpoly;

namespace {

Behaviour uniform_chsh() {
  Scenario s = Scenario::homogeneous(2, 2, 2, 2);
  return Behaviour{s, RVec(16, Rational(1, 4))};
}

RVec pr_box() {
  Scenario s = Scenario::homogeneous(2, 2, 2, 2);
  Behaviour p{s, RVec(16, Rational(0))};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) p.at(x, y, a, b) = Rational(1, 2);
  return p.coords;
}

}  // namespace

TEST_CASE("uniform behaviour is inside the local polytope with exact weights") {
  VPolytope ld = ld_vertices(Scenario::homogeneous(2, 2, 2, 2));
  Behaviour u = uniform_chsh();
  MembershipResult r = membership(u, ld);
  REQUIRE(r.inside);
  Rational total = 0;
  RVec recon(16, Rational(0));
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    CHECK(r.weights[i] >= 0);
    total += r.weights[i];
    for (std::size_t c = 0; c < 16; ++c) recon[c] += r.weights[i] * ld.vertices[i][c];
  }
  CHECK(total == 1);
  CHECK(recon == u.coords);
}

TEST_CASE("the PR box is outside the local polytope with a CH-class separator") {
  Scenario s = Scenario::homogeneous(2, 2, 2, 2);
  VPolytope ld = ld_vertices(s);
  RVec pr = pr_box();
  MembershipResult r = membership(pr, ld);
  REQUIRE_FALSE(r.inside);
  for (const auto& v : ld.vertices) CHECK(evaluate_row(r.separator, v) >= 0);
  CHECK(evaluate_row(r.separator, pr) < 0);

  SymmetryGroup g = scenario_symmetry_group(s);
  HRow sep_class = canonicalize_in_scenario(r.separator, s, g);
  HRow ch_class = canonicalize_in_scenario(negate_row(ch_base_row(s)), s, g);
  CHECK(sep_class == ch_class);
}

TEST_CASE("a vertex is inside with weight one on itself") {
  VPolytope ld = ld_vertices(Scenario::homogeneous(2, 2, 2, 2));
  for (std::size_t i : {std::size_t(0), std::size_t(7), ld.vertices.size() - 1}) {
    MembershipResult r = membership(ld.vertices[i], ld);
    REQUIRE(r.inside);
    for (std::size_t j = 0; j < r.weights.size(); ++j)
      CHECK(r.weights[j] == (i == j ? Rational(1) : Rational(0)));
  }
}

TEST_CASE("membership dimension mismatch") {
  VPolytope ld = ld_vertices(Scenario::homogeneous(2, 2, 2, 2));
  RVec wrong(15, Rational(0));
  CHECK_THROWS_AS(membership(wrong, ld), dimension_error);
}

TEST_CASE("random mixtures are inside; outward perturbations are outside") {
  VPolytope ld = ld_vertices(Scenario::homogeneous(2, 2, 2, 2));
  RVec c = centroid(ld);
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> w(0, 4);
  for (int trial = 0; trial < 8; ++trial) {
    RVec p(16, Rational(0));
    Rational total = 0;
    for (const auto& v : ld.vertices) {
      Rational wi(w(rng));
      total += wi;
      for (std::size_t k = 0; k < 16; ++k) p[k] += wi * v[k];
    }
    if (total == 0) continue;
    for (auto& x : p) x /= total;
    CHECK(membership(p, ld).inside);
  }
  for (std::size_t i = 0; i < ld.vertices.size(); i += 5) {
    RVec out(16);
    for (std::size_t k = 0; k < 16; ++k)
      out[k] = ld.vertices[i][k] + (ld.vertices[i][k] - c[k]) / 1000;
    MembershipResult r = membership(out, ld);
    CHECK_FALSE(r.inside);
  }
}

TEST_CASE("polytope_equal") {
  Scenario s = Scenario::homogeneous(2, 2, 2, 2);
  VPolytope ld = ld_vertices(s);
  VPolytope shuffled = ld;
  std::reverse(shuffled.vertices.begin(), shuffled.vertices.end());
  CHECK(polytope_equal(ld, shuffled));

  VPolytope ns = ns_vertices(s);
  CHECK_FALSE(polytope_equal(ld, ns));

  VPolytope wrong;
  wrong.dim = 15;
  CHECK_THROWS_AS(polytope_equal(ld, wrong), dimension_error);
}

TEST_CASE("remove_redundant_vertices drops interior points") {
  VPolytope ld = ld_vertices(Scenario::homogeneous(2, 2, 2, 2));
  VPolytope padded = ld;
  padded.vertices.push_back(centroid(ld));
  Behaviour u = uniform_chsh();
  padded.vertices.push_back(u.coords);
  VPolytope pruned = remove_redundant_vertices(padded);
  CHECK(pruned.vertices == ld.vertices);
}

#include <catch2/catch_amalgamated.hpp>

#include "lfpoly/dd.hpp"
#include "lfpoly/membership.hpp"
#include "lfpoly/models.hpp"

using namespace lfpoly;

namespace {

const Scenario chsh = Scenario::homogeneous(2, 2, 2, 2);

std::vector<std::vector<int>> subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

bool all_inside(const VPolytope& pts, const VPolytope& hull) {
  for (const auto& v : pts.vertices)
    if (!membership(v, hull).inside) return false;
  return true;
}

// Affine rank of equality rows viewed as (offset|coeffs) vectors.
int equality_rank(const std::vector<HRow>& rows) {
  RMat m;
  for (const auto& r : rows) {
    RVec v;
    v.push_back(r.offset);
    for (const auto& c : r.coeffs) v.push_back(c);
    m.push_back(std::move(v));
  }
  return rref(m);
}

}  // namespace

TEST_CASE("ld vertex counts") {
  CHECK(ld_vertices(chsh).vertices.size() == 16);
  CHECK(ld_vertices(Scenario::homogeneous(1, 2, 1, 2)).vertices.size() == 4);
  CHECK(ld_vertices(Scenario::homogeneous(3, 2, 3, 2)).vertices.size() == 64);
}

TEST_CASE("ld vertices are deterministic behaviours") {
  VPolytope ld = ld_vertices(chsh);
  for (const auto& v : ld.vertices) {
    Behaviour p{chsh, v};
    CHECK(validate_behaviour(p).ok);
    CHECK(is_no_signalling(p));
    for (const auto& c : v) CHECK((c == 0 || c == 1));
  }
}

TEST_CASE("ns_hrep row counts and equality rank on the 2x2 scenario") {
  HPolytope h = ns_hrep(chsh);
  CHECK(h.inequalities.size() == 16);  // positivity
  CHECK(normalization_rows(chsh).size() == 4);
  CHECK(no_signalling_rows(chsh).size() == 8);
  CHECK(h.equalities.size() == 12);
  // Jointly the equalities have rank 8, so the polytope is 8-dimensional.
  CHECK(equality_rank(h.equalities) == 8);
}

TEST_CASE("ns_hrep with a single input per party has no marginal rows") {
  Scenario s = Scenario::homogeneous(1, 2, 1, 2);
  CHECK(no_signalling_rows(s).empty());
}

TEST_CASE("ns_hrep respects heterogeneous alphabets") {
  Scenario s;
  s.alice_outcomes = {2, 3};
  s.bob_outcomes = {2, 2};
  HPolytope h = ns_hrep(s);
  h.validate();
  CHECK(h.inequalities.size() == static_cast<std::size_t>(s.dimension()));
  CHECK(normalization_rows(s).size() == 4);
  // Alice marginal rows: (2+3) outcomes * 1 Bob pair; Bob rows: (2+2) * 1.
  CHECK(no_signalling_rows(s).size() == 9);
  // Every emitted coefficient references a valid coordinate of the scenario.
  for (const auto& row : h.equalities) CHECK(row.coeffs.size() == static_cast<std::size_t>(s.dimension()));
}

TEST_CASE("ns vertices of the 2x2 scenario: 16 local plus 8 PR-type") {
  VPolytope ns = ns_vertices(chsh);
  REQUIRE(ns.vertices.size() == 24);
  VPolytope ld = ld_vertices(chsh);
  int local = 0, pr_type = 0;
  for (const auto& v : ns.vertices) {
    Behaviour p{chsh, v};
    REQUIRE(validate_behaviour(p).ok);
    CHECK(is_no_signalling(p));
    if (membership(v, ld).inside) {
      ++local;
    } else {
      ++pr_type;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          for (int o = 0; o < 2; ++o) {
            CHECK(alice_marginal(p, o, x, y) == Rational(1, 2));
            CHECK(bob_marginal(p, o, x, y) == Rational(1, 2));
          }
    }
  }
  CHECK(local == 16);
  CHECK(pr_type == 8);
}

TEST_CASE("one-sided scenarios have no nonlocal extreme points") {
  Scenario s = Scenario::homogeneous(1, 2, 2, 2);
  VPolytope ns = ns_vertices(s);
  VPolytope ld = ld_vertices(s);
  CHECK(polytope_equal(ns, ld));
  CHECK(ns.vertices.size() == 8);

  Scenario trivial = Scenario::homogeneous(1, 2, 1, 2);
  CHECK(ns_vertices(trivial).vertices == ld_vertices(trivial).vertices);
}

TEST_CASE("pd identities: empty marks give ns, full marks give ld") {
  VPolytope ns = ns_vertices(chsh);
  VPolytope ld = ld_vertices(chsh);
  CHECK(polytope_equal(pd_vertices({chsh, {}, {}}), ns));
  CHECK(polytope_equal(pd_vertices({chsh, {0, 1}, {0, 1}}), ld));
}

TEST_CASE("one free Alice input collapses pd to ld, any Bob subset") {
  VPolytope ld = ld_vertices(chsh);
  for (int k = 0; k < 2; ++k) {
    for (const auto& iy : subsets(2)) {
      PDSpec spec;
      spec.scenario = chsh;
      spec.det_alice = {1 - k};  // all Alice inputs except k
      spec.det_bob = iy;
      CHECK(polytope_equal(pd_vertices(spec), ld));
    }
  }
}

TEST_CASE("inclusion chain: ld inside pd inside ns for every marking") {
  VPolytope ns = ns_vertices(chsh);
  VPolytope ld = ld_vertices(chsh);
  for (const auto& ix : subsets(2)) {
    for (const auto& iy : subsets(2)) {
      VPolytope pd = pd_vertices({chsh, ix, iy});
      CHECK(all_inside(ld, pd));
      CHECK(all_inside(pd, ns));
    }
  }
}

TEST_CASE("marking more inputs never enlarges the pd polytope") {
  std::vector<std::pair<PDSpec, PDSpec>> grown{
      {{chsh, {}, {}}, {chsh, {0}, {}}},
      {{chsh, {0}, {}}, {chsh, {0, 1}, {}}},
      {{chsh, {1}, {0}}, {chsh, {0, 1}, {0}}},
  };
  for (const auto& [old_spec, new_spec] : grown) {
    VPolytope old_p = pd_vertices(old_spec);
    VPolytope new_p = pd_vertices(new_spec);
    CHECK(all_inside(new_p, old_p));
  }
}

TEST_CASE("lf equals ld for two settings, strictly contains it for three") {
  CHECK(polytope_equal(lf_vertices(chsh), ld_vertices(chsh)));

  Scenario s3 = Scenario::homogeneous(3, 2, 3, 2);
  VPolytope lf = lf_vertices(s3);
  VPolytope ld = ld_vertices(s3);
  CHECK_FALSE(polytope_equal(lf, ld));
  bool witness = false;
  for (const auto& v : lf.vertices)
    if (!membership(v, ld).inside) {
      witness = true;
      break;
    }
  CHECK(witness);
  for (const auto& v : lf.vertices) {
    Behaviour p{s3, v};
    CHECK(is_no_signalling(p));
  }
}

TEST_CASE("lf needs two settings per side") {
  CHECK_THROWS_AS(lf_vertices(Scenario::homogeneous(1, 2, 2, 2)), bounds_error);
}

TEST_CASE("sw vertices: round determinism and Bob-marginal independence") {
  auto labeled = sw_vertices_labeled(2, 2, 2, {2, 2});
  Scenario eff = sw_scenario(2, 2, 2, {2, 2});
  REQUIRE_FALSE(labeled.empty());
  for (const auto& [label, coords] : labeled) {
    Behaviour p{eff, coords};
    REQUIRE(validate_behaviour(p).ok);
    // Friend rounds are deterministic.
    for (int i = 0; i < 2; ++i)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a) {
          Rational m = alice_marginal(p, a, i, y);
          CHECK((m == 0 || m == 1));
          CHECK(m == ((a == label.friend_outcomes[static_cast<std::size_t>(i)]) ? 1 : 0));
        }
    // Bob's conditional marginal is the same for every effective input.
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) {
        Rational ref = bob_marginal(p, b, 0, y);
        for (int x = 1; x < eff.alice_inputs(); ++x)
          CHECK(bob_marginal(p, b, x, y) == ref);
      }
  }
}

TEST_CASE("sw construction coincides with the all-but-last pd construction") {
  for (int rounds : {1, 2}) {
    VPolytope sw = sw_vertices(rounds, 2, 2, {2, 2});
    Scenario eff = sw_scenario(rounds, 2, 2, {2, 2});
    PDSpec spec;
    spec.scenario = eff;
    for (int i = 0; i < rounds; ++i) spec.det_alice.push_back(i);
    VPolytope pd = pd_vertices(spec);
    CHECK(sw.vertices == pd.vertices);
  }
}

TEST_CASE("sw equals ld on the effective scenario (small rounds)") {
  for (int rounds : {1, 2}) {
    VPolytope sw = sw_vertices(rounds, 2, 2, {2, 2});
    VPolytope ld = ld_vertices(sw_scenario(rounds, 2, 2, {2, 2}));
    CHECK(polytope_equal(sw, ld));
  }
}

TEST_CASE("ch row values on the key behaviours") {
  auto rows = ch_inequalities(chsh);
  REQUIRE(rows.size() == 8);
  VPolytope ld = ld_vertices(chsh);

  // Deterministic points score in [-2, 0] and each row attains 0.
  for (const auto& row : rows) {
    Rational best(-10);
    for (const auto& v : ld.vertices) {
      Rational val = evaluate_row(row, v);
      CHECK(val <= 0);
      CHECK(val >= -2);
      if (val > best) best = val;
    }
    CHECK(best == 0);
  }

  // Uniform behaviour scores -1/2 on the base row.
  Behaviour uniform{chsh, RVec(16, Rational(1, 4))};
  CHECK(evaluate_inequality(rows[0], uniform) == Rational(-1, 2));

  // The nonlocal no-signalling vertices peak at 1/2.
  VPolytope ns = ns_vertices(chsh);
  Rational peak(0);
  for (const auto& v : ns.vertices) {
    if (membership(v, ld).inside) continue;
    for (const auto& row : rows) {
      Rational val = evaluate_row(row, v);
      if (val > peak) peak = val;
    }
  }
  CHECK(peak == Rational(1, 2));

  // Zero row evaluates to zero; mismatched dimensions are rejected.
  HRow zero;
  zero.offset = 0;
  zero.coeffs.assign(16, Rational(0));
  CHECK(evaluate_inequality(zero, uniform) == 0);
  HRow bad;
  bad.offset = 0;
  bad.coeffs.assign(15, Rational(0));
  CHECK_THROWS_AS(evaluate_inequality(bad, uniform), dimension_error);
}

TEST_CASE("ch rows require the 2x2 shape") {
  CHECK_THROWS_AS(ch_base_row(Scenario::homogeneous(3, 2, 3, 2)), bounds_error);
  CHECK_THROWS_AS(ch_base_row(Scenario::homogeneous(2, 3, 2, 3)), bounds_error);
}

TEST_CASE("facets of ld are the eight CH rows plus positivity") {
  VPolytope ld = ld_vertices(chsh);
  HPolytope facets = facet_enum(ld);
  CHECK(facets.inequalities.size() == 24);
  SymmetryGroup g = scenario_symmetry_group(chsh);
  HRow ch_class = canonicalize_in_scenario(negate_row(ch_base_row(chsh)), chsh, g);
  int ch_count = 0, pos_count = 0;
  for (const auto& row : facets.inequalities) {
    if (canonicalize_in_scenario(row, chsh, g) == ch_class)
      ++ch_count;
    else
      ++pos_count;
  }
  CHECK(ch_count == 8);
  CHECK(pos_count == 16);
}

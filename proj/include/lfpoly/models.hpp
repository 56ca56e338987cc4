#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/dd.hpp"
#include "lfpoly/membership.hpp"
#include "lfpoly/polytope.hpp"
#include "lfpoly/scenario.hpp"
#include "lfpoly/symmetry.hpp"

namespace lfpoly {

// Vertex sets of the correlation polytopes: local-deterministic (ld),
// no-signalling (ns), partially deterministic (pd), local-friendliness
// (lf = pd on the first input of each side), and the sequential
// superobserver polytope (sw).

// One deterministic local strategy: an outcome per input for each party.
struct DeterministicStrategy {
  std::vector<int> alice_map;
  std::vector<int> bob_map;
};

// Inputs forced deterministic on each side; the rest behave as extreme
// points of the reduced no-signalling polytope.
struct PDSpec {
  Scenario scenario;
  std::vector<int> det_alice;  // 0-based Alice inputs, ascending
  std::vector<int> det_bob;

  void validate() const {
    scenario.validate();
    for (std::size_t i = 0; i < det_alice.size(); ++i) {
      if (det_alice[i] < 0 || det_alice[i] >= scenario.alice_inputs())
        throw bounds_error("PDSpec: alice input out of range");
      if (i > 0 && det_alice[i] <= det_alice[i - 1])
        throw bounds_error("PDSpec: alice inputs must be strictly ascending");
    }
    for (std::size_t i = 0; i < det_bob.size(); ++i) {
      if (det_bob[i] < 0 || det_bob[i] >= scenario.bob_inputs())
        throw bounds_error("PDSpec: bob input out of range");
      if (i > 0 && det_bob[i] <= det_bob[i - 1])
        throw bounds_error("PDSpec: bob inputs must be strictly ascending");
    }
  }
};

namespace detail {

// Iterates assignments in odometer order: one value per slot, slot i
// ranging over [0, radix[i]).
inline bool next_assignment(std::vector<int>& digits, const std::vector<int>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace detail

inline Behaviour deterministic_behaviour(const Scenario& s, const DeterministicStrategy& st) {
  Behaviour p;
  p.scenario = s;
  p.coords.assign(static_cast<std::size_t>(s.dimension()), Rational(0));
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int y = 0; y < s.bob_inputs(); ++y)
      p.at(x, y, st.alice_map[static_cast<std::size_t>(x)],
           st.bob_map[static_cast<std::size_t>(y)]) = 1;
  return p;
}

// One vertex per deterministic strategy pair; they are all distinct and all
// extreme (0/1 points), so no pruning pass is needed.
inline VPolytope ld_vertices(const Scenario& s) {
  s.validate();
  check_dimension_guard(s.dimension(), "ld_vertices");
  std::size_t count = 1;
  for (int n : s.alice_outcomes) count *= static_cast<std::size_t>(n);
  for (int n : s.bob_outcomes) count *= static_cast<std::size_t>(n);
  check_count_guard(count, "ld_vertices");

  VPolytope out;
  out.dim = s.dimension();
  DeterministicStrategy st;
  st.alice_map.assign(static_cast<std::size_t>(s.alice_inputs()), 0);
  st.bob_map.assign(static_cast<std::size_t>(s.bob_inputs()), 0);
  std::vector<int> digits(st.alice_map.size() + st.bob_map.size(), 0);
  std::vector<int> radix;
  for (int n : s.alice_outcomes) radix.push_back(n);
  for (int n : s.bob_outcomes) radix.push_back(n);
  do {
    for (std::size_t i = 0; i < st.alice_map.size(); ++i) st.alice_map[i] = digits[i];
    for (std::size_t i = 0; i < st.bob_map.size(); ++i)
      st.bob_map[i] = digits[st.alice_map.size() + i];
    out.vertices.push_back(deterministic_behaviour(s, st).coords);
  } while (detail::next_assignment(digits, radix));
  out.sort_dedup();
  return out;
}

// Equality rows shared by every behaviour polytope of the scenario: unit
// block sums plus marginal independence of the far party's input.
inline std::vector<HRow> normalization_rows(const Scenario& s) {
  std::vector<HRow> rows;
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int y = 0; y < s.bob_inputs(); ++y) {
      HRow r;
      r.offset = -1;
      r.coeffs.assign(static_cast<std::size_t>(s.dimension()), Rational(0));
      for (int a = 0; a < s.alice_outcomes[x]; ++a)
        for (int b = 0; b < s.bob_outcomes[y]; ++b)
          r.coeffs[static_cast<std::size_t>(s.coord_index(x, y, a, b))] = 1;
      rows.push_back(std::move(r));
    }
  return rows;
}

// Marginal-difference rows between consecutive far-party inputs; exactly
// zero on no-signalling behaviours.
inline std::vector<HRow> no_signalling_rows(const Scenario& s) {
  std::vector<HRow> rows;
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int a = 0; a < s.alice_outcomes[x]; ++a)
      for (int y = 1; y < s.bob_inputs(); ++y) {
        HRow r;
        r.offset = 0;
        r.coeffs.assign(static_cast<std::size_t>(s.dimension()), Rational(0));
        for (int b = 0; b < s.bob_outcomes[y - 1]; ++b)
          r.coeffs[static_cast<std::size_t>(s.coord_index(x, y - 1, a, b))] = 1;
        for (int b = 0; b < s.bob_outcomes[y]; ++b)
          r.coeffs[static_cast<std::size_t>(s.coord_index(x, y, a, b))] = -1;
        rows.push_back(std::move(r));
      }
  for (int y = 0; y < s.bob_inputs(); ++y)
    for (int b = 0; b < s.bob_outcomes[y]; ++b)
      for (int x = 1; x < s.alice_inputs(); ++x) {
        HRow r;
        r.offset = 0;
        r.coeffs.assign(static_cast<std::size_t>(s.dimension()), Rational(0));
        for (int a = 0; a < s.alice_outcomes[x - 1]; ++a)
          r.coeffs[static_cast<std::size_t>(s.coord_index(x - 1, y, a, b))] = 1;
        for (int a = 0; a < s.alice_outcomes[x]; ++a)
          r.coeffs[static_cast<std::size_t>(s.coord_index(x, y, a, b))] = -1;
        rows.push_back(std::move(r));
      }
  return rows;
}

inline HPolytope ns_hrep(const Scenario& s) {
  s.validate();
  HPolytope h;
  h.dim = s.dimension();
  for (int i = 0; i < h.dim; ++i) {
    HRow r;
    r.offset = 0;
    r.coeffs.assign(static_cast<std::size_t>(h.dim), Rational(0));
    r.coeffs[static_cast<std::size_t>(i)] = 1;
    h.inequalities.push_back(std::move(r));
  }
  h.equalities = normalization_rows(s);
  auto ns = no_signalling_rows(s);
  h.equalities.insert(h.equalities.end(), ns.begin(), ns.end());
  return h;
}

inline VPolytope ns_vertices(const Scenario& s) { return vertex_enum(ns_hrep(s)); }

namespace detail {

// Reduced scenario for PD construction: the unmarked inputs of each side,
// with a single one-outcome dummy input standing in for a side whose
// inputs are all marked. The dummy makes the cross-term formulas uniform.
struct ReducedScenario {
  Scenario scenario;
  std::vector<int> alice_map;  // reduced Alice input -> original input, or empty for dummy
  std::vector<int> bob_map;
  bool alice_dummy = false;
  bool bob_dummy = false;
};

inline ReducedScenario reduce_scenario(const PDSpec& spec) {
  ReducedScenario red;
  const Scenario& s = spec.scenario;
  for (int x = 0; x < s.alice_inputs(); ++x)
    if (std::find(spec.det_alice.begin(), spec.det_alice.end(), x) == spec.det_alice.end()) {
      red.alice_map.push_back(x);
      red.scenario.alice_outcomes.push_back(s.alice_outcomes[x]);
    }
  for (int y = 0; y < s.bob_inputs(); ++y)
    if (std::find(spec.det_bob.begin(), spec.det_bob.end(), y) == spec.det_bob.end()) {
      red.bob_map.push_back(y);
      red.scenario.bob_outcomes.push_back(s.bob_outcomes[y]);
    }
  if (red.scenario.alice_outcomes.empty()) {
    red.scenario.alice_outcomes.push_back(1);
    red.alice_dummy = true;
  }
  if (red.scenario.bob_outcomes.empty()) {
    red.scenario.bob_outcomes.push_back(1);
    red.bob_dummy = true;
  }
  return red;
}

}  // namespace detail

// Candidate vertices of the partially deterministic polytope: an outcome
// assignment on each marked input combined with an extreme point q of the
// reduced no-signalling polytope. Marked/marked blocks are products of
// deltas, mixed blocks pair a delta with the matching marginal of q, and
// unmarked blocks copy q. The list is pruned to its extreme points.
inline VPolytope pd_vertices(const PDSpec& spec) {
  spec.validate();
  const Scenario& s = spec.scenario;
  check_dimension_guard(s.dimension(), "pd_vertices");
  auto red = detail::reduce_scenario(spec);
  VPolytope q_ext = ns_vertices(red.scenario);

  std::vector<int> alice_marked(static_cast<std::size_t>(s.alice_inputs()), -1);
  for (std::size_t i = 0; i < spec.det_alice.size(); ++i)
    alice_marked[static_cast<std::size_t>(spec.det_alice[i])] = static_cast<int>(i);
  std::vector<int> bob_marked(static_cast<std::size_t>(s.bob_inputs()), -1);
  for (std::size_t i = 0; i < spec.det_bob.size(); ++i)
    bob_marked[static_cast<std::size_t>(spec.det_bob[i])] = static_cast<int>(i);
  std::vector<int> alice_reduced(static_cast<std::size_t>(s.alice_inputs()), -1);
  for (std::size_t i = 0; i < red.alice_map.size(); ++i)
    alice_reduced[static_cast<std::size_t>(red.alice_map[i])] = static_cast<int>(i);
  std::vector<int> bob_reduced(static_cast<std::size_t>(s.bob_inputs()), -1);
  for (std::size_t i = 0; i < red.bob_map.size(); ++i)
    bob_reduced[static_cast<std::size_t>(red.bob_map[i])] = static_cast<int>(i);

  std::vector<int> radix;
  for (int x : spec.det_alice) radix.push_back(s.alice_outcomes[x]);
  for (int y : spec.det_bob) radix.push_back(s.bob_outcomes[y]);

  VPolytope out;
  out.dim = s.dimension();
  const std::size_t na_marked = spec.det_alice.size();

  for (const auto& qc : q_ext.vertices) {
    Behaviour q{red.scenario, qc};
    std::vector<int> digits(radix.size(), 0);
    do {
      RVec point(static_cast<std::size_t>(s.dimension()), Rational(0));
      for (int x = 0; x < s.alice_inputs(); ++x) {
        for (int y = 0; y < s.bob_inputs(); ++y) {
          int am = alice_marked[static_cast<std::size_t>(x)];
          int bm = bob_marked[static_cast<std::size_t>(y)];
          for (int a = 0; a < s.alice_outcomes[x]; ++a) {
            for (int b = 0; b < s.bob_outcomes[y]; ++b) {
              Rational val;
              if (am >= 0 && bm >= 0) {
                val = (a == digits[static_cast<std::size_t>(am)] &&
                       b == digits[na_marked + static_cast<std::size_t>(bm)])
                          ? 1
                          : 0;
              } else if (am >= 0) {
                if (a != digits[static_cast<std::size_t>(am)]) continue;
                int yr = bob_reduced[static_cast<std::size_t>(y)];
                val = bob_marginal(q, b, 0, yr);
              } else if (bm >= 0) {
                if (b != digits[na_marked + static_cast<std::size_t>(bm)]) continue;
                int xr = alice_reduced[static_cast<std::size_t>(x)];
                val = alice_marginal(q, a, xr, 0);
              } else {
                val = q.at(alice_reduced[static_cast<std::size_t>(x)],
                           bob_reduced[static_cast<std::size_t>(y)], a, b);
              }
              if (!is_zero(val))
                point[static_cast<std::size_t>(s.coord_index(x, y, a, b))] = val;
            }
          }
        }
      }
      out.vertices.push_back(std::move(point));
      check_count_guard(out.vertices.size(), "pd_vertices");
    } while (detail::next_assignment(digits, radix));
  }
  return remove_redundant_vertices(std::move(out));
}

// One-friend-per-side correlation polytope: both parties' first inputs are
// the "ask the friend" settings, so they are the deterministic ones.
inline VPolytope lf_vertices(const Scenario& s) {
  if (s.alice_inputs() < 2 || s.bob_inputs() < 2)
    throw bounds_error("lf_vertices: need at least two inputs per party");
  return pd_vertices({s, {0}, {0}});
}

// Label for a sequential-scenario vertex: the friend's outcomes over the
// rounds plus the index of a reduced no-signalling extreme point.
struct SwVertexLabel {
  std::vector<int> friend_outcomes;
  int ns_extreme_index = 0;
};

// Effective scenario of the sequential protocol: Alice's inputs are the R
// rounds (friend alphabet) plus the final direct measurement.
inline Scenario sw_scenario(int rounds, int friend_alphabet, int final_alphabet,
                            const std::vector<int>& bob_outcomes) {
  if (rounds < 1) throw bounds_error("sw_scenario: rounds must be >= 1");
  if (friend_alphabet < 1 || final_alphabet < 1)
    throw bounds_error("sw_scenario: alphabets must be >= 1");
  Scenario s;
  s.alice_outcomes.assign(static_cast<std::size_t>(rounds), friend_alphabet);
  s.alice_outcomes.push_back(final_alphabet);
  s.bob_outcomes = bob_outcomes;
  s.validate();
  return s;
}

// Vertices of the sequential superobserver polytope. For a label
// (c_1..c_R, j): rounds i <= R emit delta_{a,c_i} times the Bob marginal of
// the j-th reduced extreme point; the final input emits that extreme point
// itself. Distinct labels can repeat a point, so the list is deduplicated
// and pruned.
inline std::vector<std::pair<SwVertexLabel, RVec>> sw_vertices_labeled(
    int rounds, int friend_alphabet, int final_alphabet, const std::vector<int>& bob_outcomes) {
  Scenario eff = sw_scenario(rounds, friend_alphabet, final_alphabet, bob_outcomes);
  check_dimension_guard(eff.dimension(), "sw_vertices");

  Scenario reduced;
  reduced.alice_outcomes = {final_alphabet};
  reduced.bob_outcomes = bob_outcomes;
  VPolytope q_ext = ns_vertices(reduced);

  std::vector<std::pair<SwVertexLabel, RVec>> out;
  std::vector<int> radix(static_cast<std::size_t>(rounds), friend_alphabet);
  for (std::size_t j = 0; j < q_ext.vertices.size(); ++j) {
    Behaviour q{reduced, q_ext.vertices[j]};
    std::vector<int> record(static_cast<std::size_t>(rounds), 0);
    do {
      RVec point(static_cast<std::size_t>(eff.dimension()), Rational(0));
      for (int i = 0; i < rounds; ++i) {
        int a = record[static_cast<std::size_t>(i)];
        for (int y = 0; y < eff.bob_inputs(); ++y)
          for (int b = 0; b < eff.bob_outcomes[y]; ++b) {
            Rational val = bob_marginal(q, b, 0, y);
            if (!is_zero(val))
              point[static_cast<std::size_t>(eff.coord_index(i, y, a, b))] = val;
          }
      }
      for (int y = 0; y < eff.bob_inputs(); ++y)
        for (int a = 0; a < final_alphabet; ++a)
          for (int b = 0; b < eff.bob_outcomes[y]; ++b) {
            const Rational& val = q.at(0, y, a, b);
            if (!is_zero(val))
              point[static_cast<std::size_t>(eff.coord_index(rounds, y, a, b))] = val;
          }
      out.emplace_back(SwVertexLabel{record, static_cast<int>(j)}, std::move(point));
      check_count_guard(out.size(), "sw_vertices");
    } while (detail::next_assignment(record, radix));
  }

  // Deduplicate by emitted point, keeping the first label.
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) { return a.second == b.second; }),
            out.end());

  VPolytope v;
  v.dim = eff.dimension();
  for (const auto& lv : out) v.vertices.push_back(lv.second);
  VPolytope minimal = remove_redundant_vertices(v);
  std::set<RVec> keep(minimal.vertices.begin(), minimal.vertices.end());
  std::vector<std::pair<SwVertexLabel, RVec>> pruned;
  for (auto& lv : out)
    if (keep.count(lv.second)) pruned.push_back(std::move(lv));
  return pruned;
}

inline VPolytope sw_vertices(int rounds, int friend_alphabet, int final_alphabet,
                             const std::vector<int>& bob_outcomes) {
  auto labeled = sw_vertices_labeled(rounds, friend_alphabet, final_alphabet, bob_outcomes);
  VPolytope out;
  out.dim = sw_scenario(rounds, friend_alphabet, final_alphabet, bob_outcomes).dimension();
  for (auto& lv : labeled) out.vertices.push_back(std::move(lv.second));
  out.sort_dedup();
  return out;
}

// The CH expression's maximum over quantum states, (sqrt(2)-1)/2.
inline constexpr double ch_quantum_value = 0.2071067811865475244;

// Clauser-Horne rows for a 2-input/2-outcome scenario, oriented as written
// in the literature: deterministic points score <= 0 and a violation shows
// as a positive value. Outcome index 0 plays the role of "+1"; marginals
// are anchored at the partner's first input.
inline HRow ch_base_row(const Scenario& s) {
  if (s.alice_inputs() != 2 || s.bob_inputs() != 2 || !s.is_homogeneous() ||
      s.alice_outcomes[0] != 2 || s.bob_outcomes[0] != 2)
    throw bounds_error("ch rows need a 2-input, 2-outcome scenario");
  HRow row;
  row.offset = 0;
  row.coeffs.assign(static_cast<std::size_t>(s.dimension()), Rational(0));
  auto add = [&](int x, int y, int a, int b, int delta) {
    row.coeffs[static_cast<std::size_t>(s.coord_index(x, y, a, b))] += delta;
  };
  add(0, 0, 0, 0, 1);  // p_{++}(A1 B1)
  add(0, 1, 0, 0, 1);  // p_{++}(A1 B2)
  add(1, 0, 0, 0, 1);  // p_{++}(A2 B1)
  add(1, 1, 0, 0, -1);  // -p_{++}(A2 B2)
  add(0, 0, 0, 0, -1);  // -p_{+}(A1), anchored at y = 0
  add(0, 0, 0, 1, -1);
  add(0, 0, 0, 0, -1);  // -p_{+}(B1), anchored at x = 0
  add(0, 0, 1, 0, -1);
  return row;
}

// The eight inequivalent facet representatives in the symmetry orbit of the
// base row: images under the scenario group, deduplicated modulo the
// affine hull. The base row comes first.
inline std::vector<HRow> ch_inequalities(const Scenario& s) {
  HRow base = ch_base_row(s);
  SymmetryGroup g = scenario_symmetry_group(s);
  std::vector<HRow> affine = normalization_rows(s);
  auto ns = no_signalling_rows(s);
  affine.insert(affine.end(), ns.begin(), ns.end());
  detail::AffineReducer reducer(affine, s.dimension());

  auto reduced_key = [&](const HRow& r) {
    RVec v;
    v.reserve(r.coeffs.size() + 1);
    v.push_back(r.offset);
    for (const auto& c : r.coeffs) v.push_back(c);
    v = reducer.reduce(std::move(v));
    normalize_integer(v);
    return v;
  };

  std::vector<HRow> out{base};
  std::set<RVec> seen{reduced_key(base)};
  std::vector<HRow> rest;
  for (const auto& perm : g.elements) {
    HRow img = apply_permutation(base, perm);
    if (seen.insert(reduced_key(img)).second) rest.push_back(std::move(img));
  }
  std::sort(rest.begin(), rest.end(), row_lex_less);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline Rational evaluate_inequality(const HRow& row, const Behaviour& p) {
  return evaluate_row(row, p.coords);
}

inline double evaluate_inequality(const HRow& row, const std::vector<double>& raw) {
  return evaluate_row(row, raw);
}

// Canonical form of an inequality within a scenario, quotienting by the
// scenario's affine hull and symmetry group.
inline HRow canonicalize_in_scenario(const HRow& row, const Scenario& s,
                                     const SymmetryGroup& g) {
  std::vector<HRow> affine = normalization_rows(s);
  auto ns = no_signalling_rows(s);
  affine.insert(affine.end(), ns.begin(), ns.end());
  return canonicalize_inequality(row, g, affine);
}

}  // namespace lfpoly

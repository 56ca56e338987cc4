#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/linalg.hpp"
#include "lfpoly/polytope.hpp"
#include "lfpoly/scenario.hpp"

namespace lfpoly {

// Scenario relabelings as coordinate permutations: input permutations that
// respect alphabet sizes, per-input outcome permutations, and the party
// swap when both sides have identical shape. Every element maps valid
// behaviours to valid behaviours and preserves no-signalling.
struct SymmetryGroup {
  Scenario scenario;
  std::vector<std::vector<int>> elements;  // sorted; includes the identity

  std::size_t size() const { return elements.size(); }
};

namespace detail {

template <typename TupleMap>
std::vector<int> permutation_from_tuple_map(const Scenario& s, TupleMap&& f) {
  const int dim = s.dimension();
  std::vector<int> perm(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    auto c = s.coord_tuple(i);
    auto img = f(c);
    perm[static_cast<std::size_t>(i)] = s.coord_index(img.x, img.y, img.a, img.b);
  }
  return perm;
}

}  // namespace detail

inline SymmetryGroup scenario_symmetry_group(const Scenario& s) {
  s.validate();
  check_dimension_guard(s.dimension(), "scenario_symmetry_group");
  using Coord = Scenario::Coord;
  std::vector<std::vector<int>> gens;

  // Input transpositions, only between inputs with equal alphabets.
  for (int x1 = 0; x1 < s.alice_inputs(); ++x1)
    for (int x2 = x1 + 1; x2 < s.alice_inputs(); ++x2) {
      if (s.alice_outcomes[x1] != s.alice_outcomes[x2]) continue;
      gens.push_back(detail::permutation_from_tuple_map(s, [&](Coord c) {
        if (c.x == x1)
          c.x = x2;
        else if (c.x == x2)
          c.x = x1;
        return c;
      }));
    }
  for (int y1 = 0; y1 < s.bob_inputs(); ++y1)
    for (int y2 = y1 + 1; y2 < s.bob_inputs(); ++y2) {
      if (s.bob_outcomes[y1] != s.bob_outcomes[y2]) continue;
      gens.push_back(detail::permutation_from_tuple_map(s, [&](Coord c) {
        if (c.y == y1)
          c.y = y2;
        else if (c.y == y2)
          c.y = y1;
        return c;
      }));
    }

  // Per-input outcome transpositions.
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int o = 0; o + 1 < s.alice_outcomes[x]; ++o) {
      gens.push_back(detail::permutation_from_tuple_map(s, [&](Coord c) {
        if (c.x == x) {
          if (c.a == o)
            c.a = o + 1;
          else if (c.a == o + 1)
            c.a = o;
        }
        return c;
      }));
    }
  for (int y = 0; y < s.bob_inputs(); ++y)
    for (int o = 0; o + 1 < s.bob_outcomes[y]; ++o) {
      gens.push_back(detail::permutation_from_tuple_map(s, [&](Coord c) {
        if (c.y == y) {
          if (c.b == o)
            c.b = o + 1;
          else if (c.b == o + 1)
            c.b = o;
        }
        return c;
      }));
    }

  // Party swap is a coordinate permutation only when the shapes agree.
  if (s.alice_outcomes == s.bob_outcomes) {
    gens.push_back(detail::permutation_from_tuple_map(
        s, [&](Coord c) { return Coord{c.y, c.x, c.b, c.a}; }));
  }

  std::vector<int> identity(static_cast<std::size_t>(s.dimension()));
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);

  std::set<std::vector<int>> closure{identity};
  std::vector<std::vector<int>> frontier{identity};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        std::vector<int> comp(e.size());
        for (std::size_t i = 0; i < e.size(); ++i)
          comp[i] = g[static_cast<std::size_t>(e[i])];
        if (closure.insert(comp).second) next.push_back(std::move(comp));
      }
    }
    check_count_guard(closure.size(), "scenario_symmetry_group");
    frontier.swap(next);
  }

  SymmetryGroup grp;
  grp.scenario = s;
  grp.elements.assign(closure.begin(), closure.end());
  return grp;
}

inline Behaviour apply_permutation(const Behaviour& p, const std::vector<int>& perm) {
  if (perm.size() != p.coords.size())
    throw dimension_error("apply_permutation: size mismatch");
  Behaviour out;
  out.scenario = p.scenario;
  out.coords.assign(p.coords.size(), Rational(0));
  for (std::size_t i = 0; i < perm.size(); ++i)
    out.coords[static_cast<std::size_t>(perm[i])] = p.coords[i];
  return out;
}

inline HRow apply_permutation(const HRow& row, const std::vector<int>& perm) {
  if (perm.size() != row.coeffs.size())
    throw dimension_error("apply_permutation: size mismatch");
  HRow out;
  out.offset = row.offset;
  out.coeffs.assign(row.coeffs.size(), Rational(0));
  for (std::size_t i = 0; i < perm.size(); ++i)
    out.coeffs[static_cast<std::size_t>(perm[i])] = row.coeffs[i];
  return out;
}

namespace detail {

// Reduction of (offset|coeffs) vectors modulo the span of affine-hull rows,
// so rows that cut the same face compare equal.
class AffineReducer {
 public:
  AffineReducer(const std::vector<HRow>& affine_rows, int dim) {
    for (const auto& r : affine_rows) {
      RVec v;
      v.reserve(static_cast<std::size_t>(dim) + 1);
      v.push_back(r.offset);
      for (const auto& c : r.coeffs) v.push_back(c);
      basis_.push_back(std::move(v));
    }
    if (!basis_.empty()) rref(basis_, &pivots_);
    while (basis_.size() > pivots_.size()) basis_.pop_back();  // drop zero rows
  }

  RVec reduce(RVec v) const {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Rational& f = v[static_cast<std::size_t>(pivots_[r])];
      if (is_zero(f)) continue;
      Rational factor = f;
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!is_zero(basis_[r][c])) v[c] -= factor * basis_[r][c];
    }
    return v;
  }

 private:
  RMat basis_;
  std::vector<int> pivots_;
};

}  // namespace detail

// Canonical representative of an inequality's equivalence class: reduce
// modulo the affine hull, rescale to coprime integers (positive scaling
// only), and take the lexicographically least vector over the group orbit.
// Two inequalities cut the same face class iff their canonical forms match.
inline HRow canonicalize_inequality(const HRow& row, const SymmetryGroup& g,
                                    const std::vector<HRow>& affine_rows) {
  const int dim = static_cast<int>(row.coeffs.size());
  detail::AffineReducer reducer(affine_rows, dim);
  bool have = false;
  RVec best;
  for (const auto& perm : g.elements) {
    HRow img = apply_permutation(row, perm);
    RVec v;
    v.reserve(static_cast<std::size_t>(dim) + 1);
    v.push_back(img.offset);
    for (const auto& c : img.coeffs) v.push_back(c);
    v = reducer.reduce(std::move(v));
    normalize_integer(v);
    if (!have || std::lexicographical_compare(v.begin(), v.end(), best.begin(), best.end())) {
      best = std::move(v);
      have = true;
    }
  }
  HRow canon;
  canon.offset = best[0];
  canon.coeffs.assign(best.begin() + 1, best.end());
  return canon;
}

}  // namespace lfpoly

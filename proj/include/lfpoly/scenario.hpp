#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/rational.hpp"

namespace lfpoly {

// A bipartite measurement scenario. Each party has a list of inputs; each
// input has its own outcome alphabet, so heterogeneous scenarios (such as
// the sequential one, where the last input may use a different alphabet)
// are first-class. Inputs and outcomes are 0-based everywhere in the
// library; the +1/-1 outcome labels common in the literature map to
// indices 0/1 at the presentation layer.
struct Scenario {
  std::vector<int> alice_outcomes;  // outcome count per Alice input
  std::vector<int> bob_outcomes;    // outcome count per Bob input

  int alice_inputs() const { return static_cast<int>(alice_outcomes.size()); }
  int bob_inputs() const { return static_cast<int>(bob_outcomes.size()); }

  static Scenario homogeneous(int ma, int na, int mb, int nb) {
    if (ma < 1 || na < 1 || mb < 1 || nb < 1)
      throw bounds_error("scenario cardinalities must be >= 1");
    Scenario s;
    s.alice_outcomes.assign(static_cast<std::size_t>(ma), na);
    s.bob_outcomes.assign(static_cast<std::size_t>(mb), nb);
    return s;
  }

  bool is_homogeneous() const {
    for (int n : alice_outcomes)
      if (n != alice_outcomes.front()) return false;
    for (int n : bob_outcomes)
      if (n != bob_outcomes.front()) return false;
    return true;
  }

  void validate() const {
    if (alice_outcomes.empty() || bob_outcomes.empty())
      throw bounds_error("scenario needs at least one input per party");
    for (int n : alice_outcomes)
      if (n < 1) throw bounds_error("alice outcome count < 1");
    for (int n : bob_outcomes)
      if (n < 1) throw bounds_error("bob outcome count < 1");
  }

  int bob_block_size() const {  // sum over y of |B_y|
    return std::accumulate(bob_outcomes.begin(), bob_outcomes.end(), 0);
  }

  // Total coordinate count: sum over (x, y) of |A_x| * |B_y|.
  int dimension() const {
    int sb = bob_block_size();
    int d = 0;
    for (int na : alice_outcomes) d += na * sb;
    return d;
  }

  // Lexicographic (x, y, a, b) coordinate index; bijective onto 0..dim-1.
  int coord_index(int x, int y, int a, int b) const {
    if (x < 0 || x >= alice_inputs()) throw bounds_error("coord_index: x out of range");
    if (y < 0 || y >= bob_inputs()) throw bounds_error("coord_index: y out of range");
    if (a < 0 || a >= alice_outcomes[x]) throw bounds_error("coord_index: a out of range");
    if (b < 0 || b >= bob_outcomes[y]) throw bounds_error("coord_index: b out of range");
    int sb = bob_block_size();
    int idx = 0;
    for (int xp = 0; xp < x; ++xp) idx += alice_outcomes[xp] * sb;
    int yb = 0;
    for (int yp = 0; yp < y; ++yp) yb += bob_outcomes[yp];
    idx += alice_outcomes[x] * yb;
    idx += a * bob_outcomes[y] + b;
    return idx;
  }

  struct Coord {
    int x, y, a, b;
  };

  Coord coord_tuple(int index) const {
    if (index < 0 || index >= dimension()) throw bounds_error("coord_tuple: index out of range");
    int sb = bob_block_size();
    int x = 0;
    while (index >= alice_outcomes[x] * sb) {
      index -= alice_outcomes[x] * sb;
      ++x;
    }
    int y = 0;
    while (index >= alice_outcomes[x] * bob_outcomes[y]) {
      index -= alice_outcomes[x] * bob_outcomes[y];
      ++y;
    }
    int a = index / bob_outcomes[y];
    int b = index % bob_outcomes[y];
    return {x, y, a, b};
  }

  bool operator==(const Scenario& o) const {
    return alice_outcomes == o.alice_outcomes && bob_outcomes == o.bob_outcomes;
  }
};

// Exact-rational behaviour p(ab|xy), stored in the scenario's coordinate
// order.
struct Behaviour {
  Scenario scenario;
  RVec coords;

  const Rational& at(int x, int y, int a, int b) const {
    return coords[static_cast<std::size_t>(scenario.coord_index(x, y, a, b))];
  }
  Rational& at(int x, int y, int a, int b) {
    return coords[static_cast<std::size_t>(scenario.coord_index(x, y, a, b))];
  }
};

struct ValidityReport {
  bool ok = true;
  std::string detail;  // first offending block/coordinate when not ok
};

// Positivity of every coordinate and exact unit sum of every (x, y) block.
inline ValidityReport validate_behaviour(const Behaviour& p) {
  const Scenario& s = p.scenario;
  s.validate();
  if (static_cast<int>(p.coords.size()) != s.dimension())
    throw dimension_error("behaviour has " + std::to_string(p.coords.size()) +
                          " coords, scenario dimension is " + std::to_string(s.dimension()));
  for (int i = 0; i < s.dimension(); ++i) {
    if (p.coords[static_cast<std::size_t>(i)] < 0) {
      auto c = s.coord_tuple(i);
      return {false, "negative coordinate at x=" + std::to_string(c.x) + " y=" + std::to_string(c.y) +
                         " a=" + std::to_string(c.a) + " b=" + std::to_string(c.b)};
    }
  }
  for (int x = 0; x < s.alice_inputs(); ++x) {
    for (int y = 0; y < s.bob_inputs(); ++y) {
      Rational sum = 0;
      for (int a = 0; a < s.alice_outcomes[x]; ++a)
        for (int b = 0; b < s.bob_outcomes[y]; ++b) sum += p.at(x, y, a, b);
      if (sum != 1) {
        return {false, "block (x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                           ") sums to " + format_rational(sum)};
      }
    }
  }
  return {};
}

inline Rational alice_marginal(const Behaviour& p, int a, int x, int y) {
  Rational sum = 0;
  for (int b = 0; b < p.scenario.bob_outcomes[y]; ++b) sum += p.at(x, y, a, b);
  return sum;
}

inline Rational bob_marginal(const Behaviour& p, int b, int x, int y) {
  Rational sum = 0;
  for (int a = 0; a < p.scenario.alice_outcomes[x]; ++a) sum += p.at(x, y, a, b);
  return sum;
}

// Exact check that each party's marginals are independent of the other's
// input.
inline bool is_no_signalling(const Behaviour& p) {
  const Scenario& s = p.scenario;
  for (int x = 0; x < s.alice_inputs(); ++x)
    for (int a = 0; a < s.alice_outcomes[x]; ++a)
      for (int y = 1; y < s.bob_inputs(); ++y)
        if (alice_marginal(p, a, x, y) != alice_marginal(p, a, x, 0)) return false;
  for (int y = 0; y < s.bob_inputs(); ++y)
    for (int b = 0; b < s.bob_outcomes[y]; ++b)
      for (int x = 1; x < s.alice_inputs(); ++x)
        if (bob_marginal(p, b, x, y) != bob_marginal(p, b, 0, y)) return false;
  return true;
}

}  // namespace lfpoly

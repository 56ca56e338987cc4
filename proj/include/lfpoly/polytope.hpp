#pragma once

#include <algorithm>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/rational.hpp"

namespace lfpoly {

// One affine row. As an inequality it reads offset + coeffs.p >= 0, as an
// equality offset + coeffs.p = 0.
struct HRow {
  Rational offset;
  RVec coeffs;

  bool operator==(const HRow& o) const { return offset == o.offset && coeffs == o.coeffs; }
};

inline Rational evaluate_row(const HRow& row, const RVec& point) {
  if (row.coeffs.size() != point.size())
    throw dimension_error("evaluate_row: dimension mismatch");
  return row.offset + dot(row.coeffs, point);
}

inline double evaluate_row(const HRow& row, const std::vector<double>& point) {
  if (row.coeffs.size() != point.size())
    throw dimension_error("evaluate_row: dimension mismatch");
  double v = to_double(row.offset);
  for (std::size_t i = 0; i < point.size(); ++i) v += to_double(row.coeffs[i]) * point[i];
  return v;
}

inline HRow negate_row(const HRow& row) {
  HRow out;
  out.offset = -row.offset;
  out.coeffs.reserve(row.coeffs.size());
  for (const auto& c : row.coeffs) out.coeffs.push_back(-c);
  return out;
}

// Scales a row to coprime integer entries. Positive scaling only, so the
// inequality's orientation is preserved.
inline void normalize_row(HRow& row) {
  RVec v;
  v.reserve(row.coeffs.size() + 1);
  v.push_back(row.offset);
  for (const auto& c : row.coeffs) v.push_back(c);
  normalize_integer(v);
  row.offset = v[0];
  row.coeffs.assign(v.begin() + 1, v.end());
}

inline bool row_lex_less(const HRow& a, const HRow& b) {
  if (a.offset != b.offset) return a.offset < b.offset;
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                      b.coeffs.end());
}

// Inequality-list polytope description.
struct HPolytope {
  int dim = 0;
  std::vector<HRow> inequalities;  // offset + coeffs.p >= 0
  std::vector<HRow> equalities;    // offset + coeffs.p  = 0

  void validate() const {
    for (const auto& r : inequalities) {
      if (static_cast<int>(r.coeffs.size()) != dim)
        throw dimension_error("HPolytope: inequality row of wrong length");
      bool all_zero = true;
      for (const auto& c : r.coeffs)
        if (!is_zero(c)) {
          all_zero = false;
          break;
        }
      if (all_zero) throw dimension_error("HPolytope: zero inequality row");
    }
    for (const auto& r : equalities)
      if (static_cast<int>(r.coeffs.size()) != dim)
        throw dimension_error("HPolytope: equality row of wrong length");
  }
};

// Vertex-list polytope description. Constructions in this library keep the
// list deduplicated, lexicographically sorted and minimal (no vertex is a
// convex combination of the others).
struct VPolytope {
  int dim = 0;
  std::vector<RVec> vertices;

  void sort_dedup() {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  }
};

inline RVec centroid(const VPolytope& v) {
  if (v.vertices.empty()) throw empty_error("centroid of empty vertex list");
  RVec c(static_cast<std::size_t>(v.dim), Rational(0));
  for (const auto& vert : v.vertices)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += vert[i];
  Rational n(static_cast<int>(v.vertices.size()));
  for (auto& x : c) x /= n;
  return c;
}

}  // namespace lfpoly

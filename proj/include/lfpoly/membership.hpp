#pragma once

#include <string>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/polytope.hpp"
#include "lfpoly/scenario.hpp"
#include "lfpoly/simplex.hpp"

namespace lfpoly {

// Exact membership certificate. Inside carries a convex decomposition over
// the vertex list; Outside carries a separating row in offset form
// (nonnegative on every vertex, negative at the query point).
struct MembershipResult {
  bool inside = false;
  RVec weights;   // per vertex, when inside
  HRow separator;  // when outside

  explicit operator bool() const { return inside; }
};

namespace detail {

inline void verify_inside(const VPolytope& v, const RVec& point, const RVec& weights) {
  Rational total = 0;
  RVec recon(point.size(), Rational(0));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) throw std::logic_error("membership: negative weight");
    if (is_zero(weights[i])) continue;
    total += weights[i];
    for (std::size_t k = 0; k < recon.size(); ++k) recon[k] += weights[i] * v.vertices[i][k];
  }
  if (total != 1 || recon != point)
    throw std::logic_error("membership: inside certificate failed exact re-check");
}

inline void verify_outside(const VPolytope& v, const RVec& point, const HRow& sep) {
  for (const auto& vert : v.vertices)
    if (evaluate_row(sep, vert) < 0)
      throw std::logic_error("membership: separator negative on a vertex");
  if (evaluate_row(sep, point) >= 0)
    throw std::logic_error("membership: separator nonnegative at query point");
}

}  // namespace detail

// Decides p in conv(v) by shooting a ray from the vertex centroid through p
// and maximizing the step length with the exact simplex. t* >= 1 yields an
// exact convex decomposition; t* < 1 yields a separating hyperplane from
// the LP dual, tight on the face where the ray exits. Both certificates are
// re-verified before returning.
inline MembershipResult membership(const RVec& point, const VPolytope& v) {
  if (static_cast<int>(point.size()) != v.dim)
    throw dimension_error("membership: point dimension mismatch");
  if (v.vertices.empty()) throw empty_error("membership: empty vertex list");
  const std::size_t n = v.vertices.size();
  const std::size_t d = static_cast<std::size_t>(v.dim);

  RVec c = centroid(v);
  MembershipResult res;
  if (c == point) {
    res.inside = true;
    res.weights.assign(n, Rational(1) / Rational(static_cast<int>(n)));
    detail::verify_inside(v, point, res.weights);
    return res;
  }

  RVec dir(d);
  for (std::size_t k = 0; k < d; ++k) dir[k] = point[k] - c[k];

  // Variables: w_0..w_{n-1}, t.  Rows: sum_i w_i v_i - t dir = c ; sum w = 1.
  RMat a(d + 1, RVec(n + 1, Rational(0)));
  RVec b(d + 1);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) a[k][i] = v.vertices[i][k];
    a[k][n] = -dir[k];
    b[k] = c[k];
  }
  for (std::size_t i = 0; i < n; ++i) a[d][i] = 1;
  b[d] = 1;
  RVec obj(n + 1, Rational(0));
  obj[n] = 1;

  LPResult lp = solve_lp(a, b, obj);
  if (lp.status != LPResult::Status::optimal)
    throw std::logic_error("membership: ray LP did not reach an optimum");

  const Rational& t_star = lp.objective;
  if (t_star >= 1) {
    // p = (1 - s) c + s q with q = c + t* dir and s = 1/t*.
    Rational s = Rational(1) / t_star;
    Rational rest = (1 - s) / Rational(static_cast<int>(n));
    res.inside = true;
    res.weights.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) res.weights[i] = rest + s * lp.solution[i];
    detail::verify_inside(v, point, res.weights);
    return res;
  }

  res.inside = false;
  res.separator.offset = lp.dual[d];
  res.separator.coeffs.assign(lp.dual.begin(), lp.dual.begin() + static_cast<long>(d));
  normalize_row(res.separator);
  detail::verify_outside(v, point, res.separator);
  return res;
}

inline MembershipResult membership(const Behaviour& p, const VPolytope& v) {
  return membership(p.coords, v);
}

// Set equality of the convex hulls, decided by mutual membership of every
// vertex of each list in the other.
inline bool polytope_equal(const VPolytope& v1, const VPolytope& v2) {
  if (v1.dim != v2.dim) throw dimension_error("polytope_equal: dimension mismatch");
  for (const auto& vert : v1.vertices)
    if (!membership(vert, v2).inside) return false;
  for (const auto& vert : v2.vertices)
    if (!membership(vert, v1).inside) return false;
  return true;
}

// Leave-one-out minimality: drops every point expressible as a convex
// combination of the remaining ones.
inline VPolytope remove_redundant_vertices(VPolytope v) {
  v.sort_dedup();
  if (v.vertices.size() <= 1) return v;
  std::vector<bool> keep(v.vertices.size(), true);
  for (std::size_t i = 0; i < v.vertices.size(); ++i) {
    VPolytope others;
    others.dim = v.dim;
    for (std::size_t j = 0; j < v.vertices.size(); ++j)
      if (j != i && keep[j]) others.vertices.push_back(v.vertices[j]);
    if (others.vertices.empty()) break;
    if (membership(v.vertices[i], others).inside) keep[i] = false;
  }
  VPolytope out;
  out.dim = v.dim;
  for (std::size_t i = 0; i < v.vertices.size(); ++i)
    if (keep[i]) out.vertices.push_back(v.vertices[i]);
  return out;
}

}  // namespace lfpoly

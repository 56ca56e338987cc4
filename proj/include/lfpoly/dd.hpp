#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/linalg.hpp"
#include "lfpoly/membership.hpp"
#include "lfpoly/polytope.hpp"

namespace lfpoly {

// Exact vertex and facet enumeration.
//
// vertex_enum eliminates the equality rows onto an affine chart, homogenizes
// the chart inequalities and runs the double description method on the
// resulting pointed cone. facet_enum goes through the polar dual: translate
// an interior point to the origin of the chart spanned by the vertices and
// enumerate the polar's vertices, which are the facets.

namespace detail {

using IVec = std::vector<Int>;

inline void normalize_int_vec(IVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return;
  for (auto& x : v) x /= g;
}

struct DDRay {
  IVec v;
  boost::dynamic_bitset<> zero;  // tight rows among those processed so far
};

inline Int ray_dot(const IVec& row, const IVec& ray) {
  Int s = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!is_zero(row[i]) && !is_zero(ray[i])) s += row[i] * ray[i];
  return s;
}

// Extreme rays of { u : row · u >= 0 for all rows }. The cone must be
// pointed; the caller checks rank(rows) == d beforehand. Rows are inserted
// in lexicographic order after an initial full-rank basis.
inline std::vector<DDRay> extreme_rays(std::vector<IVec> rows, int d) {
  for (auto& r : rows) normalize_int_vec(r);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const IVec& r) {
                              return std::all_of(r.begin(), r.end(),
                                                 [](const Int& x) { return is_zero(x); });
                            }),
             rows.end());
  const std::size_t m = rows.size();

  // Greedy lex-first independent subset for the initial simplicial cone.
  RMat elim;
  std::vector<std::size_t> basis_rows;
  for (std::size_t i = 0; i < m && static_cast<int>(basis_rows.size()) < d; ++i) {
    RMat trial = elim;
    trial.emplace_back(rows[i].begin(), rows[i].end());
    if (rref(trial) > static_cast<int>(elim.size())) {
      elim.emplace_back(rows[i].begin(), rows[i].end());
      rref(elim);
      basis_rows.push_back(i);
    }
  }
  if (static_cast<int>(basis_rows.size()) < d)
    throw unbounded_error("double description: cone is not pointed");

  RMat b(static_cast<std::size_t>(d), RVec(static_cast<std::size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          Rational(rows[basis_rows[static_cast<std::size_t>(r)]][static_cast<std::size_t>(c)]);
  RMat binv;
  if (!invert(b, binv)) throw std::logic_error("double description: basis not invertible");

  std::vector<bool> processed(m, false);
  for (auto i : basis_rows) processed[i] = true;

  std::vector<DDRay> rays;
  rays.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    // Column j of B^{-1}: satisfies B ray = e_j, so all basis rows hold.
    RVec col(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) col[static_cast<std::size_t>(r)] = binv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    normalize_integer(col);
    DDRay ray;
    ray.v.resize(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) ray.v[static_cast<std::size_t>(r)] = numerator(col[static_cast<std::size_t>(r)]);
    ray.zero.resize(m);
    for (auto i : basis_rows)
      if (is_zero(ray_dot(rows[i], ray.v))) ray.zero.set(i);
    rays.push_back(std::move(ray));
  }

  boost::dynamic_bitset<> common(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (processed[k]) continue;
    const IVec& row = rows[k];

    std::vector<Int> s(rays.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = ray_dot(row, rays[i].v);
      if (s[i] > 0)
        plus.push_back(i);
      else if (s[i] < 0)
        minus.push_back(i);
      else
        rays[i].zero.set(k);
    }
    processed[k] = true;
    if (minus.empty()) continue;

    std::vector<DDRay> next;
    next.reserve(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (s[i] >= 0) next.push_back(rays[i]);

    const std::size_t need = d >= 2 ? static_cast<std::size_t>(d - 2) : 0;
    for (auto pi : plus) {
      for (auto ni : minus) {
        common = rays[pi].zero & rays[ni].zero;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t q = 0; q < rays.size(); ++q) {
          if (q == pi || q == ni) continue;
          if (common.is_subset_of(rays[q].zero)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        DDRay nr;
        nr.v.resize(row.size());
        const Int& a = s[ni];  // < 0
        const Int& bcoef = s[pi];
        for (std::size_t c = 0; c < row.size(); ++c)
          nr.v[c] = -a * rays[pi].v[c] + bcoef * rays[ni].v[c];
        normalize_int_vec(nr.v);
        nr.zero = common;
        nr.zero.set(k);
        next.push_back(std::move(nr));
      }
    }
    rays.swap(next);
    check_count_guard(rays.size(), "double description");
    if (rays.empty()) break;  // cone collapsed to the origin
  }
  return rays;
}

// Chart data for a consistent equality system: p = origin + basis * t.
struct AffineChart {
  RVec origin;
  std::vector<RVec> basis;  // chart_dim vectors of length ambient dim
};

inline RVec lift_point(const AffineChart& chart, const RVec& t) {
  RVec p = chart.origin;
  for (std::size_t j = 0; j < chart.basis.size(); ++j) {
    if (is_zero(t[j])) continue;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += t[j] * chart.basis[j][i];
  }
  return p;
}

}  // namespace detail

// Exact vertex enumeration of a bounded nonempty H-polytope.
inline VPolytope vertex_enum(const HPolytope& h) {
  h.validate();
  check_dimension_guard(h.dim, "vertex_enum");
  const std::size_t dim = static_cast<std::size_t>(h.dim);

  detail::AffineChart chart;
  if (h.equalities.empty()) {
    chart.origin.assign(dim, Rational(0));
    for (std::size_t j = 0; j < dim; ++j) {
      RVec e(dim, Rational(0));
      e[j] = 1;
      chart.basis.push_back(std::move(e));
    }
  } else {
    RMat e;
    RVec rhs;
    for (const auto& row : h.equalities) {
      e.push_back(row.coeffs);
      rhs.push_back(-row.offset);
    }
    auto p0 = solve_linear(e, rhs);
    if (!p0) throw empty_error("vertex_enum: equality system inconsistent");
    chart.origin = *p0;
    chart.basis = nullspace(e);
  }
  const std::size_t k = chart.basis.size();

  // Inequalities in chart coordinates.
  std::vector<HRow> chart_rows;
  for (const auto& row : h.inequalities) {
    HRow cr;
    cr.offset = evaluate_row(row, chart.origin);
    cr.coeffs.resize(k);
    bool nonzero = false;
    for (std::size_t j = 0; j < k; ++j) {
      cr.coeffs[j] = dot(row.coeffs, chart.basis[j]);
      if (!is_zero(cr.coeffs[j])) nonzero = true;
    }
    if (!nonzero) {
      if (cr.offset < 0) throw empty_error("vertex_enum: contradictory constant row");
      continue;
    }
    chart_rows.push_back(std::move(cr));
  }

  if (k == 0) {
    VPolytope out;
    out.dim = h.dim;
    out.vertices.push_back(chart.origin);
    return out;
  }

  // Feasibility first, so emptiness is reported before any pointedness
  // complaint. Variables: t = u - w (split), one slack per row.
  {
    const std::size_t m = chart_rows.size();
    RMat a(m, RVec(2 * k + m, Rational(0)));
    RVec b(m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < k; ++j) {
        a[r][j] = chart_rows[r].coeffs[j];
        a[r][k + j] = -chart_rows[r].coeffs[j];
      }
      a[r][2 * k + r] = -1;
      b[r] = -chart_rows[r].offset;
    }
    if (lp_feasible(a, b).status == LPResult::Status::infeasible)
      throw empty_error("vertex_enum: polytope is empty");
  }

  // Homogenize: rows (offset, coeffs) over (t0, t), plus t0 >= 0.
  std::vector<detail::IVec> cone_rows;
  for (auto& cr : chart_rows) {
    normalize_row(cr);
    detail::IVec iv(k + 1);
    iv[0] = numerator(cr.offset);
    for (std::size_t j = 0; j < k; ++j) iv[j + 1] = numerator(cr.coeffs[j]);
    cone_rows.push_back(std::move(iv));
  }
  {
    detail::IVec t0(k + 1, Int(0));
    t0[0] = 1;
    cone_rows.push_back(std::move(t0));
  }

  {
    RMat rk;
    for (const auto& r : cone_rows) rk.emplace_back(r.begin(), r.end());
    if (rref(rk) < static_cast<int>(k + 1))
      throw unbounded_error("vertex_enum: polytope has a lineality direction");
  }

  auto rays = detail::extreme_rays(std::move(cone_rows), static_cast<int>(k + 1));
  VPolytope out;
  out.dim = h.dim;
  for (const auto& ray : rays) {
    if (is_zero(ray.v[0])) throw unbounded_error("vertex_enum: polytope is unbounded");
    RVec t(k);
    Rational t0(ray.v[0]);
    for (std::size_t j = 0; j < k; ++j) t[j] = Rational(ray.v[j + 1]) / t0;
    out.vertices.push_back(detail::lift_point(chart, t));
  }
  if (out.vertices.empty()) throw empty_error("vertex_enum: polytope is empty");
  out.sort_dedup();
  return out;
}

// Exact minimal facet description (plus equalities spanning the affine
// hull) of the convex hull of a vertex list.
inline HPolytope facet_enum(VPolytope v) {
  if (v.vertices.empty()) throw empty_error("facet_enum: no vertices");
  check_dimension_guard(v.dim, "facet_enum");
  v.sort_dedup();
  const std::size_t dim = static_cast<std::size_t>(v.dim);
  const RVec& v0 = v.vertices.front();

  HPolytope out;
  out.dim = v.dim;

  // Affine hull: normals orthogonal to every difference vector.
  RMat diffs;
  for (std::size_t i = 1; i < v.vertices.size(); ++i) {
    RVec d(dim);
    for (std::size_t c = 0; c < dim; ++c) d[c] = v.vertices[i][c] - v0[c];
    diffs.push_back(std::move(d));
  }
  std::vector<RVec> hull_normals =
      diffs.empty() ? [&] {
        std::vector<RVec> all;
        for (std::size_t j = 0; j < dim; ++j) {
          RVec e(dim, Rational(0));
          e[j] = 1;
          all.push_back(std::move(e));
        }
        return all;
      }()
                    : nullspace(diffs);
  for (const auto& w : hull_normals) {
    HRow eq;
    eq.offset = -dot(w, v0);
    eq.coeffs = w;
    normalize_row(eq);
    out.equalities.push_back(std::move(eq));
  }
  std::sort(out.equalities.begin(), out.equalities.end(), row_lex_less);

  // Chart basis: greedy independent difference vectors.
  std::vector<RVec> basis;
  {
    RMat elim;
    for (const auto& d : diffs) {
      RMat trial = elim;
      trial.push_back(d);
      if (rref(trial) > static_cast<int>(elim.size())) {
        elim.push_back(d);
        rref(elim);
        basis.push_back(d);
      }
    }
  }
  const std::size_t r = basis.size();
  if (r == 0) return out;  // single point: equalities pin everything

  // Independent coordinate rows J so that N_J is invertible.
  std::vector<std::size_t> j_rows;
  {
    RMat elim;
    for (std::size_t c = 0; c < dim && j_rows.size() < r; ++c) {
      RVec coord_row(r);
      for (std::size_t j = 0; j < r; ++j) coord_row[j] = basis[j][c];
      RMat trial = elim;
      trial.push_back(coord_row);
      if (rref(trial) > static_cast<int>(elim.size())) {
        elim.push_back(coord_row);
        rref(elim);
        j_rows.push_back(c);
      }
    }
  }
  RMat nj(r, RVec(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) nj[a][b] = basis[b][j_rows[a]];
  RMat m_inv;
  if (!invert(nj, m_inv)) throw std::logic_error("facet_enum: chart solve failed");

  auto chart_coords = [&](const RVec& p) {
    RVec rhs(r);
    for (std::size_t a = 0; a < r; ++a) rhs[a] = p[j_rows[a]] - v0[j_rows[a]];
    RVec t(r, Rational(0));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        if (!is_zero(m_inv[a][b])) t[a] += m_inv[a][b] * rhs[b];
    return t;
  };

  std::vector<RVec> ts;
  ts.reserve(v.vertices.size());
  for (const auto& vert : v.vertices) ts.push_back(chart_coords(vert));

  RVec center(r, Rational(0));
  for (const auto& t : ts)
    for (std::size_t j = 0; j < r; ++j) center[j] += t[j];
  for (auto& x : center) x /= Rational(static_cast<int>(ts.size()));

  // Polar body of the centered chart polytope: 1 - (t - center).s >= 0.
  HPolytope polar;
  polar.dim = static_cast<int>(r);
  for (const auto& t : ts) {
    HRow row;
    row.offset = 1;
    row.coeffs.resize(r);
    bool nonzero = false;
    for (std::size_t j = 0; j < r; ++j) {
      row.coeffs[j] = center[j] - t[j];
      if (!is_zero(row.coeffs[j])) nonzero = true;
    }
    if (nonzero) polar.inequalities.push_back(std::move(row));
  }
  VPolytope polar_vertices = vertex_enum(polar);

  // Each polar vertex s gives the facet (t - center).s <= 1; lift t back to
  // ambient coordinates through the chart rows J.
  for (const auto& s : polar_vertices.vertices) {
    Rational o = 1 + dot(center, s);
    RVec q(r);
    for (std::size_t j = 0; j < r; ++j) q[j] = -s[j];
    HRow row;
    row.offset = o;
    row.coeffs.assign(dim, Rational(0));
    for (std::size_t b = 0; b < r; ++b) {
      Rational coef = 0;
      for (std::size_t a = 0; a < r; ++a)
        if (!is_zero(q[a]) && !is_zero(m_inv[a][b])) coef += q[a] * m_inv[a][b];
      row.coeffs[j_rows[b]] = coef;
      row.offset -= coef * v0[j_rows[b]];
    }
    normalize_row(row);
    out.inequalities.push_back(std::move(row));
  }
  std::sort(out.inequalities.begin(), out.inequalities.end(), row_lex_less);
  return out;
}

// Vertices of conv(v) where the row is tight, by direct evaluation.
inline std::vector<std::size_t> tight_vertices(const HRow& row, const VPolytope& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.vertices.size(); ++i)
    if (is_zero(evaluate_row(row, v.vertices[i]))) out.push_back(i);
  return out;
}

// Affine rank (dimension + 1) of a set of points; 0 for the empty set.
inline int affine_rank(const std::vector<RVec>& points) {
  if (points.empty()) return 0;
  RMat m;
  for (const auto& p : points) {
    RVec row;
    row.reserve(p.size() + 1);
    row.push_back(Rational(1));
    for (const auto& c : p) row.push_back(c);
    m.push_back(std::move(row));
  }
  return rref(m);
}

}  // namespace lfpoly

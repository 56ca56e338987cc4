#pragma once

// Test-side oracle for vertex enumeration: reduce the equality system, then
// enumerate every basic solution of the chart inequalities and keep the
// feasible ones. Deliberately independent of the library's double
// description path; it shares only the Rational type and does its own
// elimination.

#include <optional>
#include <set>
#include <vector>

#include "lfpoly/polytope.hpp"
#include "lfpoly/rational.hpp"

namespace oracle {

using lfpoly::HPolytope;
using lfpoly::Rational;
using lfpoly::RVec;

namespace detail {

// Gauss-Jordan on an augmented matrix; returns pivot columns.
inline std::vector<int> gauss_jordan(std::vector<RVec>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[rank], m[sel]);
    Rational inv = m[rank][col];
    for (auto& v : m[rank]) v /= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    pivots.push_back(static_cast<int>(col));
    ++rank;
  }
  m.resize(rank);
  return pivots;
}

}  // namespace detail

inline std::vector<RVec> brute_force_vertices(const HPolytope& h) {
  const std::size_t dim = static_cast<std::size_t>(h.dim);

  // Equality reduction: particular solution with free variables at zero,
  // chart basis from the free columns.
  RVec origin(dim, Rational(0));
  std::vector<RVec> basis;
  if (h.equalities.empty()) {
    for (std::size_t j = 0; j < dim; ++j) {
      RVec e(dim, Rational(0));
      e[j] = 1;
      basis.push_back(std::move(e));
    }
  } else {
    std::vector<RVec> aug;
    for (const auto& row : h.equalities) {
      RVec r = row.coeffs;
      r.push_back(-row.offset);
      aug.push_back(std::move(r));
    }
    auto pivots = detail::gauss_jordan(aug);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] == static_cast<int>(dim)) return {};  // inconsistent
      origin[static_cast<std::size_t>(pivots[r])] = aug[r].back();
    }
    std::vector<bool> is_pivot(dim, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    for (std::size_t free = 0; free < dim; ++free) {
      if (is_pivot[free]) continue;
      RVec v(dim, Rational(0));
      v[free] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        v[static_cast<std::size_t>(pivots[r])] = -aug[r][free];
      basis.push_back(std::move(v));
    }
  }
  const std::size_t k = basis.size();

  // Chart rows: offset' + coeffs'.t >= 0.
  std::vector<RVec> rows;  // [offset, c_1..c_k]
  for (const auto& row : h.inequalities) {
    RVec r(k + 1, Rational(0));
    r[0] = row.offset;
    for (std::size_t c = 0; c < dim; ++c) r[0] += row.coeffs[c] * origin[c];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < dim; ++c) r[j + 1] += row.coeffs[c] * basis[j][c];
    rows.push_back(std::move(r));
  }

  auto feasible = [&](const RVec& t) {
    for (const auto& r : rows) {
      Rational v = r[0];
      for (std::size_t j = 0; j < k; ++j) v += r[j + 1] * t[j];
      if (v < 0) return false;
    }
    return true;
  };

  std::set<RVec> found;
  std::vector<std::size_t> pick(k);
  // Enumerate all k-subsets of rows; solve the tight system.
  auto solve_and_check = [&]() {
    std::vector<RVec> sys;
    for (std::size_t i = 0; i < k; ++i) {
      RVec r(k + 1);
      for (std::size_t j = 0; j < k; ++j) r[j] = rows[pick[i]][j + 1];
      r[k] = -rows[pick[i]][0];
      sys.push_back(std::move(r));
    }
    auto pivots = detail::gauss_jordan(sys);
    if (pivots.size() != k) return;  // singular set
    for (int p : pivots)
      if (p == static_cast<int>(k)) return;
    RVec t(k, Rational(0));
    for (std::size_t r = 0; r < k; ++r) t[static_cast<std::size_t>(pivots[r])] = sys[r].back();
    if (!feasible(t)) return;
    RVec point = origin;
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < dim; ++c) point[c] += t[j] * basis[j][c];
    found.insert(std::move(point));
  };

  if (k == 0) {
    RVec t;
    if (feasible(t)) found.insert(origin);
  } else {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (rows.size() >= k) {
      for (;;) {
        pick = idx;
        solve_and_check();
        std::size_t i = k;
        while (i-- > 0) {
          if (idx[i] != i + rows.size() - k) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            break;
          }
          if (i == 0) return std::vector<RVec>(found.begin(), found.end());
        }
      }
    }
  }
  return std::vector<RVec>(found.begin(), found.end());
}

}  // namespace oracle

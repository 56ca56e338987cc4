#pragma once

#include <optional>
#include <vector>

#include "lfpoly/rational.hpp"

namespace lfpoly {

// Dense exact-rational linear algebra, sized for desk-scale polytopes.

// In-place reduced row echelon form. Returns the rank; pivot column indices
// are appended to *pivots when given.
inline int rref(RMat& m, std::vector<int>* pivots = nullptr) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!is_zero(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)])) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot)]);
    auto& prow = m[static_cast<std::size_t>(rank)];
    Rational inv = prow[static_cast<std::size_t>(col)];
    for (auto& v : prow) v /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      auto& row = m[static_cast<std::size_t>(r)];
      const Rational& f = row[static_cast<std::size_t>(col)];
      if (is_zero(f)) continue;
      Rational factor = f;
      for (int c = col; c < cols; ++c)
        row[static_cast<std::size_t>(c)] -= factor * prow[static_cast<std::size_t>(c)];
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

inline int rank_of(RMat m) { return rref(m); }

// One solution of A x = b, or nullopt when inconsistent.
inline std::optional<RVec> solve_linear(const RMat& a, const RVec& b) {
  if (a.size() != b.size()) throw dimension_error("solve_linear: row count mismatch");
  if (a.empty()) return RVec{};
  const int cols = static_cast<int>(a[0].size());
  RMat aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  std::vector<int> pivots;
  int rank = rref(aug, &pivots);
  for (int r = 0; r < rank; ++r) {
    if (pivots[static_cast<std::size_t>(r)] == cols) return std::nullopt;  // 0 = nonzero row
  }
  RVec x(static_cast<std::size_t>(cols), Rational(0));
  for (int r = 0; r < rank; ++r) {
    int pc = pivots[static_cast<std::size_t>(r)];
    if (pc < cols) x[static_cast<std::size_t>(pc)] = aug[static_cast<std::size_t>(r)].back();
  }
  return x;
}

// Basis of { x : A x = 0 }, one vector per free column.
inline std::vector<RVec> nullspace(const RMat& a) {
  if (a.empty()) return {};
  const int cols = static_cast<int>(a[0].size());
  RMat m = a;
  std::vector<int> pivots;
  int rank = rref(m, &pivots);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RVec v(static_cast<std::size_t>(cols), Rational(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (int r = 0; r < rank; ++r) {
      int pc = pivots[static_cast<std::size_t>(r)];
      v[static_cast<std::size_t>(pc)] = -m[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse of a square matrix; false when singular.
inline bool invert(const RMat& a, RMat& out) {
  const int n = static_cast<int>(a.size());
  RMat aug = a;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(aug[static_cast<std::size_t>(r)].size()) != n)
      throw dimension_error("invert: matrix not square");
    for (int c = 0; c < n; ++c)
      aug[static_cast<std::size_t>(r)].push_back(r == c ? Rational(1) : Rational(0));
  }
  std::vector<int> pivots;
  int rank = rref(aug, &pivots);
  if (rank < n) return false;
  for (int r = 0; r < rank; ++r)
    if (pivots[static_cast<std::size_t>(r)] >= n) return false;
  out.assign(static_cast<std::size_t>(n), RVec(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + c)];
  return true;
}

}  // namespace lfpoly

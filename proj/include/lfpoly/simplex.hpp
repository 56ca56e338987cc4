#pragma once

#include <vector>

#include "lfpoly/common.hpp"
#include "lfpoly/rational.hpp"

namespace lfpoly {

// Exact-rational primal simplex for
//
//   maximize c.x   subject to   A x = b,  x >= 0.
//
// Bland's pivoting rule throughout, so termination is guaranteed. The
// artificial columns from phase 1 are kept in the tableau; the dual vector
// read from them yields exact optimality or Farkas-infeasibility
// certificates, which callers re-verify.
struct LPResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::optimal;
  Rational objective;  // meaningful when optimal
  RVec solution;       // structural variables, when optimal
  RVec dual;           // per original row: duals when optimal, Farkas y when infeasible
};

namespace detail {

class SimplexTableau {
 public:
  SimplexTableau(const RMat& a, const RVec& b, const RVec& c)
      : m_(static_cast<int>(a.size())),
        n_(m_ ? static_cast<int>(a[0].size()) : 0),
        cost_(c),
        flip_(static_cast<std::size_t>(m_), false) {
    if (static_cast<int>(b.size()) != m_) throw dimension_error("simplex: rhs size mismatch");
    if (static_cast<int>(c.size()) != n_) throw dimension_error("simplex: cost size mismatch");
    tab_.assign(static_cast<std::size_t>(m_), RVec(static_cast<std::size_t>(n_ + m_), Rational(0)));
    rhs_.assign(static_cast<std::size_t>(m_), Rational(0));
    basis_.assign(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      bool flip = b[static_cast<std::size_t>(i)] < 0;
      flip_[static_cast<std::size_t>(i)] = flip;
      for (int j = 0; j < n_; ++j) {
        const Rational& v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = flip ? -v : v;
      }
      rhs_[static_cast<std::size_t>(i)] = flip ? -b[static_cast<std::size_t>(i)] : b[static_cast<std::size_t>(i)];
      tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_ + i)] = 1;
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  LPResult solve() {
    LPResult res;
    // Phase 1: drive the artificial sum to zero.
    RVec phase1(static_cast<std::size_t>(n_ + m_), Rational(0));
    for (int j = n_; j < n_ + m_; ++j) phase1[static_cast<std::size_t>(j)] = -1;
    run(phase1, /*allow_artificials=*/true);
    if (objective_value(phase1) < 0) {
      res.status = LPResult::Status::infeasible;
      res.dual = extract_dual(phase1);
      return res;
    }
    remove_basic_artificials();

    // Phase 2 on the real objective; artificial columns stay for dual
    // extraction but may not enter.
    RVec phase2(static_cast<std::size_t>(n_ + m_), Rational(0));
    for (int j = 0; j < n_; ++j) phase2[static_cast<std::size_t>(j)] = cost_[static_cast<std::size_t>(j)];
    if (!run(phase2, /*allow_artificials=*/false)) {
      res.status = LPResult::Status::unbounded;
      return res;
    }
    res.status = LPResult::Status::optimal;
    res.objective = objective_value(phase2);
    res.solution.assign(static_cast<std::size_t>(n_), Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_) res.solution[static_cast<std::size_t>(basis_[i])] = rhs_[i];
    res.dual = extract_dual(phase2);
    return res;
  }

 private:
  int rows() const { return static_cast<int>(tab_.size()); }

  Rational reduced_cost(const RVec& cost, int j) const {
    Rational z = -cost[static_cast<std::size_t>(j)];
    for (int i = 0; i < rows(); ++i) {
      const Rational& cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (!is_zero(cb)) z += cb * tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return z;
  }

  Rational objective_value(const RVec& cost) const {
    Rational z = 0;
    for (int i = 0; i < rows(); ++i) {
      const Rational& cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (!is_zero(cb)) z += cb * rhs_[static_cast<std::size_t>(i)];
    }
    return z;
  }

  // Returns false on unboundedness.
  bool run(const RVec& cost, bool allow_artificials) {
    const int limit = allow_artificials ? n_ + m_ : n_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (reduced_cost(cost, j) < 0) {  // Bland: first improving column
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows(); ++i) {
        const Rational& t = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (t <= 0) continue;
        Rational ratio = rhs_[static_cast<std::size_t>(i)] / t;
        if (leave < 0 || ratio < best ||
            (ratio == best &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    basis_[static_cast<std::size_t>(row)] = col;
    auto& prow = tab_[static_cast<std::size_t>(row)];
    Rational inv = prow[static_cast<std::size_t>(col)];
    for (auto& v : prow) v /= inv;
    rhs_[static_cast<std::size_t>(row)] /= inv;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      auto& r = tab_[static_cast<std::size_t>(i)];
      Rational f = r[static_cast<std::size_t>(col)];
      if (is_zero(f)) continue;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (!is_zero(prow[j])) r[j] -= f * prow[j];
      rhs_[static_cast<std::size_t>(i)] -= f * rhs_[static_cast<std::size_t>(row)];
    }
  }

  // After phase 1, pivot surviving artificials out of the basis; rows that
  // turn out to be redundant (all-zero in structural columns) are dropped.
  void remove_basic_artificials() {
    for (int i = rows() - 1; i >= 0; --i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j) {
        if (!is_zero(tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        tab_.erase(tab_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  // y = c_B B^{-1}, read from the artificial columns (which carry the
  // accumulated row operations), mapped back to original row sign. Every
  // original row index gets a component, including rows dropped as
  // redundant.
  RVec extract_dual(const RVec& cost) const {
    RVec y(static_cast<std::size_t>(m_), Rational(0));
    for (int orig = 0; orig < m_; ++orig) {
      Rational yi = 0;
      for (int k = 0; k < rows(); ++k) {
        const Rational& cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])];
        if (!is_zero(cb))
          yi += cb * tab_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n_ + orig)];
      }
      y[static_cast<std::size_t>(orig)] = flip_[static_cast<std::size_t>(orig)] ? -yi : yi;
    }
    return y;
  }

  int m_, n_;
  RVec cost_;
  RMat tab_;
  RVec rhs_;
  std::vector<int> basis_;
  std::vector<bool> flip_;
};

}  // namespace detail

inline LPResult solve_lp(const RMat& a, const RVec& b, const RVec& c) {
  detail::SimplexTableau t(a, b, c);
  return t.solve();
}

// Feasibility of { x : A x = b, x >= 0 } with a Farkas dual on failure.
inline LPResult lp_feasible(const RMat& a, const RVec& b) {
  RVec zero(a.empty() ? 0 : a[0].size(), Rational(0));
  return solve_lp(a, b, zero);
}

}  // namespace lfpoly

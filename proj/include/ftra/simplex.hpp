// Dense two-phase primal simplex over Eigen matrices, templated on the
// scalar: exact rationals give certified optima, doubles give the fast
// backend through the same code path.
//
// Input is equality standard form with b >= 0. Pivoting follows Bland's
// rule (lowest eligible index entering, lowest basis index on ratio ties),
// which guarantees termination; passing bland_after > 0 switches the first
// iterations to the most-negative-reduced-cost rule instead.
#pragma once

#include <vector>

#include "ftra/types.hpp"

namespace ftra {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class S>
struct StandardLp {
  MatX<S> A;   // m x n
  VecX<S> b;   // m, nonnegative
  VecX<S> c;   // n
  // Per row: a column forming a unit vector in that row with zero cost
  // (slack), or -1 when phase 1 must add an artificial.
  std::vector<Index> identity_col;
};

template <class S>
struct SimplexOutcome {
  LpStatus status = LpStatus::Optimal;
  VecX<S> values;   // per-column solution values
  VecX<S> reduced;  // final reduced-cost row; duals are read from slack columns
  S objective{};
  long iterations = 0;
};

namespace simplex_detail {

inline bool rc_negative(double v) { return v < -1e-9; }
inline bool rc_negative(const Rational& v) { return v < 0; }
inline bool pivot_usable(double v) { return v > 1e-11; }
inline bool pivot_usable(const Rational& v) { return v > 0; }
inline double cleaned(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }
inline Rational cleaned(Rational v) { return v; }
inline bool feas_zero(double v) { return std::abs(v) <= 1e-7; }
inline bool feas_zero(const Rational& v) { return v == 0; }

template <class S>
struct Tableau {
  MatX<S> t;  // m x n_total
  VecX<S> b;  // m

  // Gauss-Jordan step; zero entries of the pivot row are skipped, which is
  // where the bulk of the rational-arithmetic time would otherwise go.
  void pivot(Index prow, Index pcol) {
    const S pv = t(prow, pcol);
    for (Index c = 0; c < t.cols(); ++c)
      if (t(prow, c) != 0) t(prow, c) = cleaned(S(t(prow, c) / pv));
    b[prow] = cleaned(S(b[prow] / pv));
    t(prow, pcol) = S(1);
    for (Index r = 0; r < t.rows(); ++r) {
      if (r == prow) continue;
      const S factor = t(r, pcol);
      if (factor == 0) continue;
      for (Index c = 0; c < t.cols(); ++c)
        if (t(prow, c) != 0) t(r, c) = cleaned(S(t(r, c) - factor * t(prow, c)));
      b[r] = cleaned(S(b[r] - factor * b[prow]));
      t(r, pcol) = S(0);
    }
  }

  // Reduced-cost row update; call after pivot() so the pivot row is
  // normalized.
  void eliminate_cost_row(VecX<S>& rc, Index prow, Index pcol) const {
    const S factor = rc[pcol];
    if (factor == 0) return;
    for (Index c = 0; c < t.cols(); ++c)
      if (t(prow, c) != 0) rc[c] = cleaned(S(rc[c] - factor * t(prow, c)));
    rc[pcol] = S(0);
  }
};

// One simplex phase: pivots until no reduced cost is negative among the
// first `active_cols` columns. Bland's rule once `iters` reaches
// `bland_after` (most negative reduced cost before that); leaving row by
// minimum ratio with lowest basis index on ties.
template <class S>
LpStatus run_phase(Tableau<S>& tab, std::vector<Index>& basis, VecX<S>& rc,
                   Index active_cols, long& iters, long bland_after,
                   long max_iters) {
  const Index m = tab.t.rows();
  while (true) {
    if (iters >= max_iters) return LpStatus::IterationLimit;
    const bool bland = iters >= bland_after;
    Index enter = -1;
    S best{0};
    for (Index c = 0; c < active_cols; ++c) {
      if (!rc_negative(rc[c])) continue;
      if (bland) { enter = c; break; }
      if (rc[c] < best) { best = rc[c]; enter = c; }
    }
    if (enter < 0) return LpStatus::Optimal;

    Index leave = -1;
    S best_ratio{0};
    for (Index r = 0; r < m; ++r) {
      if (!pivot_usable(tab.t(r, enter))) continue;
      const S ratio = S(tab.b[r] / tab.t(r, enter));
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return LpStatus::Unbounded;

    tab.pivot(leave, enter);
    tab.eliminate_cost_row(rc, leave, enter);
    basis[leave] = enter;
    ++iters;
  }
}

}  // namespace simplex_detail

template <class S>
SimplexOutcome<S> simplex_solve(const StandardLp<S>& lp, long bland_after = 0,
                                long max_iters = 500000) {
  using namespace simplex_detail;
  const Index m = lp.A.rows();
  const Index n = lp.A.cols();
  FTRA_REQUIRE(lp.b.size() == m && lp.c.size() == n &&
                   static_cast<Index>(lp.identity_col.size()) == m,
               "standard form dimensions inconsistent");

  Index n_art = 0;
  for (Index r = 0; r < m; ++r)
    if (lp.identity_col[r] < 0) ++n_art;

  Tableau<S> tab;
  tab.t.resize(m, n + n_art);
  tab.t.leftCols(n) = lp.A;
  tab.t.rightCols(n_art).setZero();
  tab.b = lp.b;
  std::vector<Index> basis(m);
  {
    Index next_art = n;
    for (Index r = 0; r < m; ++r) {
      FTRA_REQUIRE(tab.b[r] >= 0, "standard form requires b >= 0");
      if (lp.identity_col[r] >= 0) {
        basis[r] = lp.identity_col[r];
      } else {
        tab.t(r, next_art) = S(1);
        basis[r] = next_art++;
      }
    }
  }

  SimplexOutcome<S> out;
  long iters = 0;

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials. Initial reduced costs are
    // c1 - sum of artificial-basic rows, with c1 = 1 on artificials only.
    VecX<S> rc = VecX<S>::Zero(n + n_art);
    for (Index c = n; c < n + n_art; ++c) rc[c] = S(1);
    for (Index r = 0; r < m; ++r) {
      if (basis[r] < n) continue;
      for (Index c = 0; c < n + n_art; ++c)
        if (tab.t(r, c) != 0) rc[c] = S(rc[c] - tab.t(r, c));
    }
    const LpStatus st =
        run_phase(tab, basis, rc, n + n_art, iters, bland_after, max_iters);
    if (st != LpStatus::Optimal) {
      out.status = st;
      out.iterations = iters;
      return out;
    }
    S residual{0};
    for (Index r = 0; r < m; ++r)
      if (basis[r] >= n) residual += tab.b[r];
    if (!feas_zero(residual)) {
      out.status = LpStatus::Infeasible;
      out.iterations = iters;
      return out;
    }
    // Drive artificials basic at zero out of the basis. A structural pivot
    // always exists because the slack columns make the rows independent.
    for (Index r = 0; r < m; ++r) {
      if (basis[r] < n) continue;
      Index pcol = -1;
      for (Index c = 0; c < n; ++c)
        if (tab.t(r, c) != 0) { pcol = c; break; }
      FTRA_REQUIRE(pcol >= 0, "dependent row survived phase 1");
      tab.pivot(r, pcol);
      basis[r] = pcol;
    }
    tab.t.conservativeResize(Eigen::NoChange, n);
  }

  // Phase 2 over the original objective.
  VecX<S> rc = lp.c;
  for (Index r = 0; r < m; ++r) {
    const S cb = lp.c[basis[r]];
    if (cb == 0) continue;
    for (Index c = 0; c < n; ++c)
      if (tab.t(r, c) != 0) rc[c] = S(rc[c] - cb * tab.t(r, c));
  }
  const LpStatus st = run_phase(tab, basis, rc, n, iters, bland_after, max_iters);
  out.status = st;
  out.iterations = iters;
  if (st != LpStatus::Optimal) return out;

  out.values = VecX<S>::Zero(n);
  for (Index r = 0; r < m; ++r) out.values[basis[r]] = tab.b[r];
  out.reduced = std::move(rc);
  out.objective = S(0);
  for (Index c = 0; c < n; ++c)
    if (out.values[c] != 0) out.objective += lp.c[c] * out.values[c];
  return out;
}

}  // namespace ftra

// Solving the LP relaxation and post-processing the optimum.
//
// The same templated simplex backs two backends: exact rationals (default
// for anything that feeds rounding decisions) and doubles. Duals are read
// off the final reduced costs of the per-row slack columns; strong duality
// is checked on every solve and a failure is reported, never swallowed.
#pragma once

#include "ftra/lp.hpp"
#include "ftra/simplex.hpp"

#include <algorithm>
#include <numeric>

namespace ftra {

enum class LpBackend { Exact, Float };

template <class S>
struct LpResult {
  FractionalSolution<S> primal;
  DualSolution<S> dual;
  S objective{};
  LpStatus status = LpStatus::Optimal;
  long iterations = 0;
};

template <class S>
S dual_objective(const Instance& inst, const DualSolution<S>& dual) {
  S obj{0};
  for (Index j = 0; j < inst.num_clients(); ++j)
    obj += num::from_money<S>(inst.r[j]) * dual.alpha[j];
  for (Index i = 0; i < inst.num_sites(); ++i)
    obj -= num::from_money<S>(inst.R[i]) * dual.z[i];
  if (dual.theta) obj -= num::from_money<S>(*inst.k) * *dual.theta;
  return obj;
}

namespace lp_detail {

template <class S>
StandardLp<S> to_standard_form(const LpModel& m) {
  const Index n_struct = m.num_vars();
  const Index n_rows = m.num_rows();
  StandardLp<S> std_lp;
  std_lp.A = MatX<S>::Zero(n_rows, n_struct + n_rows);
  std_lp.b = VecX<S>::Zero(n_rows);
  std_lp.c = VecX<S>::Zero(n_struct + n_rows);
  for (Index c = 0; c < n_struct; ++c) std_lp.c[c] = num::from_money<S>(m.objective[c]);
  std_lp.identity_col.assign(n_rows, -1);
  for (Index r = 0; r < n_rows; ++r) {
    const LpRow& row = m.rows[r];
    const Index slack = n_struct + r;
    FTRA_REQUIRE(row.sense == RowSense::Ge || row.rhs >= 0,
                 "Le rows must have nonnegative rhs");
    if (row.sense == RowSense::Le || row.rhs == 0) {
      // a "= 0" row is stored negated so its slack starts basic
      const int sign = row.sense == RowSense::Le ? 1 : -1;
      for (const auto& [col, coef] : row.coeffs)
        std_lp.A(r, col) = S(sign * coef);
      std_lp.A(r, slack) = S(1);
      std_lp.b[r] = num::from_money<S>(row.rhs);
      std_lp.identity_col[r] = slack;
    } else {
      for (const auto& [col, coef] : row.coeffs) std_lp.A(r, col) = S(coef);
      std_lp.A(r, slack) = S(-1);  // surplus; phase 1 adds the artificial
      std_lp.b[r] = num::from_money<S>(row.rhs);
    }
  }
  return std_lp;
}

inline double nonneg(double v) { return std::max(0.0, v); }
inline Rational nonneg(Rational v) { return v; }

template <class S>
bool objectives_match(const S& a, const S& b);
template <>
inline bool objectives_match<Rational>(const Rational& a, const Rational& b) {
  return a == b;
}
template <>
inline bool objectives_match<double>(const double& a, const double& b) {
  return std::abs(a - b) <= 1e-7 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace lp_detail

template <class S>
LpResult<S> solve(const Instance& inst, const LpModel& m) {
  auto std_lp = lp_detail::to_standard_form<S>(m);
  auto outcome = simplex_solve(std_lp);
  LpResult<S> res;
  res.status = outcome.status;
  res.iterations = outcome.iterations;
  if (outcome.status != LpStatus::Optimal) {
    if (outcome.status == LpStatus::IterationLimit)
      throw std::runtime_error("simplex hit the iteration limit");
    return res;
  }

  res.primal.y.resize(m.n_f);
  res.primal.x.resize(m.n_f, m.n_c);
  for (Index i = 0; i < m.n_f; ++i) res.primal.y[i] = outcome.values[m.y_col(i)];
  for (Index i = 0; i < m.n_f; ++i)
    for (Index j = 0; j < m.n_c; ++j)
      res.primal.x(i, j) = outcome.values[m.x_col(i, j)];
  res.primal.objective = outcome.objective;
  res.objective = outcome.objective;

  res.dual.alpha = VecX<S>::Zero(m.n_c);
  res.dual.beta = MatX<S>::Zero(m.n_f, m.n_c);
  res.dual.z = VecX<S>::Zero(m.n_f);
  const Index n_struct = m.num_vars();
  for (Index r = 0; r < m.num_rows(); ++r) {
    const LpRow& row = m.rows[r];
    const S v = lp_detail::nonneg(S(outcome.reduced[n_struct + r]));
    switch (row.kind) {
      case RowKind::Requirement: res.dual.alpha[row.j] = v; break;
      case RowKind::Linking: res.dual.beta(row.i, row.j) = v; break;
      case RowKind::Capacity: res.dual.z[row.i] = v; break;
      case RowKind::OpeningBound: res.dual.theta = v; break;
    }
  }

  const S dual_obj = dual_objective(inst, res.dual);
  if (!lp_detail::objectives_match<S>(res.objective, dual_obj))
    throw std::runtime_error("strong duality violated: primal " +
                             num::to_string(res.objective) + " vs dual " +
                             num::to_string(dual_obj));
  return res;
}

// Reassigns x to the greedy-nearest filling given y: each client takes
// min(y_i, remainder) from sites in ascending c_ij, stopping at exactly r_j
// units. Keeps LP optimality and leaves at most one site per client with
// 0 < x_ij < y_i, the farthest one used.
template <class S>
FractionalSolution<S> make_complete(const Instance& inst,
                                    const FractionalSolution<S>& frac) {
  FractionalSolution<S> out;
  out.y = frac.y;
  out.x = MatX<S>::Zero(inst.num_sites(), inst.num_clients());
  for (Index j = 0; j < inst.num_clients(); ++j) {
    std::vector<Index> order(inst.num_sites());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return inst.c(a, j) < inst.c(b, j);
    });
    S need = num::from_money<S>(inst.r[j]);
    for (Index i : order) {
      if (!num::is_positive(need)) break;
      const S take = std::min<S>(S(out.y[i]), need);
      if (num::is_positive(take)) out.x(i, j) = take;
      need = S(need - take);
    }
    FTRA_REQUIRE(!num::is_positive(need), "fractional solution lacks capacity");
  }
  out.objective = cost(inst, out);
  return out;
}

// Complementary slackness of a primal/dual pair from the same solve (or
// after make_complete, which preserves optimality):
//   C1 x_ij > 0 => alpha_j = beta_ij + c_ij
//   C2 y_i > 0  => sum_j beta_ij = f_i + z_i (+ theta)
//   C3 alpha_j > 0 => sum_i x_ij = r_j
//   C4 beta_ij > 0 => x_ij = y_i
//   C5 z_i > 0  => y_i = R_i  (and theta > 0 => sum_i y_i = k)
template <class S>
ViolationReport verify_csc(const Instance& inst, const FractionalSolution<S>& frac,
                           const DualSolution<S>& dual, double tol) {
  ViolationReport rep;
  const S stol = static_cast<S>(tol);
  auto near = [&](const S& a, const S& b) {
    return (a >= b ? S(a - b) : S(b - a)) <= stol;
  };
  auto pos = [&](const S& v) { return v > stol; };

  for (Index i = 0; i < inst.num_sites(); ++i)
    for (Index j = 0; j < inst.num_clients(); ++j) {
      if (pos(frac.x(i, j)) &&
          !near(dual.alpha[j], S(dual.beta(i, j) + num::from_money<S>(inst.c(i, j)))))
        rep.items.push_back({"C1: x_ij > 0 => alpha_j = beta_ij + c_ij", i, j,
                             num::to_double(S(dual.alpha[j] - dual.beta(i, j))) -
                                 static_cast<double>(inst.c(i, j))});
      if (pos(dual.beta(i, j)) && !near(frac.x(i, j), frac.y[i]))
        rep.items.push_back({"C4: beta_ij > 0 => x_ij = y_i", i, j,
                             num::to_double(S(frac.y[i] - frac.x(i, j)))});
    }
  for (Index i = 0; i < inst.num_sites(); ++i) {
    S beta_sum{0};
    for (Index j = 0; j < inst.num_clients(); ++j) beta_sum += dual.beta(i, j);
    S rhs = num::from_money<S>(inst.f[i]) + dual.z[i];
    if (dual.theta) rhs += *dual.theta;
    if (pos(frac.y[i]) && !near(beta_sum, rhs))
      rep.items.push_back({"C2: y_i > 0 => sum_j beta_ij = f_i + z_i", i, -1,
                           num::to_double(S(rhs - beta_sum))});
    if (pos(dual.z[i]) && !near(frac.y[i], num::from_money<S>(inst.R[i])))
      rep.items.push_back({"C5: z_i > 0 => y_i = R_i", i, -1,
                           static_cast<double>(inst.R[i]) - num::to_double(frac.y[i])});
  }
  for (Index j = 0; j < inst.num_clients(); ++j) {
    if (!pos(dual.alpha[j])) continue;
    const S got = frac.x.col(j).sum();
    if (!near(got, num::from_money<S>(inst.r[j])))
      rep.items.push_back({"C3: alpha_j > 0 => sum_i x_ij = r_j", -1, j,
                           num::to_double(got) - static_cast<double>(inst.r[j])});
  }
  if (dual.theta && pos(*dual.theta)) {
    const S open = frac.y.sum();
    if (!near(open, num::from_money<S>(*inst.k)))
      rep.items.push_back({"theta > 0 => sum_i y_i = k", -1, -1,
                           num::to_double(open) - static_cast<double>(*inst.k)});
  }
  return rep;
}

}  // namespace ftra

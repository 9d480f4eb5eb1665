// Problem instances and solutions.
//
// An instance has n_f sites and n_c clients. Site i may open up to R_i
// identical facilities at cost f_i each; client j needs r_j open
// facilities and pays c_ij per connection to site i (parallel connections
// to one site are allowed, but at most y_i of them). An optional global
// bound k caps the total number of open facilities.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftra/types.hpp"

namespace ftra {

struct Instance {
  MoneyVec f;  // n_f, per-facility opening cost
  MoneyMat c;  // n_f x n_c connection costs
  MoneyVec r;  // n_c, client requirements
  MoneyVec R;  // n_f, site capacities
  std::optional<Money> k;

  Index num_sites() const { return f.size(); }
  Index num_clients() const { return r.size(); }
  Money capacity_total() const { return R.size() ? R.sum() : 0; }
  Money max_requirement() const { return r.size() ? r.maxCoeff() : 0; }
  bool uniform_requirements() const {
    return r.size() == 0 || (r.array() == r[0]).all();
  }
};

// Throws std::invalid_argument on malformed data. Interior constructions
// (e.g. shrunken instances) may carry zero-capacity sites; external inputs
// must not, hence the flag.
void validate(const Instance& inst, bool allow_zero_capacity = false);

struct IntegralSolution {
  MoneyVec y;  // n_f, facilities opened per site
  MoneyMat x;  // n_f x n_c, connections
};

template <class S>
struct FractionalSolution {
  VecX<S> y;
  MatX<S> x;
  S objective{};
};

template <class S>
struct DualSolution {
  VecX<S> alpha;  // n_c
  MatX<S> beta;   // n_f x n_c
  VecX<S> z;      // n_f
  std::optional<S> theta;  // only for the k-bounded LP
};

struct Violation {
  std::string constraint;
  Index i = -1;  // site, or -1
  Index j = -1;  // client, or -1
  double slack = 0.0;
  std::string to_string() const;
};

struct ViolationReport {
  std::vector<Violation> items;
  bool ok() const { return items.empty(); }
  std::string to_string() const;
};

namespace detail {
template <class Sol>
void check_dims(const Instance& inst, const Sol& sol) {
  if (sol.y.size() != inst.num_sites() || sol.x.rows() != inst.num_sites() ||
      sol.x.cols() != inst.num_clients())
    throw std::invalid_argument("solution dimensions do not match instance");
}
}  // namespace detail

inline Money cost(const Instance& inst, const IntegralSolution& sol) {
  detail::check_dims(inst, sol);
  Money total = inst.f.dot(sol.y);
  for (Index i = 0; i < inst.num_sites(); ++i)
    total += inst.c.row(i).dot(sol.x.row(i));
  return total;
}

template <class S>
S cost(const Instance& inst, const FractionalSolution<S>& sol) {
  detail::check_dims(inst, sol);
  S total{0};
  for (Index i = 0; i < inst.num_sites(); ++i) {
    total += num::from_money<S>(inst.f[i]) * sol.y[i];
    for (Index j = 0; j < inst.num_clients(); ++j)
      total += num::from_money<S>(inst.c(i, j)) * sol.x(i, j);
  }
  return total;
}

inline Money facility_cost(const Instance& inst, const IntegralSolution& sol) {
  return inst.f.dot(sol.y);
}
inline Money connection_cost(const Instance& inst, const IntegralSolution& sol) {
  return cost(inst, sol) - facility_cost(inst, sol);
}

// Reports every violated constraint of the integral program: requirement,
// linking x <= y, capacity y <= R, nonnegativity, and (when enforce_k and
// the instance carries k) the global opening bound.
ViolationReport check_feasible(const Instance& inst, const IntegralSolution& sol,
                               bool enforce_k = false);

// Same constraint families over fractional values, with absolute tolerance.
template <class S>
ViolationReport check_feasible_fractional(const Instance& inst,
                                          const FractionalSolution<S>& sol,
                                          const MoneyVec& r, const MoneyVec& R,
                                          double tol);

// Brute-force quadruple check: c_ij <= c_i'j + c_i'j' + c_ij' + slack for
// all sites i, i' and clients j, j'. Generated instances round Euclidean
// distances, which can break the exact inequality by at most 2 units.
ViolationReport check_metric(const Instance& inst, Money slack = 0);

// Tightest site-to-site distance routed through a client:
// min_j (c_ij + c_i2j). Symmetric by construction.
Money site_distance(const Instance& inst, Index i, Index i2);

// Cost of client j's most expensive current connection, -1 when j has none.
Money max_connection_cost(const Instance& inst, const IntegralSolution& sol, Index j);

// Site holding that connection; equal costs resolve to the lowest site
// index. -1 when j has no connections.
Index max_connection_site(const Instance& inst, const IntegralSolution& sol, Index j);

template <class S>
ViolationReport check_feasible_fractional(const Instance& inst,
                                          const FractionalSolution<S>& sol,
                                          const MoneyVec& r, const MoneyVec& R,
                                          double tol) {
  detail::check_dims(inst, sol);
  ViolationReport rep;
  const S stol = static_cast<S>(tol);
  for (Index j = 0; j < inst.num_clients(); ++j) {
    S got = sol.x.col(j).sum();
    if (got + stol < num::from_money<S>(r[j]))
      rep.items.push_back({"sum_i x_ij >= r_j", -1, j,
                           num::to_double(num::from_money<S>(r[j]) - got)});
  }
  for (Index i = 0; i < inst.num_sites(); ++i) {
    if (sol.y[i] > num::from_money<S>(R[i]) + stol)
      rep.items.push_back({"y_i <= R_i", i, -1,
                           num::to_double(sol.y[i]) - static_cast<double>(R[i])});
    if (sol.y[i] < -stol)
      rep.items.push_back({"y_i >= 0", i, -1, -num::to_double(sol.y[i])});
    for (Index j = 0; j < inst.num_clients(); ++j) {
      if (sol.x(i, j) > sol.y[i] + stol)
        rep.items.push_back({"x_ij <= y_i", i, j,
                             num::to_double(sol.x(i, j) - sol.y[i])});
      if (sol.x(i, j) < -stol)
        rep.items.push_back({"x_ij >= 0", i, j, -num::to_double(sol.x(i, j))});
    }
  }
  return rep;
}

}  // namespace ftra

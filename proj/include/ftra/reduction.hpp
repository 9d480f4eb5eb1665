// Instance shrinking and the split into a large integral part plus a small
// bounded-capacity instance.
//
// Replacing R_i by ceil(y*_i) keeps the LP optimum. The optimum then splits
// into y^l_i = max(0, floor(y*_i) - 1) with x^l_ij = min(floor(x*_ij), y^l_i)
// (a feasible integral solution of the large part) and a small residual
// instance whose capacities are ceil(y*_i) - y^l_i, always in {0, 1, 2}.
// Solving the small instance with any subroutine that approximates its
// fractional optimum and adding the large part back preserves the
// subroutine's ratio.
#pragma once

#include <functional>

#include "ftra/lp_engine.hpp"

namespace ftra {

struct SplitPair {
  Instance shrunken;           // base instance with R_i = ceil(y*_i); may hold capacity-0 sites
  IntegralSolution large_sol;  // (x^l, y^l)
  MoneyVec r_large, R_large;   // large-part parameters (R^l = y^l)
  MoneyVec r_small, R_small;   // small-part parameters, full site/client index
  Instance small_inst;         // compacted: sites with R^s >= 1, clients with r^s >= 1
  std::vector<Index> site_map;    // compact site -> original site
  std::vector<Index> client_map;  // compact client -> original client
};

// R_i <- ceil(y*_i); drops any global bound k. `frac` must be LP-optimal.
template <class S>
Instance shrink(const Instance& inst, const FractionalSolution<S>& frac);

// `frac` must be complete (sum_i x_ij = r_j) and optimal for `shrunken`.
// Asserts every split invariant.
template <class S>
SplitPair split(const Instance& shrunken, const FractionalSolution<S>& frac);

// Each site becomes R_i unit-capacity copies. Fold sums the copies back.
std::pair<Instance, std::vector<Index>> expand_to_ftfl(const Instance& inst,
                                                       Money expansion_cap = 4096);
IntegralSolution fold_ftfl_solution(const Instance& orig,
                                    const std::vector<Index>& site_map,
                                    const IntegralSolution& ftfl_sol);

using SubSolver = std::function<IntegralSolution(const Instance&)>;

// LP solve + shrink + split, subsolver on the small instance, recombine.
IntegralSolution reduce_solve(const Instance& inst, const SubSolver& subsolver,
                              LpBackend backend = LpBackend::Exact);

}  // namespace ftra

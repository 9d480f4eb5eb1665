// Test-only reference implementations, kept independent of the library's
// augmentation path so they can serve as oracles for it.
#pragma once

#include "ftra/aga.hpp"
#include "ftra/oracle.hpp"
#include "ftra/reduction.hpp"
#include "ftra/rng.hpp"

namespace ftra::test {

// Greedy augmentation on a unit-capacity (FTFL-style) instance: one
// facility per iteration, each improving client moves one unit of its most
// expensive connection. Same tie rules as the fast path: gain/f ratio with
// f = 0 counting as infinite, lowest index first.
inline IntegralSolution slow_ga_unit(const Instance& ftfl, IntegralSolution sol) {
  sol = optimize_connections(ftfl, sol);
  while (true) {
    Index best = -1;
    Money best_gain = 0;
    for (Index i = 0; i < ftfl.num_sites(); ++i) {
      if (sol.y[i] >= ftfl.R[i]) continue;
      Money gain = -ftfl.f[i];
      for (Index j = 0; j < ftfl.num_clients(); ++j) {
        const Money mc = max_connection_cost(ftfl, sol, j);
        if (mc > ftfl.c(i, j)) gain += mc - ftfl.c(i, j);
      }
      if (gain <= 0) continue;
      bool better;
      if (best < 0) {
        better = true;
      } else {
        const bool inf_new = ftfl.f[i] == 0, inf_old = ftfl.f[best] == 0;
        if (inf_new != inf_old)
          better = inf_new;
        else if (inf_new)
          better = false;
        else
          better = gain * ftfl.f[best] > best_gain * ftfl.f[i];
      }
      if (better) {
        best = i;
        best_gain = gain;
      }
    }
    if (best < 0) return sol;
    sol.y[best] += 1;
    for (Index j = 0; j < ftfl.num_clients(); ++j) {
      const Money mc = max_connection_cost(ftfl, sol, j);
      if (mc <= ftfl.c(best, j)) continue;
      const Index src = max_connection_site(ftfl, sol, j);
      sol.x(src, j) -= 1;
      sol.x(best, j) += 1;
    }
  }
}

// A random feasible starting solution with greedy-nearest connections.
inline IntegralSolution random_feasible(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed + 77);
  MoneyVec y(inst.num_sites());
  while (true) {
    for (Index i = 0; i < inst.num_sites(); ++i)
      y[i] = rng.uniform_int(0, inst.R[i]);
    if (y.sum() >= inst.max_requirement()) break;
  }
  auto x = optimal_connections(inst, y);
  FTRA_REQUIRE(x.has_value(), "random start lost capacity");
  return {y, *x};
}

// Unit expansion of (instance, solution): copies of each site get the
// site's opened facilities left to right.
inline IntegralSolution expand_solution(const Instance& ftfl,
                                        const std::vector<Index>& site_map,
                                        const Instance& orig,
                                        const IntegralSolution& start) {
  IntegralSolution expanded;
  expanded.y = MoneyVec::Zero(ftfl.num_sites());
  expanded.x = MoneyMat::Zero(ftfl.num_sites(), ftfl.num_clients());
  MoneyVec placed = MoneyVec::Zero(orig.num_sites());
  for (Index d = 0; d < ftfl.num_sites(); ++d) {
    const Index site = site_map[static_cast<std::size_t>(d)];
    if (placed[site] < start.y[site]) {
      expanded.y[d] = 1;
      placed[site] += 1;
    }
  }
  auto x = optimal_connections(ftfl, expanded.y);
  FTRA_REQUIRE(x.has_value(), "expansion lost capacity");
  expanded.x = *x;
  return expanded;
}

}  // namespace ftra::test

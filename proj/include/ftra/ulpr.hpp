// Unified LP-rounding solver.
//
// Stage 1 fully opens every site whose fractional opening sits at capacity,
// rounding up its positive connections. Stage 2 repeatedly picks the
// unfinished client with the smallest dual value, gathers its cheapest
// fractionally-used sites into a cluster whose fractional mass exactly
// matches the client's residual requirement (splitting the last site if
// needed), rounds the cluster, and serves every client that touched it.
// Split sites keep a lineage pointer to their original site so aggregate
// openings never exceed the capacity.
#pragma once

#include <utility>
#include <vector>

#include "ftra/lp_engine.hpp"

namespace ftra {

template <class S>
struct WorkingSite {
  Index lineage;  // original site index
  S y;            // live fractional opening
  VecX<S> x;      // live fractional connections, one per client
  bool alive = true;
};

template <class S>
struct RoundingState {
  const Instance* inst = nullptr;
  std::vector<WorkingSite<S>> sites;       // handle = position, creation order
  std::vector<char> pruned;                // per original site: in P
  MoneyVec r_hat, r_bar;                   // established / residual, r_hat + r_bar = r
  std::vector<std::vector<Index>> member;  // F_j as working-site handles
  VecX<S> alpha;                           // optimal duals, drives cluster centers
  IntegralSolution acc;                    // integral output, original indexing
  std::vector<char> consumed;              // handles already used by a cluster

  bool in_cbar(Index j) const { return r_bar[j] >= 1; }
  bool cbar_empty() const {
    for (Index j = 0; j < r_bar.size(); ++j)
      if (in_cbar(j)) return false;
    return true;
  }
};

// `frac` must be complete (every client connected to exactly r_j units,
// greedy-nearest given y).
template <class S>
RoundingState<S> stage1_prune(const Instance& inst, const FractionalSolution<S>& frac);

// Returns the cluster center j_o and the chosen handles in facility-cost
// order; after the call the cluster's fractional mass equals r_bar[j_o].
template <class S>
std::pair<Index, std::vector<Index>> build_cluster(RoundingState<S>& st);

template <class S>
void round_cluster(RoundingState<S>& st, Index j_o, const std::vector<Index>& cluster);

template <class S>
IntegralSolution ulpr_round(const Instance& inst, const FractionalSolution<S>& completed,
                            const VecX<S>& alpha);

// Full pipeline: LP solve on the chosen backend, completion, then rounding.
IntegralSolution ulpr_solve(const Instance& inst, LpBackend backend = LpBackend::Exact);

}  // namespace ftra

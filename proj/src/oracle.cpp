#include "ftra/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ftra {

std::optional<MoneyMat> optimal_connections(const Instance& inst, const MoneyVec& y) {
  FTRA_REQUIRE(y.size() == inst.num_sites(), "y size mismatch");
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  const Money available = nf > 0 ? y.sum() : 0;
  MoneyMat x = MoneyMat::Zero(nf, nc);
  for (Index j = 0; j < nc; ++j) {
    if (available < inst.r[j]) return std::nullopt;
    std::vector<Index> order(nf);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return inst.c(a, j) < inst.c(b, j); });
    Money need = inst.r[j];
    for (Index i : order) {
      if (need == 0) break;
      const Money take = std::min(need, y[i]);
      x(i, j) = take;
      need -= take;
    }
  }
  return x;
}

namespace {

struct Search {
  const Instance& inst;
  bool enforce_k;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  MoneyVec y;
  std::vector<Money> suffix_cap;  // total capacity of sites >= depth
  Money best_cost;
  IntegralSolution best;

  void dfs(Index depth, Money fcost, Money opened) {
    if (++nodes > budget) throw BudgetExceeded("oracle node budget exceeded");
    const Index nf = inst.num_sites();
    if (depth == nf) {
      auto x = optimal_connections(inst, y);
      if (!x) return;
      Money total = fcost;
      for (Index i = 0; i < nf; ++i) total += inst.c.row(i).dot(x->row(i));
      if (total < best_cost) {
        best_cost = total;
        best.y = y;
        best.x = *x;
      }
      return;
    }
    const Money k_cap = enforce_k && inst.k ? *inst.k : std::numeric_limits<Money>::max();
    for (Money v = 0; v <= inst.R[depth]; ++v) {
      const Money nfcost = fcost + v * inst.f[depth];
      if (nfcost >= best_cost) break;  // facility cost only grows with v
      if (opened + v > k_cap) break;
      // remaining sites must still be able to cover the largest requirement
      if (opened + v + suffix_cap[depth + 1] < inst.max_requirement()) continue;
      y[depth] = v;
      dfs(depth + 1, nfcost, opened + v);
    }
    y[depth] = 0;
  }
};

}  // namespace

OracleResult exact_ilp(const Instance& inst, bool enforce_k, std::uint64_t budget) {
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  Search s{inst, enforce_k, budget};
  s.y = MoneyVec::Zero(nf);
  s.suffix_cap.assign(nf + 1, 0);
  for (Index i = nf - 1; i >= 0; --i)
    s.suffix_cap[i] = s.suffix_cap[i + 1] + inst.R[i];

  // all-open start keeps the incumbent finite from the first leaf on
  MoneyVec full = inst.R;
  if (enforce_k && inst.k && nf > 0) {
    Money over = full.sum() - *inst.k;
    for (Index i = 0; i < nf && over > 0; ++i) {
      const Money cut = std::min(over, full[i]);
      full[i] -= cut;
      over -= cut;
    }
  }
  auto x0 = optimal_connections(inst, full);
  FTRA_REQUIRE(x0.has_value(), "instance infeasible even with all sites open");
  s.best.y = full;
  s.best.x = *x0;
  s.best_cost = inst.f.dot(full);
  for (Index i = 0; i < nf; ++i) s.best_cost += inst.c.row(i).dot(x0->row(i));

  if (nc == 0) {
    // nothing to serve: opening nothing is optimal
    s.best.y = MoneyVec::Zero(nf);
    s.best.x = MoneyMat::Zero(nf, 0);
    s.best_cost = 0;
  } else {
    s.dfs(0, 0, 0);
  }
  return {s.best, s.best_cost, s.nodes};
}

}  // namespace ftra

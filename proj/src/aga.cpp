#include "ftra/aga.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "ftra/oracle.hpp"

namespace ftra {

IntegralSolution optimize_connections(const Instance& inst, const IntegralSolution& sol) {
  const auto rep = check_feasible(inst, sol);
  FTRA_REQUIRE(rep.ok(), "optimize_connections needs a feasible solution");
  auto x = optimal_connections(inst, sol.y);
  FTRA_REQUIRE(x.has_value(), "feasible solution lost capacity");
  return {sol.y, std::move(*x)};
}

MoneyVec calculate_gain(const Instance& inst, const GainState& state) {
  MoneyVec gain = MoneyVec::Zero(inst.num_sites());
  for (Index i = 0; i < inst.num_sites(); ++i) {
    if (state.ybar[i] <= 0) continue;  // saturated sites never gain
    Money saved = 0;
    for (Index j = 0; j < inst.num_clients(); ++j) {
      const Money mc = max_connection_cost(inst, state.sol, j);
      if (mc > inst.c(i, j)) saved += mc - inst.c(i, j);
    }
    gain[i] = saved - inst.f[i];
  }
  return gain;
}

namespace {

// gain_a/f_a > gain_b/f_b on positive gains, with f = 0 counting as
// infinite ratio; ties keep the lower index (strict comparison).
bool ratio_better(Money gain_a, Money f_a, Money gain_b, Money f_b) {
  const bool inf_a = f_a == 0, inf_b = f_b == 0;
  if (inf_a != inf_b) return inf_a;
  if (inf_a) return false;
  return gain_a * f_b > gain_b * f_a;
}

}  // namespace

IntegralSolution aga(const Instance& inst, const IntegralSolution& input) {
  GainState st;
  st.sol = optimize_connections(inst, input);
  st.ybar = inst.R - st.sol.y;
  st.cc = connection_cost(inst, st.sol);
  st.gain = calculate_gain(inst, st);

  const Index nf = inst.num_sites(), nc = inst.num_clients();
  long iters = 0;
  while (true) {
    Index best = -1;
    for (Index i = 0; i < nf; ++i) {
      if (st.gain[i] <= 0) continue;
      if (best < 0 || ratio_better(st.gain[i], inst.f[i], st.gain[best], inst.f[best]))
        best = i;
    }
    if (best < 0) break;
    FTRA_REQUIRE(++iters <= nf + nc * nf, "augmentation failed to terminate");

    std::vector<Index> movers, sources;
    Money ns = std::numeric_limits<Money>::max();
    for (Index j = 0; j < nc; ++j) {
      const Money mc = max_connection_cost(inst, st.sol, j);
      if (mc <= inst.c(best, j)) continue;
      movers.push_back(j);
      const Index src = max_connection_site(inst, st.sol, j);
      sources.push_back(src);
      ns = std::min(ns, st.sol.x(src, j));
    }
    const Money toc = std::min(ns, st.ybar[best]);
    FTRA_REQUIRE(toc >= 1 && !movers.empty(), "positive gain without a move");

    st.sol.y[best] += toc;
    st.ybar[best] -= toc;
    Money delta = 0;
    for (std::size_t s = 0; s < movers.size(); ++s) {
      const Index j = movers[s], src = sources[s];
      delta += toc * (inst.c(src, j) - inst.c(best, j));
      st.sol.x(src, j) -= toc;
      st.sol.x(best, j) += toc;
      FTRA_REQUIRE(st.sol.x(src, j) >= 0, "switched more than available");
    }
    st.cc -= delta;
    FTRA_REQUIRE(delta > toc * inst.f[best], "augmentation did not reduce cost");
    st.gain = calculate_gain(inst, st);
  }
  FTRA_REQUIRE(st.cc == connection_cost(inst, st.sol), "connection cost drifted");
  FTRA_REQUIRE(cost(inst, st.sol) <= cost(inst, input), "augmentation increased cost");
  FTRA_REQUIRE(check_feasible(inst, st.sol).ok(), "augmentation broke feasibility");
  return st.sol;
}

IntegralSolution scaled_152_pipeline(const Instance& inst, const PipelineConfig& cfg,
                                     IntegralSolution* apd_stage) {
  PdConfig pd_cfg;
  pd_cfg.lambda = cfg.delta;
  auto seeded = apd_solve(inst, pd_cfg);
  if (apd_stage) *apd_stage = seeded.sol;
  return aga(inst, seeded.sol);
}

}  // namespace ftra

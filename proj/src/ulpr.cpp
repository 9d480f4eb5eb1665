#include "ftra/ulpr.hpp"

#include <algorithm>

namespace ftra {
namespace {

template <class S>
bool ge(const S& a, const S& b) {  // a >= b up to the float snap
  return !num::is_positive(S(b - a));
}

template <class S>
bool same(const S& a, const S& b) {
  return ge(a, b) && ge(b, a);
}

template <class S>
void erase_handle(std::vector<Index>& handles, Index h) {
  handles.erase(std::remove(handles.begin(), handles.end(), h), handles.end());
}

}  // namespace

template <class S>
RoundingState<S> stage1_prune(const Instance& inst, const FractionalSolution<S>& frac) {
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  for (Index j = 0; j < nc; ++j)
    FTRA_REQUIRE(same(S(frac.x.col(j).sum()), num::from_money<S>(inst.r[j])),
                 "stage 1 needs a complete fractional solution");

  RoundingState<S> st;
  st.inst = &inst;
  st.pruned.assign(nf, 0);
  st.acc.y = MoneyVec::Zero(nf);
  st.acc.x = MoneyMat::Zero(nf, nc);
  st.r_hat = MoneyVec::Zero(nc);
  st.r_bar = inst.r;
  st.member.assign(nc, {});

  for (Index i = 0; i < nf; ++i) {
    if (!num::eq_int(frac.y[i], inst.R[i])) continue;
    st.pruned[i] = 1;
    st.acc.y[i] = inst.R[i];
    for (Index j = 0; j < nc; ++j)
      if (num::is_positive(frac.x(i, j))) st.acc.x(i, j) = num::ceil_int(frac.x(i, j));
  }
  for (Index j = 0; j < nc; ++j) {
    Money established = 0;
    for (Index i = 0; i < nf; ++i)
      if (st.pruned[i]) established += st.acc.x(i, j);
    st.r_hat[j] = established;
    st.r_bar[j] = inst.r[j] - established;
    FTRA_REQUIRE(st.r_bar[j] >= 0, "residual requirement went negative");
  }
  for (Index i = 0; i < nf; ++i) {
    if (st.pruned[i]) continue;
    WorkingSite<S> ws{i, frac.y[i], frac.x.row(i).transpose(), true};
    st.sites.push_back(std::move(ws));
  }
  for (Index h = 0; h < static_cast<Index>(st.sites.size()); ++h)
    for (Index j = 0; j < nc; ++j)
      if (num::is_positive(st.sites[h].x[j])) st.member[j].push_back(h);
  st.consumed.assign(st.sites.size(), 0);
  return st;
}

template <class S>
std::pair<Index, std::vector<Index>> build_cluster(RoundingState<S>& st) {
  const Instance& inst = *st.inst;
  const Index nc = inst.num_clients();

  // loop invariant: every unfinished client retains enough fractional mass
  for (Index j = 0; j < nc; ++j) {
    if (!st.in_cbar(j)) continue;
    S mass{0};
    for (Index h : st.member[j]) mass += st.sites[h].y;
    FTRA_REQUIRE(ge(mass, num::from_money<S>(st.r_bar[j])),
                 "cluster invariant violated");
  }

  Index j_o = -1;
  for (Index j = 0; j < nc; ++j) {
    if (!st.in_cbar(j)) continue;
    if (j_o < 0 || st.alpha[j] < st.alpha[j_o]) j_o = j;
  }
  FTRA_REQUIRE(j_o >= 0, "build_cluster called with no unfinished client");

  std::vector<Index> order = st.member[j_o];
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Money fa = inst.f[st.sites[a].lineage], fb = inst.f[st.sites[b].lineage];
    return fa != fb ? fa < fb : a < b;  // cost, then creation order
  });

  const S target = num::from_money<S>(st.r_bar[j_o]);
  std::vector<Index> cluster;
  S mass{0};
  for (Index h : order) {
    cluster.push_back(h);
    mass += st.sites[h].y;
    if (ge(mass, target)) break;
  }
  FTRA_REQUIRE(ge(mass, target), "cluster cannot cover the residual");

  if (!same(mass, target)) {
    // split the last (most expensive) site so the cluster mass is exact
    const Index il = cluster.back();
    const S y_first = S(target - S(mass - st.sites[il].y));
    const S y_second = S(st.sites[il].y - y_first);
    FTRA_REQUIRE(num::is_positive(y_first) && num::is_positive(y_second),
                 "degenerate split");

    WorkingSite<S> first{st.sites[il].lineage, y_first, VecX<S>::Zero(nc), true};
    WorkingSite<S> second{st.sites[il].lineage, y_second, VecX<S>::Zero(nc), true};
    for (Index j = 0; j < nc; ++j) {
      const S xj = st.sites[il].x[j];
      if (!num::is_positive(xj)) continue;
      const S to_first = std::min<S>(xj, y_first);
      first.x[j] = to_first;
      second.x[j] = S(xj - to_first);
    }
    st.sites[il].alive = false;
    const Index h1 = static_cast<Index>(st.sites.size());
    st.sites.push_back(std::move(first));
    const Index h2 = h1 + 1;
    st.sites.push_back(std::move(second));
    st.consumed.push_back(0);
    st.consumed.push_back(0);
    for (Index j = 0; j < nc; ++j) {
      if (!num::is_positive(st.sites[il].x[j])) continue;
      erase_handle<S>(st.member[j], il);
      if (num::is_positive(st.sites[h1].x[j])) st.member[j].push_back(h1);
      if (num::is_positive(st.sites[h2].x[j])) st.member[j].push_back(h2);
    }
    cluster.back() = h1;

    S check{0};
    for (Index h : cluster) check += st.sites[h].y;
    FTRA_REQUIRE(same(check, target), "split failed to balance the cluster");
  }
  return {j_o, cluster};
}

template <class S>
void round_cluster(RoundingState<S>& st, Index j_o, const std::vector<Index>& cluster) {
  const Instance& inst = *st.inst;
  const Money target = st.r_bar[j_o];
  FTRA_REQUIRE(target >= 1, "cluster center already satisfied");

  // 2.2.1: round openings up in cost order until the target is covered,
  // then trim the last site so the opened total is exactly the target.
  std::vector<std::pair<Index, Money>> opened;  // (handle, integral opening)
  Money total = 0;
  for (Index h : cluster) {
    Money yi = num::ceil_int(st.sites[h].y);
    opened.emplace_back(h, yi);
    total += yi;
    if (total >= target) {
      opened.back().second = yi - (total - target);
      total = target;
      break;
    }
  }
  FTRA_REQUIRE(total == target, "cluster rounding missed the target");
  // the last cluster site never exceeds the floor of its fractional value
  if (opened.size() == cluster.size() && !opened.empty() &&
      opened.back().first == cluster.back())
    FTRA_REQUIRE(opened.back().second <= num::floor_int(st.sites[cluster.back()].y),
                 "last site rounded above its floor");

  for (const auto& [h, yi] : opened) {
    FTRA_REQUIRE(!st.consumed[h], "working site entered two clusters");
    st.acc.y[st.sites[h].lineage] += yi;
    FTRA_REQUIRE(st.acc.y[st.sites[h].lineage] <= inst.R[st.sites[h].lineage],
                 "lineage capacity exceeded");
  }

  // 2.2.2: every unfinished client touching the cluster connects to the
  // opened sites, nearest first.
  for (Index j = 0; j < inst.num_clients(); ++j) {
    if (!st.in_cbar(j)) continue;
    bool touches = false;
    for (Index h : cluster)
      if (std::find(st.member[j].begin(), st.member[j].end(), h) != st.member[j].end()) {
        touches = true;
        break;
      }
    if (touches) {
      std::vector<std::size_t> conn_order(opened.size());
      for (std::size_t idx = 0; idx < opened.size(); ++idx) conn_order[idx] = idx;
      std::stable_sort(conn_order.begin(), conn_order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return inst.c(st.sites[opened[a].first].lineage, j) <
                                inst.c(st.sites[opened[b].first].lineage, j);
                       });
      for (std::size_t idx : conn_order) {
        const auto& [h, yi] = opened[idx];
        const Money take = std::min(st.r_bar[j], yi);
        if (take <= 0) continue;
        st.acc.x(st.sites[h].lineage, j) += take;
        st.r_bar[j] -= take;
        st.r_hat[j] += take;
      }
    }
    for (Index h : cluster) erase_handle<S>(st.member[j], h);
  }
  FTRA_REQUIRE(st.r_bar[j_o] == 0, "cluster center left unfinished");
  for (Index h : cluster) {
    st.consumed[h] = 1;
    st.sites[h].alive = false;
  }
}

template <class S>
IntegralSolution ulpr_round(const Instance& inst, const FractionalSolution<S>& completed,
                            const VecX<S>& alpha) {
  RoundingState<S> st = stage1_prune(inst, completed);
  st.alpha = alpha;
  Index rounds = 0;
  while (!st.cbar_empty()) {
    FTRA_REQUIRE(++rounds <= inst.num_clients(), "stage 2 failed to terminate");
    auto [j_o, cluster] = build_cluster(st);
    round_cluster(st, j_o, cluster);
  }
  const auto rep = check_feasible(inst, st.acc);
  FTRA_REQUIRE(rep.ok(), "rounded solution infeasible: " + rep.to_string());
  return st.acc;
}

namespace {

template <class S>
IntegralSolution ulpr_impl(const Instance& inst) {
  const LpModel model = build_primal(inst, false);
  auto res = solve<S>(inst, model);
  FTRA_REQUIRE(res.status == LpStatus::Optimal, "LP solve failed");
  auto completed = make_complete(inst, res.primal);
  return ulpr_round<S>(inst, completed, res.dual.alpha);
}

}  // namespace

IntegralSolution ulpr_solve(const Instance& inst, LpBackend backend) {
  return backend == LpBackend::Exact ? ulpr_impl<Rational>(inst)
                                     : ulpr_impl<double>(inst);
}

template RoundingState<Rational> stage1_prune(const Instance&,
                                              const FractionalSolution<Rational>&);
template RoundingState<double> stage1_prune(const Instance&,
                                            const FractionalSolution<double>&);
template std::pair<Index, std::vector<Index>> build_cluster(RoundingState<Rational>&);
template std::pair<Index, std::vector<Index>> build_cluster(RoundingState<double>&);
template void round_cluster(RoundingState<Rational>&, Index, const std::vector<Index>&);
template void round_cluster(RoundingState<double>&, Index, const std::vector<Index>&);
template IntegralSolution ulpr_round(const Instance&, const FractionalSolution<Rational>&,
                                     const VecX<Rational>&);
template IntegralSolution ulpr_round(const Instance&, const FractionalSolution<double>&,
                                     const VecX<double>&);

}  // namespace ftra

#include "ftra/reduction.hpp"

#include <algorithm>

namespace ftra {
namespace {

template <class S>
bool near(const S& a, const S& b) {
  return !num::is_positive(S(a - b)) && !num::is_positive(S(b - a));
}

}  // namespace

template <class S>
Instance shrink(const Instance& inst, const FractionalSolution<S>& frac) {
  Instance out = inst;
  out.k.reset();
  for (Index i = 0; i < inst.num_sites(); ++i) {
    out.R[i] = num::ceil_int(frac.y[i]);
    FTRA_REQUIRE(out.R[i] <= inst.R[i], "fractional opening above capacity");
  }
  return out;
}

template <class S>
SplitPair split(const Instance& shrunken, const FractionalSolution<S>& frac) {
  const Index nf = shrunken.num_sites(), nc = shrunken.num_clients();
  for (Index j = 0; j < nc; ++j)
    FTRA_REQUIRE(near(S(frac.x.col(j).sum()), num::from_money<S>(shrunken.r[j])),
                 "split needs a complete fractional solution");

  SplitPair sp;
  sp.shrunken = shrunken;
  sp.large_sol.y = MoneyVec::Zero(nf);
  sp.large_sol.x = MoneyMat::Zero(nf, nc);
  sp.R_large = MoneyVec::Zero(nf);
  sp.R_small = MoneyVec::Zero(nf);
  for (Index i = 0; i < nf; ++i) {
    const Money fl = num::floor_int(frac.y[i]);
    sp.large_sol.y[i] = std::max<Money>(0, fl - 1);
    sp.R_large[i] = sp.large_sol.y[i];
    sp.R_small[i] = num::ceil_int(frac.y[i]) - sp.large_sol.y[i];
    FTRA_REQUIRE(sp.R_small[i] >= 0 && sp.R_small[i] <= 2, "R^s outside {0,1,2}");
    FTRA_REQUIRE(sp.R_large[i] + sp.R_small[i] == shrunken.R[i],
                 "split capacities do not recompose");
  }
  for (Index i = 0; i < nf; ++i)
    for (Index j = 0; j < nc; ++j)
      sp.large_sol.x(i, j) =
          std::min(num::floor_int(frac.x(i, j)), sp.large_sol.y[i]);

  sp.r_large = MoneyVec::Zero(nc);
  sp.r_small = MoneyVec::Zero(nc);
  for (Index j = 0; j < nc; ++j) {
    sp.r_large[j] = sp.large_sol.x.col(j).sum();
    sp.r_small[j] = shrunken.r[j] - sp.r_large[j];
    FTRA_REQUIRE(sp.r_small[j] >= 0, "small requirement went negative");
  }

  // the large part is integrally feasible by construction
  for (Index i = 0; i < nf; ++i)
    for (Index j = 0; j < nc; ++j)
      FTRA_REQUIRE(sp.large_sol.x(i, j) <= sp.large_sol.y[i], "large part infeasible");
  const Money cap_l = nf ? sp.R_large.sum() : 0;
  const Money cap_s = nf ? sp.R_small.sum() : 0;
  for (Index j = 0; j < nc; ++j) {
    FTRA_REQUIRE(sp.r_large[j] <= cap_l, "large requirement above capacity");
    FTRA_REQUIRE(sp.r_small[j] <= cap_s, "small requirement above capacity");
  }

  // the fractional residual is feasible for the small part
  FractionalSolution<S> resid;
  resid.y = frac.y;
  resid.x = frac.x;
  for (Index i = 0; i < nf; ++i) {
    resid.y[i] = S(frac.y[i] - num::from_money<S>(sp.large_sol.y[i]));
    for (Index j = 0; j < nc; ++j)
      resid.x(i, j) = S(frac.x(i, j) - num::from_money<S>(sp.large_sol.x(i, j)));
  }
  const auto rep =
      check_feasible_fractional(shrunken, resid, sp.r_small, sp.R_small, 1e-9);
  FTRA_REQUIRE(rep.ok(), "fractional residual infeasible: " + rep.to_string());

  // compact small instance: drop capacity-0 sites and requirement-0 clients
  for (Index i = 0; i < nf; ++i)
    if (sp.R_small[i] >= 1) sp.site_map.push_back(i);
  for (Index j = 0; j < nc; ++j)
    if (sp.r_small[j] >= 1) sp.client_map.push_back(j);
  const Index snf = static_cast<Index>(sp.site_map.size());
  const Index snc = static_cast<Index>(sp.client_map.size());
  sp.small_inst.f.resize(snf);
  sp.small_inst.R.resize(snf);
  sp.small_inst.r.resize(snc);
  sp.small_inst.c.resize(snf, snc);
  for (Index a = 0; a < snf; ++a) {
    sp.small_inst.f[a] = shrunken.f[sp.site_map[a]];
    sp.small_inst.R[a] = sp.R_small[sp.site_map[a]];
  }
  for (Index b = 0; b < snc; ++b) sp.small_inst.r[b] = sp.r_small[sp.client_map[b]];
  for (Index a = 0; a < snf; ++a)
    for (Index b = 0; b < snc; ++b)
      sp.small_inst.c(a, b) = shrunken.c(sp.site_map[a], sp.client_map[b]);
  if (snc > 0) validate(sp.small_inst);
  return sp;
}

std::pair<Instance, std::vector<Index>> expand_to_ftfl(const Instance& inst,
                                                       Money expansion_cap) {
  const Money total = inst.num_sites() ? inst.R.sum() : 0;
  if (total > expansion_cap)
    throw BudgetExceeded("FTFL expansion of " + std::to_string(total) +
                         " facilities exceeds the cap");
  Instance out;
  std::vector<Index> site_map;
  out.f.resize(total);
  out.R = MoneyVec::Ones(total);
  out.r = inst.r;
  out.c.resize(total, inst.num_clients());
  Index next = 0;
  for (Index i = 0; i < inst.num_sites(); ++i)
    for (Money q = 0; q < inst.R[i]; ++q) {
      out.f[next] = inst.f[i];
      out.c.row(next) = inst.c.row(i);
      site_map.push_back(i);
      ++next;
    }
  return {std::move(out), std::move(site_map)};
}

IntegralSolution fold_ftfl_solution(const Instance& orig,
                                    const std::vector<Index>& site_map,
                                    const IntegralSolution& ftfl_sol) {
  IntegralSolution out;
  out.y = MoneyVec::Zero(orig.num_sites());
  out.x = MoneyMat::Zero(orig.num_sites(), orig.num_clients());
  for (std::size_t d = 0; d < site_map.size(); ++d) {
    out.y[site_map[d]] += ftfl_sol.y[static_cast<Index>(d)];
    out.x.row(site_map[d]) += ftfl_sol.x.row(static_cast<Index>(d));
  }
  return out;
}

namespace {

template <class S>
IntegralSolution reduce_impl(const Instance& inst, const SubSolver& subsolver) {
  const LpModel model = build_primal(inst, false);
  auto res = solve<S>(inst, model);
  FTRA_REQUIRE(res.status == LpStatus::Optimal, "LP solve failed");
  auto completed = make_complete(inst, res.primal);
  const Instance shrunken = shrink(inst, completed);
  SplitPair sp = split(shrunken, completed);

  IntegralSolution combined = sp.large_sol;
  if (sp.small_inst.num_clients() > 0 && sp.small_inst.num_sites() > 0) {
    const IntegralSolution small = subsolver(sp.small_inst);
    const auto rep = check_feasible(sp.small_inst, small);
    FTRA_REQUIRE(rep.ok(), "subsolver returned infeasible solution: " + rep.to_string());
    for (Index a = 0; a < sp.small_inst.num_sites(); ++a) {
      combined.y[sp.site_map[a]] += small.y[a];
      for (Index b = 0; b < sp.small_inst.num_clients(); ++b)
        combined.x(sp.site_map[a], sp.client_map[b]) += small.x(a, b);
    }
    FTRA_REQUIRE(cost(inst, combined) ==
                     cost(inst, sp.large_sol) + cost(sp.small_inst, small),
                 "combination cost is not additive");
  }
  const auto rep = check_feasible(inst, combined);
  FTRA_REQUIRE(rep.ok(), "combined solution infeasible: " + rep.to_string());
  return combined;
}

}  // namespace

IntegralSolution reduce_solve(const Instance& inst, const SubSolver& subsolver,
                              LpBackend backend) {
  return backend == LpBackend::Exact ? reduce_impl<Rational>(inst, subsolver)
                                     : reduce_impl<double>(inst, subsolver);
}

template Instance shrink(const Instance&, const FractionalSolution<Rational>&);
template Instance shrink(const Instance&, const FractionalSolution<double>&);
template SplitPair split(const Instance&, const FractionalSolution<Rational>&);
template SplitPair split(const Instance&, const FractionalSolution<double>&);

}  // namespace ftra

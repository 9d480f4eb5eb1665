#include "ftra/primal_dual.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace ftra {
namespace {

// Fixed contribution of the satisfied clients toward site i.
Money settled_contribution(const Instance& inst, const PdState& st, Index i) {
  Money total = 0;
  for (Index j = 0; j < inst.num_clients(); ++j) {
    if (st.in_u[j]) continue;
    const Money mc = max_connection_cost(inst, st.sol, j);
    if (mc > inst.c(i, j)) total += mc - inst.c(i, j);
  }
  return total;
}

// Smallest T >= st.t at which the bids on site i reach lambda*(f_i+theta).
// Bids are piecewise linear in T with integer kinks, so T is an exact
// rational.
std::optional<Rational> event2_time(const PdState& st, const Instance& inst,
                                    const PdConfig& cfg, Index i) {
  const Rational target = cfg.lambda * (Rational(inst.f[i]) + cfg.theta);
  const Money base = settled_contribution(inst, st, i);

  std::vector<Money> pending;  // kinks strictly after the current time
  Rational value(base);
  Money active = 0;     // unsatisfied clients already bidding at time st.t
  Money active_sum = 0; // sum of their connection costs
  for (Index j = 0; j < inst.num_clients(); ++j) {
    if (!st.in_u[j]) continue;
    if (Rational(inst.c(i, j)) <= st.t) {
      ++active;
      active_sum += inst.c(i, j);
    } else {
      pending.push_back(inst.c(i, j));
    }
  }
  value += Rational(active) * st.t - Rational(active_sum);
  if (value >= target) return st.t;  // fires immediately (repeat at the same clock)
  std::sort(pending.begin(), pending.end());

  Rational point = st.t;
  std::size_t idx = 0;
  while (true) {
    const Rational next_kink = idx < pending.size()
                                   ? Rational(pending[idx])
                                   : Rational(0);
    if (active > 0) {
      const Rational hit = point + (target - value) / Rational(active);
      if (idx >= pending.size() || hit <= next_kink) return hit;
    }
    if (idx >= pending.size()) return std::nullopt;  // no bidder ever activates
    value += Rational(active) * (next_kink - point);
    point = next_kink;
    while (idx < pending.size() && Rational(pending[idx]) == point) {
      ++active;
      ++idx;
    }
    if (value >= target) return point;
  }
}

struct Engine {
  const Instance& inst;
  const PdConfig& cfg;
  PdState st;
  PdTrace trace;

  explicit Engine(const Instance& inst_, const PdConfig& cfg_)
      : inst(inst_), cfg(cfg_), st(pd_init(inst_)) {
    trace.alpha.resize(inst.num_clients());
    for (Index j = 0; j < inst.num_clients(); ++j)
      trace.alpha[j].reserve(static_cast<std::size_t>(inst.r[j]));
    trace.xhat = MoneyMat::Zero(inst.num_sites(), inst.num_clients());
    trace.lport = MoneyMat::Zero(inst.num_sites(), inst.num_clients());
  }

  // Connect `units` ports of client j to site i at the current time.
  void connect(Index i, Index j, Money units) {
    st.sol.x(i, j) += units;
    st.fc[j] += units;
    FTRA_REQUIRE(st.sol.x(i, j) <= st.sol.y[i] && st.fc[j] <= inst.r[j],
                 "connection overflow");
    for (Money q = 0; q < units; ++q) trace.alpha[j].push_back(st.t);
    trace.lport(i, j) = st.fc[j];
    if (st.fc[j] == inst.r[j]) {
      st.in_u[j] = 0;
      --st.u_size;
      trace.xhat.col(j) = st.sol.x.col(j);
    }
  }

  void apply_event1(const NextEvent& ev, bool batch) {
    const Index i = ev.site, j = ev.client;
    const Money toc =
        batch ? std::min(st.sol.y[i] - st.sol.x(i, j), inst.r[j] - st.fc[j]) : 1;
    FTRA_REQUIRE(toc >= 1, "event 1 with nothing to connect");
    connect(i, j, toc);
    ++trace.event1_count;
    trace.events.push_back({st.t, 1, i, j, toc, {}, {}});
  }

  void apply_event2(const NextEvent& ev, bool batch) {
    const Index i = ev.site;
    PdEventRecord rec{st.t, 2, i, -1, 0, {}, {}};

    std::vector<Index> bidders;   // U_i
    std::vector<Index> switchers; // S_i
    std::vector<Index> sources;   // i*_j per switcher
    Money nc = std::numeric_limits<Money>::max();
    Money ns = std::numeric_limits<Money>::max();
    for (Index j = 0; j < inst.num_clients(); ++j) {
      if (st.in_u[j]) {
        if (Rational(inst.c(i, j)) <= st.t) {
          bidders.push_back(j);
          nc = std::min(nc, inst.r[j] - st.fc[j]);
        }
      } else {
        const Money mc = max_connection_cost(inst, st.sol, j);
        if (mc > inst.c(i, j)) {
          switchers.push_back(j);
          const Index src = max_connection_site(inst, st.sol, j);
          sources.push_back(src);
          ns = std::min(ns, st.sol.x(src, j));
        }
      }
    }
    const Money toc = batch ? std::min({nc, ns, inst.R[i] - st.sol.y[i]})
                            : Money{1};
    FTRA_REQUIRE(toc >= 1 && toc <= inst.R[i] - st.sol.y[i],
                 "event 2 opened nothing");

    st.sol.y[i] += toc;
    for (std::size_t s = 0; s < switchers.size(); ++s) {
      const Index j = switchers[s], src = sources[s];
      st.sol.x(src, j) -= toc;
      st.sol.x(i, j) += toc;
      FTRA_REQUIRE(st.sol.x(src, j) >= 0 && st.sol.x(i, j) <= st.sol.y[i],
                   "switch overflow");
      rec.switched.emplace_back(j, src);
    }
    for (Index j : bidders) {
      connect(i, j, toc);
      rec.connected.push_back(j);
    }
    rec.toc = toc;
    ++trace.event2_count;
    trace.events.push_back(std::move(rec));
  }

  PdResult run(bool batch) {
    // switching only ever lowers a satisfied client's worst connection
    MoneyVec worst_seen = MoneyVec::Constant(inst.num_clients(), -1);
    long guard = 0;
    while (st.u_size > 0) {
      FTRA_REQUIRE(++guard <= 4'000'000, "event loop failed to terminate");
      const auto ev = next_event(st, inst, cfg);
      FTRA_REQUIRE(ev.has_value(), "no event available with unsatisfied clients");
      FTRA_REQUIRE(ev->t >= st.t, "clock moved backwards");
      st.t = ev->t;
      if (ev->type == 2)
        apply_event2(*ev, batch);
      else
        apply_event1(*ev, batch);
      for (Index j = 0; j < inst.num_clients(); ++j) {
        if (st.in_u[j]) continue;
        const Money mc = max_connection_cost(inst, st.sol, j);
        FTRA_REQUIRE(worst_seen[j] < 0 || mc <= worst_seen[j],
                     "a switch increased a client's worst connection");
        worst_seen[j] = mc;
      }
    }
    trace.complete = true;

    // every port was paid for: run cost under modified facility costs
    // equals the sum of all port duals
    Rational dual_sum{0};
    for (const auto& ports : trace.alpha)
      for (const Rational& a : ports) dual_sum += a;
    FTRA_REQUIRE(dual_sum == modified_cost(inst, st.sol, cfg),
                 "port duals do not pay for the solution");
    const auto rep = check_feasible(inst, st.sol);
    FTRA_REQUIRE(rep.ok(), "primal-dual produced infeasible solution: " + rep.to_string());
    return {std::move(st.sol), std::move(trace)};
  }
};

}  // namespace

PdState pd_init(const Instance& inst) {
  PdState st;
  st.sol.y = MoneyVec::Zero(inst.num_sites());
  st.sol.x = MoneyMat::Zero(inst.num_sites(), inst.num_clients());
  st.fc = MoneyVec::Zero(inst.num_clients());
  st.in_u.assign(inst.num_clients(), 1);
  st.u_size = inst.num_clients();
  return st;
}

std::optional<NextEvent> next_event(const PdState& st, const Instance& inst,
                                    const PdConfig& cfg) {
  std::optional<NextEvent> best;
  auto better = [&](const NextEvent& a, const NextEvent& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.type != b.type) return a.type > b.type;  // 2 first
    if (a.site != b.site) return a.site < b.site;
    return a.client < b.client;
  };
  auto offer = [&](NextEvent cand) {
    if (!best || better(cand, *best)) best = cand;
  };
  for (Index i = 0; i < inst.num_sites(); ++i) {
    if (st.sol.y[i] >= inst.R[i]) continue;
    if (auto t2 = event2_time(st, inst, cfg, i)) offer({*t2, 2, i, -1});
  }
  for (Index i = 0; i < inst.num_sites(); ++i)
    for (Index j = 0; j < inst.num_clients(); ++j) {
      if (!st.in_u[j] || st.sol.x(i, j) >= st.sol.y[i]) continue;
      if (Rational(inst.c(i, j)) < st.t) continue;
      offer({Rational(inst.c(i, j)), 1, i, j});
    }
  return best;
}

PdResult pd_solve(const Instance& inst, const PdConfig& cfg) {
  return Engine(inst, cfg).run(/*batch=*/false);
}

PdResult apd_solve(const Instance& inst, const PdConfig& cfg) {
  auto res = Engine(inst, cfg).run(/*batch=*/true);
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  FTRA_REQUIRE(res.trace.event1_count <= nf * nc, "event-1 count bound violated");
  FTRA_REQUIRE(res.trace.event2_count <= nc + nf + nc * nf,
               "event-2 count bound violated");
  return res;
}

Rational modified_cost(const Instance& inst, const IntegralSolution& sol,
                       const PdConfig& cfg) {
  Rational total{0};
  for (Index i = 0; i < inst.num_sites(); ++i)
    total += cfg.lambda * (Rational(inst.f[i]) + cfg.theta) * Rational(sol.y[i]);
  for (Index i = 0; i < inst.num_sites(); ++i)
    total += Rational(inst.c.row(i).dot(sol.x.row(i)));
  return total;
}

DualSolution<Rational> build_dual_certificate(const Instance& inst, const PdTrace& trace,
                                              const Rational& rho_c) {
  if (!trace.complete) throw std::invalid_argument("trace is incomplete");
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  DualSolution<Rational> dual;
  dual.alpha = VecX<Rational>::Zero(nc);
  dual.beta = MatX<Rational>::Zero(nf, nc);
  dual.z = VecX<Rational>::Zero(nf);
  for (Index j = 0; j < nc; ++j) {
    FTRA_REQUIRE(static_cast<Money>(trace.alpha[j].size()) == inst.r[j],
                 "trace is missing ports");
    dual.alpha[j] = trace.alpha[j].back();
  }
  for (Index i = 0; i < nf; ++i) {
    Rational z{0};
    for (Index j = 0; j < nc; ++j) {
      if (trace.xhat(i, j) != inst.R[i]) continue;  // marginal price only at capacity
      const Money l = trace.lport(i, j);
      FTRA_REQUIRE(l >= 1, "snapshot at capacity without a recorded port");
      const Rational& alpha_l = trace.alpha[j][static_cast<std::size_t>(l - 1)];
      z += Rational(trace.xhat(i, j)) * (dual.alpha[j] - alpha_l) / Rational(inst.R[i]);
    }
    dual.z[i] = z;
  }
  for (Index i = 0; i < nf; ++i)
    for (Index j = 0; j < nc; ++j) {
      const Rational candidate = dual.alpha[j] - rho_c * Rational(inst.c(i, j));
      if (candidate > 0) dual.beta(i, j) = candidate;
    }
  return dual;
}

}  // namespace ftra

// Primal-dual solvers driven by a global clock over exact rational time.
//
// While a client is unsatisfied it bids max(0, t - c_ij) toward every site;
// satisfied clients bid the saving against their most expensive connection.
// Event 1 connects an unsatisfied client to an already-open facility when
// the clock reaches the connection cost; Event 2 opens a facility once the
// bids cover its (possibly offset and scaled) opening cost, connecting
// bidders and switching the most expensive connections of satisfied ones.
//
// pd_solve applies one unit per action (the reference); apd_solve batches
// repeated events with the same outcome. Both record per-port duals, the
// connection snapshot taken when a client becomes fully connected, and the
// last pre-snapshot port per (site, client), from which the dual
// certificate is assembled.
#pragma once

#include <optional>
#include <vector>

#include "ftra/instance.hpp"

namespace ftra {

struct PdConfig {
  Rational theta{0};   // facility-cost offset
  Rational lambda{1};  // facility-cost scale; the run prices a unit at lambda*(f_i+theta)
};

struct PdEventRecord {
  Rational t;
  int type = 0;       // 1 or 2
  Index site = -1;
  Index client = -1;  // type-1 target
  Money toc = 0;      // units connected (type 1) or opened (type 2)
  // type 2: satisfied clients that moved connections, with the site each
  // moved away from
  std::vector<std::pair<Index, Index>> switched;
  std::vector<Index> connected;  // type 2: unsatisfied clients that connected
};

struct PdTrace {
  std::vector<std::vector<Rational>> alpha;  // [client][port], nondecreasing per client
  MoneyMat xhat;                             // x at the moment the client left U
  MoneyMat lport;                            // last port of j connecting to i pre-snapshot (1-based, 0 = none)
  std::vector<PdEventRecord> events;
  long event1_count = 0;
  long event2_count = 0;
  bool complete = false;
};

struct PdState {
  Rational t{0};
  IntegralSolution sol;
  MoneyVec fc;            // established connections per client
  std::vector<char> in_u;
  Index u_size = 0;
};

struct PdResult {
  IntegralSolution sol;
  PdTrace trace;
};

struct NextEvent {
  Rational t;
  int type;
  Index site;
  Index client;  // -1 for type 2
};

PdState pd_init(const Instance& inst);

// Earliest pending event at or after state.t. Ties resolve type 2 first,
// then ascending site, then ascending client. Empty only when U is empty.
std::optional<NextEvent> next_event(const PdState& state, const Instance& inst,
                                    const PdConfig& cfg);

PdResult pd_solve(const Instance& inst, const PdConfig& cfg = {});
PdResult apd_solve(const Instance& inst, const PdConfig& cfg = {});

// Objective under the run's modified facility costs lambda*(f_i+theta);
// equals the sum of all port duals of a completed run.
Rational modified_cost(const Instance& inst, const IntegralSolution& sol,
                       const PdConfig& cfg);

// alpha_j = last port dual; pi_ij = xhat_ij*(alpha_j - alpha_j^{l_ij})/R_i
// where xhat_ij = R_i, else 0; z_i = sum_j pi_ij; beta_ij =
// max(0, alpha_j - rho_c*c_ij). Not LP-feasible in general; it backs the
// cost bound sum_j r_j alpha_j - sum_i R_i z_i >= cost(x, y).
DualSolution<Rational> build_dual_certificate(const Instance& inst, const PdTrace& trace,
                                              const Rational& rho_c);

}  // namespace ftra

// Greedy augmentation over whole sites.
//
// Opening one more facility at site i lets every client re-route its most
// expensive connection there when that saves money, so
// gain(i) = sum_j max(0, maxconn_j - c_ij) - f_i. The loop opens batches of
// facilities at the best gain/f site; a batch ends when a client would
// exhaust the connections at its most expensive site (the gains change) or
// the site fills up. Combined with facility-cost scaling ahead of the
// primal-dual solver this is the 1.52 pipeline for uniform requirements.
#pragma once

#include "ftra/instance.hpp"
#include "ftra/primal_dual.hpp"

namespace ftra {

struct GainState {
  IntegralSolution sol;
  MoneyVec ybar;   // residual capacity R - y
  Money cc = 0;    // current total connection cost
  MoneyVec gain;
};

// Greedy-nearest x for the solution's y; never increases the cost.
IntegralSolution optimize_connections(const Instance& inst, const IntegralSolution& sol);

// gain_i as above for sites with residual capacity, 0 otherwise.
MoneyVec calculate_gain(const Instance& inst, const GainState& state);

IntegralSolution aga(const Instance& inst, const IntegralSolution& sol);

struct PipelineConfig {
  Rational delta{1504, 1000};  // facility-cost scale fed to the primal-dual run
};

// APD on delta-scaled facility costs, evaluated and augmented under the
// original costs. The 1.52 ratio is certified for uniform requirements;
// the pipeline itself runs on any instance. `apd_stage` receives the
// intermediate solution the augmentation started from.
IntegralSolution scaled_152_pipeline(const Instance& inst,
                                     const PipelineConfig& cfg = {},
                                     IntegralSolution* apd_stage = nullptr);

}  // namespace ftra

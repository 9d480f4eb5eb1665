// The k-bounded variant for uniform requirements.
//
// A Lagrangian offset theta raised on every facility cost sweeps the number
// of facilities the primal-dual solver opens. Binary search over theta with
// APD(theta, 2) either hits exactly k or brackets it between two solutions
// that are at most epsilon = c_min / (8 N^2) apart in theta. Greedy pairing
// matches the small solution's facilities into the large one (same site
// first, then closest sites), and randomized rounding opens exactly k
// facilities: the small side with probability (k_l - k)/(k_l - k_s), the
// paired set otherwise, plus a uniform subset of the unpaired facilities.
#pragma once

#include <cstdint>
#include <vector>

#include "ftra/instance.hpp"

namespace ftra {

struct ProbeRecord {
  Rational theta;
  Money open_count;
};

struct BsOutcome {
  bool exact = false;
  IntegralSolution exact_sol;  // valid when exact
  Rational exact_theta{0};

  Rational theta1{0}, theta2{0};     // bracket endpoints, theta2 - theta1 <= epsilon
  IntegralSolution large, small;     // APD at theta1 / theta2
  Money k_large = 0, k_small = 0;    // k_small < k < k_large
  Rational epsilon{0};
  std::vector<ProbeRecord> probes;
  int non_monotone = 0;  // probe pairs where a larger theta opened more
};

// c_min / (8 N^2) with c_min the smallest positive connection cost and
// N = sum_i R_i; 1 when every connection is free.
Rational bs_epsilon(const Instance& inst);

// Requires max r_j <= k <= sum R_i. Returns an exact outcome when a probe
// opens exactly k facilities or the unmodified run already opens at most k;
// otherwise a bracket. Throws on a bracket violation.
BsOutcome binary_search(const Instance& inst, Money k);

struct Pairing {
  MoneyVec paired;    // y_p: facilities of y_l matched against y_s
  MoneyVec unpaired;  // y_l - y_p
};

Pairing greedy_pairing(const Instance& inst, const MoneyVec& y_small,
                       const MoneyVec& y_large);

// Per-seed record of the randomness, for distribution tests.
struct RrDraw {
  bool small_branch = false;
  std::vector<Index> unit_site;  // unpaired units in (site, unit) order
  std::vector<char> unit_taken;  // aligned with unit_site
};

// Exactly k facilities on every seed; connections are greedy-nearest.
// The draw order is fixed: branch first, then the subset, so runs are
// bit-reproducible per seed.
IntegralSolution randomized_round(const Instance& inst, Money k, const BsOutcome& bs,
                                  const Pairing& pairing, std::uint64_t seed,
                                  RrDraw* draw = nullptr);

IntegralSolution pk_solve(const Instance& inst, Money k, std::uint64_t seed);

}  // namespace ftra

// Exact reference solvers for tiny instances.
//
// Key fact: for a fixed opening vector y, each client's cheapest assignment
// is to take units from sites in ascending connection cost, so only y needs
// enumeration (an exchange argument: swapping any unit of a pricier site for
// an unused unit of a cheaper one never increases cost). That keeps the
// search space at prod_i (R_i + 1) nodes.
#pragma once

#include <cstdint>
#include <optional>

#include "ftra/instance.hpp"

namespace ftra {

struct OracleResult {
  IntegralSolution sol;
  Money cost = 0;
  std::uint64_t nodes = 0;
};

// Cost-minimal x for the given y; nullopt when total capacity cannot meet
// some requirement. Ties in c_ij break toward the lower site index.
std::optional<MoneyMat> optimal_connections(const Instance& inst, const MoneyVec& y);

// Depth-first enumeration of y in [0..R_i]^n_f with facility-cost and
// capacity pruning. Throws BudgetExceeded past `budget` visited nodes.
OracleResult exact_ilp(const Instance& inst, bool enforce_k = false,
                       std::uint64_t budget = 10'000'000);

}  // namespace ftra

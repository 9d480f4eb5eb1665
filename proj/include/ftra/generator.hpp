// Euclidean test-instance generator. Sites and clients land on an integer
// grid; connection costs are rounded Euclidean distances, so instances are
// metric up to a rounding slack of 2 units.
#pragma once

#include <cstdint>
#include <optional>

#include "ftra/instance.hpp"

namespace ftra {

struct GenConfig {
  Index n_f = 4;
  Index n_c = 4;
  Money r_max = 3;
  Money R_max = 3;
  Money f_min = 1;
  Money f_max = 100;
  Money grid = 100;
  bool uniform_r = false;           // one shared requirement for all clients
  std::optional<Money> k;           // embed a global bound when set
};

// Deterministic per seed: identical config + seed give identical instances.
Instance generate_euclidean(const GenConfig& cfg, std::uint64_t seed);

}  // namespace ftra

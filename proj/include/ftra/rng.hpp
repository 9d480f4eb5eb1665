// Seedable, bit-portable randomness. mt19937_64 output is fully specified
// by the standard; bounded draws use rejection sampling instead of
// std::uniform_int_distribution, whose mapping is implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ftra/types.hpp"

namespace ftra {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [lo, hi], inclusive.
  Money uniform_int(Money lo, Money hi) {
    FTRA_REQUIRE(lo <= hi, "empty range");
    const std::uint64_t bound = static_cast<std::uint64_t>(hi - lo) + 1;
    if (bound == 0) return static_cast<Money>(next_u64());  // full 64-bit range
    const std::uint64_t min_accept = (0 - bound) % bound;
    std::uint64_t v = next_u64();
    while (v < min_accept) v = next_u64();
    return lo + static_cast<Money>(v % bound);
  }

  // Deterministic Fisher-Yates prefix: the first `take` entries of `items`
  // become a uniform sample without replacement.
  template <class T>
  void sample_prefix(std::vector<T>& items, std::size_t take) {
    FTRA_REQUIRE(take <= items.size(), "sample larger than population");
    for (std::size_t idx = 0; idx < take; ++idx) {
      const std::size_t pick = idx + static_cast<std::size_t>(uniform_int(
                                         0, static_cast<Money>(items.size() - 1 - idx)));
      std::swap(items[idx], items[pick]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ftra

#include "ftra/generator.hpp"

#include <vector>

#include "ftra/rng.hpp"

namespace ftra {
namespace {

// round(sqrt(n)) in pure integer arithmetic, so costs are identical across
// platforms and compilers.
Money rounded_isqrt(Money n) {
  if (n <= 0) return 0;
  Money s = static_cast<Money>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  // s = floor(sqrt(n)); round up when the fractional part is >= 1/2,
  // i.e. when 4n >= (2s+1)^2.
  return 4 * n >= (2 * s + 1) * (2 * s + 1) ? s + 1 : s;
}

struct Point {
  Money x, y;
};

}  // namespace

Instance generate_euclidean(const GenConfig& cfg, std::uint64_t seed) {
  if (cfg.n_f < 1 || cfg.n_c < 0 || cfg.r_max < 1 || cfg.R_max < 1 ||
      cfg.grid < 1 || cfg.f_min < 0 || cfg.f_max < cfg.f_min)
    throw std::invalid_argument("generator parameters must be positive");
  if (cfg.r_max > cfg.n_f * cfg.R_max)
    throw std::invalid_argument("infeasible parameters: r_max > n_f * R_max");

  Rng rng(seed);
  std::vector<Point> sites(cfg.n_f), clients(cfg.n_c);
  for (auto& p : sites) p = {rng.uniform_int(0, cfg.grid), rng.uniform_int(0, cfg.grid)};
  for (auto& p : clients) p = {rng.uniform_int(0, cfg.grid), rng.uniform_int(0, cfg.grid)};

  Instance inst;
  inst.f.resize(cfg.n_f);
  inst.R.resize(cfg.n_f);
  inst.r.resize(cfg.n_c);
  inst.c.resize(cfg.n_f, cfg.n_c);
  for (Index i = 0; i < cfg.n_f; ++i) inst.f[i] = rng.uniform_int(cfg.f_min, cfg.f_max);
  for (Index i = 0; i < cfg.n_f; ++i) inst.R[i] = rng.uniform_int(1, cfg.R_max);

  const Money cap = inst.R.sum();
  const Money r_hi = std::min(cfg.r_max, cap);
  if (cfg.uniform_r) {
    const Money r = cfg.n_c > 0 ? rng.uniform_int(1, r_hi) : 0;
    inst.r.setConstant(r);
  } else {
    for (Index j = 0; j < cfg.n_c; ++j) inst.r[j] = rng.uniform_int(1, r_hi);
  }

  for (Index i = 0; i < cfg.n_f; ++i)
    for (Index j = 0; j < cfg.n_c; ++j) {
      const Money dx = sites[i].x - clients[j].x;
      const Money dy = sites[i].y - clients[j].y;
      inst.c(i, j) = rounded_isqrt(dx * dx + dy * dy);
    }

  if (cfg.k) {
    if (*cfg.k < inst.max_requirement() || *cfg.k > cap)
      throw std::invalid_argument("requested k outside [max r_j, sum R_i]");
    inst.k = cfg.k;
  }
  validate(inst);
  return inst;
}

}  // namespace ftra

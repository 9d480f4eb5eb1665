#include "ftra/kftra.hpp"

#include <algorithm>
#include <numeric>

#include "ftra/oracle.hpp"
#include "ftra/primal_dual.hpp"
#include "ftra/rng.hpp"

namespace ftra {

Rational bs_epsilon(const Instance& inst) {
  Money c_min = 0;
  for (Index i = 0; i < inst.num_sites(); ++i)
    for (Index j = 0; j < inst.num_clients(); ++j)
      if (inst.c(i, j) > 0 && (c_min == 0 || inst.c(i, j) < c_min))
        c_min = inst.c(i, j);
  if (c_min == 0) return Rational(1);  // all connections free: any width works
  const Money n = inst.capacity_total();
  return Rational(c_min) / (Rational(8) * Rational(n) * Rational(n));
}

namespace {

struct Probe {
  IntegralSolution sol;
  Money count;
};

Probe run_apd(const Instance& inst, const Rational& theta) {
  PdConfig cfg;
  cfg.theta = theta;
  cfg.lambda = Rational(2);
  auto res = apd_solve(inst, cfg);
  const Money count = res.sol.y.size() ? res.sol.y.sum() : 0;
  return {std::move(res.sol), count};
}

}  // namespace

BsOutcome binary_search(const Instance& inst, Money k) {
  if (k < inst.max_requirement() || k > inst.capacity_total())
    throw std::invalid_argument("k outside [max r_j, sum R_i]");

  BsOutcome out;
  out.epsilon = bs_epsilon(inst);
  auto probe = [&](const Rational& theta) {
    Probe p = run_apd(inst, theta);
    out.probes.push_back({theta, p.count});
    return p;
  };

  Probe p0 = probe(Rational(0));
  if (p0.count <= k) {
    // at most k open already; sum y <= k is feasible as stated, no bracket needed
    out.exact = true;
    out.exact_sol = std::move(p0.sol);
    out.exact_theta = 0;
    return out;
  }

  const Money c_max = inst.num_clients() > 0 ? inst.c.maxCoeff() : 0;
  const Rational theta_max = Rational(inst.num_clients() * c_max) / 2;
  Probe pmax = probe(theta_max);
  if (pmax.count == k) {
    out.exact = true;
    out.exact_sol = std::move(pmax.sol);
    out.exact_theta = theta_max;
    return out;
  }
  if (pmax.count > k)
    throw std::runtime_error("bracket violation: the top offset still opens " +
                             std::to_string(pmax.count) + " > k facilities");

  Rational lo(0), hi(theta_max);  // open count > k at lo, < k at hi
  int guard = 0;
  while (hi - lo > out.epsilon) {
    FTRA_REQUIRE(++guard <= 200, "binary search failed to converge");
    const Rational mid = (lo + hi) / 2;
    Probe pm = probe(mid);
    if (pm.count == k) {
      out.exact = true;
      out.exact_sol = std::move(pm.sol);
      out.exact_theta = mid;
      return out;
    }
    (pm.count > k ? lo : hi) = mid;
  }

  Probe pl = run_apd(inst, lo);
  Probe ps = run_apd(inst, hi);
  FTRA_REQUIRE(pl.count > k && ps.count < k, "bracket endpoints drifted");
  out.theta1 = lo;
  out.theta2 = hi;
  out.large = std::move(pl.sol);
  out.small = std::move(ps.sol);
  out.k_large = pl.count;
  out.k_small = ps.count;

  // informational: count probe pairs where more offset opened more
  std::vector<ProbeRecord> sorted = out.probes;
  std::sort(sorted.begin(), sorted.end(),
            [](const ProbeRecord& a, const ProbeRecord& b) { return a.theta < b.theta; });
  for (std::size_t s = 1; s < sorted.size(); ++s)
    if (sorted[s].theta > sorted[s - 1].theta &&
        sorted[s].open_count > sorted[s - 1].open_count)
      ++out.non_monotone;
  return out;
}

Pairing greedy_pairing(const Instance& inst, const MoneyVec& y_small,
                       const MoneyVec& y_large) {
  const Index nf = inst.num_sites();
  FTRA_REQUIRE(y_small.size() == nf && y_large.size() == nf, "vector size mismatch");
  const Money total_s = nf ? y_small.sum() : 0;
  const Money total_l = nf ? y_large.sum() : 0;
  if (total_s >= total_l)
    throw std::invalid_argument("pairing needs sum y_small < sum y_large");

  Pairing pr;
  pr.paired = MoneyVec::Zero(nf);
  MoneyVec rem_s = y_small, rem_l = y_large;
  for (Index i = 0; i < nf; ++i) {
    const Money m = std::min(y_small[i], y_large[i]);
    pr.paired[i] = m;
    rem_s[i] -= m;
    rem_l[i] -= m;
  }
  for (Index i = 0; i < nf; ++i) {
    if (rem_s[i] <= 0) continue;
    std::vector<Index> order;
    for (Index i2 = 0; i2 < nf; ++i2)
      if (i2 != i) order.push_back(i2);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return site_distance(inst, i, a) < site_distance(inst, i, b);
    });
    for (Index i2 : order) {
      if (rem_s[i] <= 0) break;
      if (rem_l[i2] <= 0) continue;
      const Money m = std::min(rem_s[i], rem_l[i2]);
      pr.paired[i2] += m;
      rem_s[i] -= m;
      rem_l[i2] -= m;
    }
    FTRA_REQUIRE(rem_s[i] == 0, "unpaired small facilities remain");
  }
  pr.unpaired = y_large - pr.paired;
  FTRA_REQUIRE(pr.paired.sum() == total_s, "pairing lost facilities");
  FTRA_REQUIRE((pr.unpaired.array() >= 0).all(), "negative unpaired count");
  return pr;
}

IntegralSolution randomized_round(const Instance& inst, Money k, const BsOutcome& bs,
                                  const Pairing& pairing, std::uint64_t seed,
                                  RrDraw* draw) {
  FTRA_REQUIRE(!bs.exact, "randomized rounding needs a bracket");
  FTRA_REQUIRE(bs.k_small < k && k <= bs.k_large, "k outside the bracket");
  FTRA_REQUIRE(pairing.paired.sum() == bs.k_small, "pairing disagrees with bracket");

  Rng rng(seed);
  const Money span = bs.k_large - bs.k_small;
  // P(small branch) = (k_large - k)/span, exactly, via a bounded draw
  const bool small_branch = rng.uniform_int(0, span - 1) < bs.k_large - k;
  MoneyVec y = small_branch ? bs.small.y : pairing.paired;

  std::vector<Index> unit_site;
  for (Index i = 0; i < inst.num_sites(); ++i)
    for (Money q = 0; q < pairing.unpaired[i]; ++q) unit_site.push_back(i);
  FTRA_REQUIRE(static_cast<Money>(unit_site.size()) == span, "unpaired pool size");

  std::vector<std::size_t> positions(unit_site.size());
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  rng.sample_prefix(positions, static_cast<std::size_t>(k - bs.k_small));
  std::vector<char> taken(unit_site.size(), 0);
  for (std::size_t s = 0; s < static_cast<std::size_t>(k - bs.k_small); ++s) {
    taken[positions[s]] = 1;
    y[unit_site[positions[s]]] += 1;
  }
  FTRA_REQUIRE(y.sum() == k, "rounding missed k");

  auto x = optimal_connections(inst, y);
  FTRA_REQUIRE(x.has_value(), "k facilities cannot serve the requirements");
  IntegralSolution sol{std::move(y), std::move(*x)};
  if (draw) *draw = {small_branch, std::move(unit_site), std::move(taken)};
  return sol;
}

IntegralSolution pk_solve(const Instance& inst, Money k, std::uint64_t seed) {
  BsOutcome bs = binary_search(inst, k);
  if (bs.exact) return bs.exact_sol;
  const Pairing pairing = greedy_pairing(inst, bs.small.y, bs.large.y);
  return randomized_round(inst, k, bs, pairing, seed);
}

}  // namespace ftra

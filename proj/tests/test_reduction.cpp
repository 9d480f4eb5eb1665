#include <doctest.h>

#include "ftra/oracle.hpp"
#include "ftra/reduction.hpp"
#include "ftra/ulpr.hpp"
#include "test_util.hpp"

using namespace ftra;
using namespace ftra::test;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

FractionalSolution<Rational> solved_complete(const Instance& inst) {
  auto res = solve<Rational>(inst, build_primal(inst));
  REQUIRE(res.status == LpStatus::Optimal);
  return make_complete(inst, res.primal);
}

}  // namespace

TEST_CASE("shrink keeps saturated capacities and ceils the rest") {
  const Instance tight = forced_single_site();
  auto frac = solved_complete(tight);
  CHECK(shrink(tight, frac).R[0] == 3);

  const Instance wide = make_instance(vec({1, 1}), mat({{1, 1}, {1, 1}}),
                                      vec({1, 1}), vec({5, 5}));
  FractionalSolution<Rational> synth;
  synth.y.resize(2);
  synth.y << rat(6, 5), rat(4, 5);
  synth.x = MatX<Rational>::Zero(2, 2);
  const Instance shrunk = shrink(wide, synth);
  CHECK(shrunk.R[0] == 2);
  CHECK(shrunk.R[1] == 1);
}

TEST_CASE("shrinking preserves the LP optimum exactly") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = random_instance(seed, 6);
    auto res = solve<Rational>(inst, build_primal(inst));
    const Instance shrunk = shrink(inst, res.primal);
    auto res2 = solve<Rational>(shrunk, build_primal(shrunk));
    CHECK(res.objective == res2.objective);
  }
}

TEST_CASE("split arithmetic on hand values") {
  // y* integral <= 1 everywhere: the large part vanishes
  const Instance small = make_instance(vec({3, 3}), mat({{1, 2}, {2, 1}}),
                                       vec({1, 1}), vec({3, 3}));
  auto frac = solved_complete(small);
  const Instance shrunk = shrink(small, frac);
  const SplitPair sp = split(shrunk, frac);
  CHECK(sp.large_sol.y.isZero());
  CHECK(sp.r_large.isZero());
  CHECK(sp.r_small == small.r);

  // y* = 17/5: floor-1 = 2 goes large, ceil - large = 2 stays small
  const Instance padded = make_instance(vec({1, 1}), mat({{1}, {1}}), vec({4}),
                                        vec({5, 5}));
  FractionalSolution<Rational> pf;
  pf.y.resize(2);
  pf.y << rat(17, 5), rat(3, 5);
  pf.x.resize(2, 1);
  pf.x << rat(17, 5), rat(3, 5);
  const Instance pshrunk = shrink(padded, pf);
  CHECK(pshrunk.R[0] == 4);
  CHECK(pshrunk.R[1] == 1);
  const SplitPair sp2 = split(pshrunk, pf);
  CHECK(sp2.large_sol.y[0] == 2);
  CHECK(sp2.R_small[0] == 2);
  CHECK(sp2.R_small[1] == 1);
  CHECK(sp2.r_large[0] == 2);
  CHECK(sp2.r_small[0] == 2);
}

TEST_CASE("split invariants hold across a corpus") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const Instance inst = random_instance(seed, 6);
    auto frac = solved_complete(inst);
    const Instance shrunk = shrink(inst, frac);
    const SplitPair sp = split(shrunk, frac);  // asserts internally
    for (Index i = 0; i < inst.num_sites(); ++i) {
      CHECK(sp.R_small[i] >= 0);
      CHECK(sp.R_small[i] <= 2);
      CHECK(sp.R_large[i] + sp.R_small[i] == shrunk.R[i]);
    }
    for (Index j = 0; j < inst.num_clients(); ++j)
      CHECK(sp.r_large[j] + sp.r_small[j] == inst.r[j]);
  }
}

TEST_CASE("ftfl expansion duplicates sites and folds back") {
  const Instance inst = make_instance(vec({4, 9}), mat({{1, 2}, {2, 1}}),
                                      vec({2, 1}), vec({2, 1}));
  auto [ftfl, site_map] = expand_to_ftfl(inst);
  CHECK(ftfl.num_sites() == 3);
  CHECK((ftfl.R.array() == 1).all());

  const auto res = exact_ilp(ftfl);
  const auto folded = fold_ftfl_solution(inst, site_map, res.sol);
  CHECK(check_feasible(inst, folded).ok());
  CHECK(cost(inst, folded) == res.cost);
  CHECK(exact_ilp(inst).cost == res.cost);
}

TEST_CASE("expansion respects its cap") {
  const Instance inst = forced_single_site();
  CHECK_THROWS_AS(expand_to_ftfl(inst, 2), BudgetExceeded);
}

TEST_CASE("oracle costs agree between small instances and their expansions") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const Instance inst = random_instance(seed, 4, 2, 2);
    auto frac = solved_complete(inst);
    const SplitPair sp = split(shrink(inst, frac), frac);
    if (sp.small_inst.num_clients() == 0 || sp.small_inst.num_sites() == 0) continue;
    auto [ftfl, site_map] = expand_to_ftfl(sp.small_inst);
    CHECK(exact_ilp(sp.small_inst).cost == exact_ilp(ftfl).cost);
  }
}

TEST_CASE("reduce with the oracle subsolver stays additive and sane") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const Instance inst = random_instance(seed, 4);
    auto oracle_sub = [](const Instance& small) { return exact_ilp(small).sol; };
    const auto combined = reduce_solve(inst, oracle_sub);
    CHECK(check_feasible(inst, combined).ok());
    CHECK(cost(inst, combined) >= exact_ilp(inst).cost);
    auto lp = solve<Rational>(inst, build_primal(inst));
    CHECK(Rational(cost(inst, combined)) <= 4 * lp.objective);
  }
}

TEST_CASE("reduce with the ulpr subsolver keeps the 4x guarantee") {
  for (std::uint64_t seed = 400; seed < 460; ++seed) {
    const Instance inst = random_instance(seed, 6);
    auto sub = [](const Instance& small) { return ulpr_solve(small); };
    const auto combined = reduce_solve(inst, sub);
    CHECK(check_feasible(inst, combined).ok());
    auto lp = solve<Rational>(inst, build_primal(inst));
    CHECK(Rational(cost(inst, combined)) <= 4 * lp.objective);
  }
}

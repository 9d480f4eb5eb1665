#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ftra/oracle.hpp"
#include "test_util.hpp"

using namespace ftra;
using namespace ftra::test;

TEST_CASE("optimal_connections picks nearest sites first") {
  const Instance one = make_instance(vec({1}), mat({{3}}), vec({2}), vec({2}));
  auto x = optimal_connections(one, vec({2}));
  REQUIRE(x.has_value());
  CHECK((*x)(0, 0) == 2);

  const Instance two = make_instance(vec({1, 1}), mat({{2}, {1}}), vec({1}),
                                     vec({1, 1}));
  auto x2 = optimal_connections(two, vec({1, 1}));
  REQUIRE(x2.has_value());
  CHECK((*x2)(0, 0) == 0);
  CHECK((*x2)(1, 0) == 1);
}

TEST_CASE("optimal_connections detects missing capacity") {
  const Instance inst = forced_single_site();
  CHECK(!optimal_connections(inst, vec({2})).has_value());
}

TEST_CASE("exact_ilp solves the forced instances") {
  CHECK(exact_ilp(forced_single_site()).cost == 21);
  CHECK(exact_ilp(forced_two_sites()).cost == 11);
}

TEST_CASE("oracle cost is invariant under site permutation") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = random_instance(seed, 5);
    Instance flipped;
    const Index nf = inst.num_sites();
    flipped.f.resize(nf);
    flipped.R.resize(nf);
    flipped.c.resize(nf, inst.num_clients());
    flipped.r = inst.r;
    for (Index i = 0; i < nf; ++i) {
      flipped.f[nf - 1 - i] = inst.f[i];
      flipped.R[nf - 1 - i] = inst.R[i];
      flipped.c.row(nf - 1 - i) = inst.c.row(i);
    }
    CHECK(exact_ilp(inst).cost == exact_ilp(flipped).cost);
  }
}

TEST_CASE("enforcing k at full capacity changes nothing") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    Instance inst = random_instance(seed, 4);
    inst.k = inst.capacity_total();
    CHECK(exact_ilp(inst, true).cost == exact_ilp(inst, false).cost);
  }
}

TEST_CASE("tight budgets are reported") {
  const Instance inst = random_instance(0, 6);
  CHECK_THROWS_AS(exact_ilp(inst, false, 2), BudgetExceeded);
}

TEST_CASE("greedy x beats any shuffled assignment") {
  // spot check of the exchange argument on a fixed y
  const Instance inst = random_instance(11, 5);
  auto x = optimal_connections(inst, inst.R);
  REQUIRE(x.has_value());
  Money greedy_cost = 0;
  for (Index i = 0; i < inst.num_sites(); ++i)
    greedy_cost += inst.c.row(i).dot(x->row(i));

  // move one unit of some client to any other site with room: never cheaper
  for (Index j = 0; j < inst.num_clients(); ++j)
    for (Index from = 0; from < inst.num_sites(); ++from) {
      if ((*x)(from, j) == 0) continue;
      for (Index to = 0; to < inst.num_sites(); ++to) {
        if (to == from || (*x)(to, j) >= inst.R[to]) continue;
        const Money delta = inst.c(to, j) - inst.c(from, j);
        CHECK(delta >= 0);
      }
    }
}

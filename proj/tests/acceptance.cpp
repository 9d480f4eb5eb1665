// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// Every bound asserted here is a published guarantee of the corresponding
// algorithm; the lower bounds come from the exact-rational LP backend, so
// ratio checks are exact unless a tolerance is written into the criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ftra/aga.hpp"
#include "ftra/generator.hpp"
#include "ftra/kftra.hpp"
#include "ftra/lp_engine.hpp"
#include "ftra/oracle.hpp"
#include "ftra/primal_dual.hpp"
#include "ftra/reduction.hpp"
#include "ftra/ulpr.hpp"
#include "reference_ga.hpp"

using namespace ftra;
using ftra::test::expand_solution;
using ftra::test::random_feasible;
using ftra::test::slow_ga_unit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& out, double secs) {
  std::printf("[%s] criterion %2d: %s%s%s (%.1fs)\n", out.pass ? "PASS" : "FAIL",
              id, name.c_str(), out.detail.empty() ? "" : " -- ",
              out.detail.c_str(), secs);
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

template <class Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(id, name, out, secs);
}

Instance corpus_instance(std::uint64_t seed, bool uniform, Index max_side = 8) {
  Rng rng(seed * 2654435761u + 17);
  GenConfig cfg;
  cfg.n_f = 1 + rng.uniform_int(0, max_side - 1);
  cfg.n_c = 1 + rng.uniform_int(0, max_side - 1);
  cfg.r_max = 3;
  cfg.R_max = 3;
  cfg.f_min = 0;
  cfg.uniform_r = uniform;
  // connection-heavy, balanced, and facility-heavy cost profiles; the small
  // grid packs costs into few distinct values, stressing tie handling
  switch (seed % 3) {
    case 0: cfg.f_max = 8; cfg.grid = 40; break;
    case 1: cfg.f_max = 60; cfg.grid = 40; break;
    default: cfg.f_max = 300; cfg.grid = 10; break;
  }
  return generate_euclidean(cfg, seed);
}

Money apd_open_count(const Instance& inst) {
  PdConfig cfg;
  cfg.lambda = Rational(2);
  return apd_solve(inst, cfg).sol.y.sum();
}

std::string ratio_str(double worst) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max ratio %.4f", worst);
  return buf;
}

const Rational kSlack(1, 1000000);  // the 1e-6 relative slack named below

// instances 0..499: the general corpus shared by criteria 1 and 2
constexpr int kGeneral = 500;
// 300-instance uniform corpora for the primal-dual criteria
constexpr int kUniform = 300;

Outcome criterion1() {
  Outcome out;
  long runs = 0;
  for (int s = 0; s < kGeneral; ++s) {
    const Instance inst = corpus_instance(s, s % 2 == 0);
    std::vector<std::pair<const char*, IntegralSolution>> sols;
    sols.emplace_back("ulpr", ulpr_solve(inst));
    sols.emplace_back("pd", pd_solve(inst).sol);
    sols.emplace_back("apd", apd_solve(inst).sol);
    sols.emplace_back("aga152", scaled_152_pipeline(inst));
    sols.emplace_back("reduce", reduce_solve(inst, [](const Instance& small) {
                        return ulpr_solve(small);
                      }));
    if (inst.uniform_requirements()) {
      const Money k0 = apd_open_count(inst);
      const Money k = std::max(inst.max_requirement(), k0 - 1);
      sols.emplace_back("pk", pk_solve(inst, k, s));
    }
    for (const auto& [alg, sol] : sols) {
      ++runs;
      const auto rep = check_feasible(inst, sol);
      if (!rep.ok()) {
        out.pass = false;
        out.detail = std::string(alg) + " infeasible on seed " + std::to_string(s);
        return out;
      }
    }
  }
  out.detail = std::to_string(runs) + " runs feasible";
  return out;
}

Outcome criterion2() {
  Outcome out;
  double worst = 0;
  for (int s = 0; s < kGeneral; ++s) {
    const Instance inst = corpus_instance(s, s % 2 == 0);
    const auto lp = solve<Rational>(inst, build_primal(inst));
    const auto sol = ulpr_solve(inst, LpBackend::Exact);
    const Rational c(cost(inst, sol));
    if (lp.objective > 0)
      worst = std::max(worst, num::to_double(c / lp.objective));
    if (c > 4 * lp.objective) {  // exact backend: zero slack
      out.pass = false;
      out.detail = "ratio above 4 on seed " + std::to_string(s);
      return out;
    }
  }
  out.detail = ratio_str(worst);
  return out;
}

Outcome criterion3() {
  Outcome out;
  double worst = 0;
  for (int s = 0; s < kUniform; ++s) {
    const Instance inst = corpus_instance(1000 + s, true);
    const auto run = apd_solve(inst);
    const Rational total(cost(inst, run.sol));

    const auto lp = solve<Rational>(inst, build_primal(inst));
    const auto completed = make_complete(inst, lp.primal);
    Rational fstar{0}, cstar{0};
    for (Index i = 0; i < inst.num_sites(); ++i)
      fstar += Rational(inst.f[i]) * completed.y[i];
    for (Index i = 0; i < inst.num_sites(); ++i)
      for (Index j = 0; j < inst.num_clients(); ++j)
        cstar += Rational(inst.c(i, j)) * completed.x(i, j);

    const Rational bound =
        std::min({Rational(Rational(161, 100) * (fstar + cstar)),
                  Rational(Rational(111, 100) * fstar + Rational(178, 100) * cstar),
                  Rational(fstar + 2 * cstar)});
    if (bound > 0) worst = std::max(worst, num::to_double(total / bound));
    if (total > bound * (1 + kSlack)) {
      out.pass = false;
      out.detail = "bi-factor bound violated on seed " + std::to_string(1000 + s);
      return out;
    }
  }
  out.detail = ratio_str(worst) + " against the tightest bound";
  return out;
}

Outcome criterion4() {
  Outcome out;
  for (int s = 0; s < 200; ++s) {
    const Instance inst = corpus_instance(2000 + s, s % 2 == 1);
    const auto pd = pd_solve(inst);
    const auto apd = apd_solve(inst);
    if (pd.sol.y != apd.sol.y || pd.sol.x != apd.sol.x) {
      out.pass = false;
      out.detail = "solutions differ on seed " + std::to_string(2000 + s);
      return out;
    }
  }
  out.detail = "200 instances bit-identical";
  return out;
}

Outcome criterion5() {
  Outcome out;
  long checked = 0;
  for (int s = 0; s < 200; ++s) {
    const Instance inst = corpus_instance(2000 + s, s % 2 == 1);
    const auto run = apd_solve(inst);  // also asserts the bounds internally
    const Index nf = inst.num_sites(), nc = inst.num_clients();
    ++checked;
    if (run.trace.event1_count > nf * nc ||
        run.trace.event2_count > nc + nf + nc * nf) {
      out.pass = false;
      out.detail = "event count bound violated on seed " + std::to_string(2000 + s);
      return out;
    }
  }
  out.detail = std::to_string(checked) + " runs within bounds";
  return out;
}

Outcome criterion6() {
  Outcome out;
  for (int s = 0; s < 200; ++s) {
    const Instance inst = corpus_instance(3000 + s, true);
    const auto run = apd_solve(inst);
    const auto dual = build_dual_certificate(inst, run.trace, Rational(1));
    Rational bound{0};
    for (Index j = 0; j < inst.num_clients(); ++j)
      bound += Rational(inst.r[j]) * dual.alpha[j];
    for (Index i = 0; i < inst.num_sites(); ++i)
      bound -= Rational(inst.R[i]) * dual.z[i];
    if (Rational(cost(inst, run.sol)) > bound) {
      out.pass = false;
      out.detail = "certificate below the run cost on seed " + std::to_string(3000 + s);
      return out;
    }
  }
  out.detail = "200 exact certificates dominate their runs";
  return out;
}

Outcome criterion7() {
  Outcome out;
  double worst = 0;
  for (int s = 0; s < kUniform; ++s) {
    const Instance inst = corpus_instance(4000 + s, true);
    IntegralSolution stage;
    const auto pipe = scaled_152_pipeline(inst, {}, &stage);
    const auto lp = solve<Rational>(inst, build_primal(inst));
    const Rational c(cost(inst, pipe));
    if (lp.objective > 0) worst = std::max(worst, num::to_double(c / lp.objective));
    if (c > Rational(152, 100) * lp.objective * (1 + kSlack)) {
      out.pass = false;
      out.detail = "1.52 bound violated on seed " + std::to_string(4000 + s);
      return out;
    }
    // augmentation never ends above the primal-dual stage it started from
    if (cost(inst, pipe) > cost(inst, stage)) {
      out.pass = false;
      out.detail = "augmentation raised the stage cost on seed " + std::to_string(4000 + s);
      return out;
    }
  }
  out.detail = ratio_str(worst);
  return out;
}

Outcome criterion8() {
  Outcome out;
  for (int s = 0; s < 100; ++s) {
    const Instance inst = corpus_instance(5000 + s, false, 5);
    const auto start = random_feasible(inst, 5000 + s);
    const auto fast = aga(inst, start);
    auto [ftfl, site_map] = expand_to_ftfl(inst);
    const auto expanded = expand_solution(ftfl, site_map, inst, start);
    const auto slow = slow_ga_unit(ftfl, expanded);
    if (cost(inst, fast) != cost(ftfl, slow)) {
      out.pass = false;
      out.detail = "augmentation costs differ on seed " + std::to_string(5000 + s);
      return out;
    }
  }
  out.detail = "100 instances, exact cost equality";
  return out;
}

Outcome criterion9() {
  Outcome out;
  for (int s = 0; s < 200; ++s) {
    const Instance inst = corpus_instance(6000 + s, s % 2 == 0);
    const auto lp = solve<Rational>(inst, build_primal(inst));
    const Instance shrunk = shrink(inst, lp.primal);
    const auto lp2 = solve<Rational>(shrunk, build_primal(shrunk));
    if (lp.objective != lp2.objective) {
      out.pass = false;
      out.detail = "optimum changed on seed " + std::to_string(6000 + s);
      return out;
    }
  }
  out.detail = "200 exact equalities";
  return out;
}

Outcome criterion10() {
  Outcome out;
  double worst = 0;
  for (int s = 0; s < 300; ++s) {
    const Instance inst = corpus_instance(7000 + s, s % 3 == 0);
    const auto lp = solve<Rational>(inst, build_primal(inst));
    const auto completed = make_complete(inst, lp.primal);
    const Instance shrunk = shrink(inst, completed);
    const SplitPair sp = split(shrunk, completed);  // asserts its invariants
    for (Index i = 0; i < inst.num_sites(); ++i)
      if (sp.R_small[i] < 0 || sp.R_small[i] > 2 ||
          sp.R_large[i] + sp.R_small[i] != shrunk.R[i]) {
        out.pass = false;
        out.detail = "split capacity identity failed on seed " + std::to_string(7000 + s);
        return out;
      }
    for (Index j = 0; j < inst.num_clients(); ++j)
      if (sp.r_large[j] + sp.r_small[j] != inst.r[j]) {
        out.pass = false;
        out.detail = "split requirement identity failed on seed " + std::to_string(7000 + s);
        return out;
      }
    const auto combined = reduce_solve(
        inst, [](const Instance& small) { return ulpr_solve(small); });
    const Rational c(cost(inst, combined));
    if (lp.objective > 0) worst = std::max(worst, num::to_double(c / lp.objective));
    if (c > 4 * lp.objective) {
      out.pass = false;
      out.detail = "reduction ratio above 4 on seed " + std::to_string(7000 + s);
      return out;
    }
  }
  out.detail = ratio_str(worst);
  return out;
}

Outcome criterion11() {
  Outcome out;
  // the worked pairing example under |i - i2| distances
  MoneyMat line_c(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) line_c(i, j) = std::abs(static_cast<long>(i - j));
  Instance line;
  line.f = MoneyVec::Ones(4);
  line.c = line_c;
  line.r = MoneyVec::Ones(4);
  line.R = MoneyVec::Constant(4, 9);
  MoneyVec y_s(4), y_l(4);
  y_s << 3, 2, 0, 2;
  y_l << 2, 0, 5, 3;
  const Pairing pr = greedy_pairing(line, y_s, y_l);
  MoneyVec want_p(4), want_u(4);
  want_p << 2, 0, 3, 2;
  want_u << 0, 0, 2, 1;
  if (pr.paired != want_p || pr.unpaired != want_u) {
    out.pass = false;
    out.detail = "pairing disagrees with the worked example";
    return out;
  }

  const int instances = 100, seeds = 50;
  for (int s = 0; s < instances; ++s) {
    const Instance inst = corpus_instance(8000 + s, true, 6);
    const Money k0 = apd_open_count(inst);
    const Money k = std::max(inst.max_requirement(), k0 - 1);
    Instance capped = inst;
    capped.k = k;
    const auto lp = solve<Rational>(capped, build_primal(capped, true));
    Rational total{0};
    for (int seed = 0; seed < seeds; ++seed) {
      const auto sol = pk_solve(inst, k, static_cast<std::uint64_t>(seed));
      if (!check_feasible(capped, sol, true).ok() || sol.y.sum() != k) {
        out.pass = false;
        out.detail = "infeasible or wrong opening count on seed pair (" +
                     std::to_string(8000 + s) + "," + std::to_string(seed) + ")";
        return out;
      }
      total += Rational(cost(inst, sol));
    }
    const Rational mean = total / seeds;
    if (mean > 4 * lp.objective * (1 + kSlack)) {
      out.pass = false;
      out.detail = "mean cost above 4x bounded optimum on seed " + std::to_string(8000 + s);
      return out;
    }
  }
  out.detail = std::to_string(instances) + "x" + std::to_string(seeds) +
               " runs, all open exactly k";
  return out;
}

Outcome criterion12() {
  Outcome out;
  MoneyMat line_c(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) line_c(i, j) = std::abs(static_cast<long>(i - j));
  Instance line;
  line.f = MoneyVec::Ones(4);
  line.c = line_c;
  line.r = MoneyVec::Ones(4);
  line.R = MoneyVec::Constant(4, 9);

  struct Fixture {
    MoneyVec y_s, y_l;
    Money k;
  };
  auto v4 = [](Money a, Money b, Money c, Money d) {
    MoneyVec v(4);
    v << a, b, c, d;
    return v;
  };
  const std::vector<Fixture> fixtures = {
      {v4(3, 2, 0, 2), v4(2, 0, 5, 3), 8},
      {v4(1, 0, 0, 0), v4(0, 2, 1, 0), 2},
      {v4(0, 1, 1, 0), v4(2, 0, 0, 2), 3},
      {v4(2, 0, 0, 0), v4(1, 1, 1, 1), 3},
      {v4(1, 1, 0, 0), v4(0, 0, 3, 2), 4},
  };
  const int seeds = 20000;
  double worst_dev = 0;
  for (std::size_t fix = 0; fix < fixtures.size(); ++fix) {
    const auto& fx = fixtures[fix];
    BsOutcome bs;
    bs.small.y = fx.y_s;
    bs.large.y = fx.y_l;
    bs.k_small = fx.y_s.sum();
    bs.k_large = fx.y_l.sum();
    const Pairing pr = greedy_pairing(line, fx.y_s, fx.y_l);
    const double b = static_cast<double>(fx.k - bs.k_small) /
                     static_cast<double>(bs.k_large - bs.k_small);
    const double sigma = std::sqrt(b * (1 - b) / seeds);
    std::vector<long> taken(static_cast<std::size_t>(bs.k_large - bs.k_small), 0);
    for (int seed = 0; seed < seeds; ++seed) {
      RrDraw draw;
      randomized_round(line, fx.k, bs, pr,
                       static_cast<std::uint64_t>(seed) * fixtures.size() + fix,
                       &draw);
      for (std::size_t u = 0; u < draw.unit_taken.size(); ++u)
        taken[u] += draw.unit_taken[u];
    }
    for (long cnt : taken) {
      const double dev = std::abs(static_cast<double>(cnt) / seeds - b);
      worst_dev = std::max(worst_dev, dev / sigma);
      if (dev > 3 * sigma) {
        out.pass = false;
        out.detail = "marginal off by more than 3 sigma in fixture " +
                     std::to_string(fix);
        return out;
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst deviation %.2f sigma", worst_dev);
  out.detail = buf;
  return out;
}

Outcome criterion13() {
  Outcome out;
  for (int s = 0; s < 100; ++s) {
    const Instance inst = corpus_instance(9000 + s, s % 2 == 0, 5);
    const auto lp = solve<Rational>(inst, build_primal(inst));
    const auto oracle = exact_ilp(inst);
    if (lp.objective > Rational(oracle.cost)) {
      out.pass = false;
      out.detail = "LP above ILP on seed " + std::to_string(9000 + s);
      return out;
    }
    const std::vector<std::pair<const char*, Money>> costs = {
        {"ulpr", cost(inst, ulpr_solve(inst))},
        {"apd", cost(inst, apd_solve(inst).sol)},
        {"aga152", cost(inst, scaled_152_pipeline(inst))},
        {"reduce", cost(inst, reduce_solve(inst, [](const Instance& small) {
                          return ulpr_solve(small);
                        }))},
    };
    for (const auto& [alg, c] : costs)
      if (c < oracle.cost) {
        out.pass = false;
        out.detail = std::string(alg) + " beat the oracle on seed " +
                     std::to_string(9000 + s);
        return out;
      }

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
    if (exact_ilp(flipped).cost != oracle.cost) {
      out.pass = false;
      out.detail = "oracle not permutation invariant on seed " + std::to_string(9000 + s);
      return out;
    }
  }
  out.detail = "100 tiny instances ordered LP <= oracle <= algorithms";
  return out;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion(1, "feasibility fuzz over 500 generated instances", criterion1);
  criterion(2, "lp-rounding within 4x of the exact LP optimum", criterion2);
  criterion(3, "primal-dual bi-factor bounds on 300 uniform instances", criterion3);
  criterion(4, "batched and unit primal-dual produce identical solutions", criterion4);
  criterion(5, "event counts within combinatorial bounds", criterion5);
  criterion(6, "dual certificate dominates the run cost, exact arithmetic", criterion6);
  criterion(7, "cost-scaled pipeline within 1.52x, augmentation monotone", criterion7);
  criterion(8, "site-batched augmentation equals unit augmentation", criterion8);
  criterion(9, "capacity shrinking preserves the LP optimum exactly", criterion9);
  criterion(10, "reduction with the lp-rounding subsolver stays within 4x", criterion10);
  criterion(11, "bounded-opening solver: exact k, mean within 4x", criterion11);
  criterion(12, "rounding marginals match their probability within 3 sigma", criterion12);
  criterion(13, "oracle sandwich and permutation invariance", criterion13);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/13 criteria passed in %.1fs\n", 13 - failures, total);
  return failures == 0 ? 0 : 1;
}

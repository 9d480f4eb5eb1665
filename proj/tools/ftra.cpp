// Command-line front end: instance generation, solving, verification,
// oracle runs, and the ratio-certification benchmark.
//
// Exit codes: 0 success, 2 usage, 3 infeasibility or a violated certified
// bound, 4 budget exceeded.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftra/aga.hpp"
#include "ftra/generator.hpp"
#include "ftra/json_io.hpp"
#include "ftra/kftra.hpp"
#include "ftra/lp_engine.hpp"
#include "ftra/oracle.hpp"
#include "ftra/primal_dual.hpp"
#include "ftra/reduction.hpp"
#include "ftra/ulpr.hpp"

namespace {

using namespace ftra;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitBudget = 4;

struct RunReport {
  std::string instance_id;
  std::string algorithm;
  Money cost = 0;
  double lp_bound = 0.0;
  std::optional<Money> oracle_cost;
  double ratio_lp = 0.0;
  std::optional<double> ratio_oracle;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  std::string feasibility = "ok";
};

json report_to_json(const RunReport& r) {
  json j;
  j["instance"] = r.instance_id;
  j["algorithm"] = r.algorithm;
  j["cost"] = r.cost;
  j["lp_bound"] = r.lp_bound;
  j["oracle_cost"] = r.oracle_cost ? json(*r.oracle_cost) : json(nullptr);
  j["ratio_lp"] = r.ratio_lp;
  j["ratio_oracle"] = r.ratio_oracle ? json(*r.ratio_oracle) : json(nullptr);
  j["wall_ms"] = r.wall_ms;
  j["seed"] = r.seed;
  j["feasible"] = r.feasibility;
  return j;
}

double lp_lower_bound(const Instance& inst, bool with_k, LpBackend backend) {
  const LpModel model = build_primal(inst, with_k);
  if (backend == LpBackend::Exact) {
    const auto res = solve<Rational>(inst, model);
    FTRA_REQUIRE(res.status == LpStatus::Optimal, "LP solve failed");
    return num::to_double(res.objective);
  }
  const auto res = solve<double>(inst, model);
  FTRA_REQUIRE(res.status == LpStatus::Optimal, "LP solve failed");
  return num::to_double(res.objective);
}

std::string exact_time(const Rational& t) {
  return numerator(t).str() + "/" + denominator(t).str();
}

void dump_trace(const std::string& path, const PdTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& ev : trace.events) {
    json line;
    line["t"] = exact_time(ev.t);
    line["type"] = ev.type;
    line["site"] = ev.site;
    line["client"] = ev.client >= 0 ? json(ev.client) : json(nullptr);
    line["toc"] = ev.toc;
    if (ev.type == 2) {
      json moved = json::array();
      for (const auto& [client, from] : ev.switched)
        moved.push_back({{"client", client}, {"from", from}});
      line["switched"] = moved;
      line["connected"] = ev.connected;
    }
    out << line.dump() << "\n";
  }
}

struct SolveOutput {
  IntegralSolution sol;
  std::optional<PdTrace> trace;
};

SolveOutput run_algorithm(const std::string& alg, const Instance& inst,
                          LpBackend backend, std::optional<Money> k,
                          std::uint64_t seed) {
  if (alg == "ulpr") return {ulpr_solve(inst, backend), std::nullopt};
  if (alg == "pd") {
    auto res = pd_solve(inst);
    return {std::move(res.sol), std::move(res.trace)};
  }
  if (alg == "apd") {
    auto res = apd_solve(inst);
    return {std::move(res.sol), std::move(res.trace)};
  }
  if (alg == "aga152") {
    if (!inst.uniform_requirements())
      std::cerr << "warning: requirements are not uniform; the 1.52 bound is "
                   "not certified for this run\n";
    return {scaled_152_pipeline(inst), std::nullopt};
  }
  if (alg == "reduce") {
    auto sub = [backend](const Instance& small) { return ulpr_solve(small, backend); };
    return {reduce_solve(inst, sub, backend), std::nullopt};
  }
  if (alg == "pk") {
    if (!k) throw CLI::ValidationError("solve", "--alg pk requires --k");
    if (!inst.uniform_requirements())
      std::cerr << "warning: requirements are not uniform; the 4x bound is "
                   "not certified for this run\n";
    return {pk_solve(inst, *k, seed), std::nullopt};
  }
  throw CLI::ValidationError("solve", "unknown algorithm " + alg);
}

double certified_bound(const std::string& alg) {
  if (alg == "ulpr" || alg == "reduce" || alg == "pk") return 4.0;
  if (alg == "pd" || alg == "apd") return 1.61;
  if (alg == "aga152") return 1.52;
  return 0.0;
}

bool bound_needs_uniform(const std::string& alg) {
  return alg == "pd" || alg == "apd" || alg == "aga152" || alg == "pk";
}

int cmd_gen(const GenConfig& cfg, std::uint64_t seed, const std::string& out_path) {
  const Instance inst = generate_euclidean(cfg, seed);
  save_instance(out_path, inst);
  std::cout << "wrote " << out_path << ": " << inst.num_sites() << " sites, "
            << inst.num_clients() << " clients, total capacity "
            << inst.capacity_total() << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& alg, const std::string& in_path,
              const std::string& out_path, const std::string& report_path,
              const std::string& trace_path, const std::string& lp_path,
              LpBackend backend, std::optional<Money> k, std::uint64_t seed,
              int batch_seeds, bool verify_only, const std::string& solution_path,
              bool use_oracle) {
  const Instance inst = load_instance(in_path);

  if (verify_only) {
    const IntegralSolution sol = load_solution(solution_path);
    const auto rep = check_feasible(inst, sol, alg == "pk");
    if (!rep.ok()) {
      std::cerr << rep.to_string();
      return kExitViolation;
    }
    std::cout << "feasible, cost " << cost(inst, sol) << "\n";
    return kExitOk;
  }

  if (!lp_path.empty()) {
    std::ofstream lp_out(lp_path);
    lp_out << export_lp_format(build_primal(inst, alg == "pk" && (k || inst.k)));
  }

  Money k_eff = 0;
  std::optional<Money> k_opt;
  if (alg == "pk") {
    if (k)
      k_eff = *k;
    else if (inst.k)
      k_eff = *inst.k;
    else
      throw CLI::ValidationError("solve", "--alg pk requires --k");
    k_opt = k_eff;
  }

  Instance check_inst = inst;
  if (alg == "pk") check_inst.k = k_eff;

  if (alg == "pk" && batch_seeds > 1) {
    // expectation mode: the 4x certificate is a bound on the mean cost
    Money lo = 0, hi = 0;
    double mean = 0;
    for (int s = 0; s < batch_seeds; ++s) {
      const auto sol = pk_solve(inst, k_eff, static_cast<std::uint64_t>(s));
      const auto rep = check_feasible(check_inst, sol, true);
      if (!rep.ok()) {
        std::cerr << "infeasible pk run at seed " << s << "\n" << rep.to_string();
        return kExitViolation;
      }
      const Money c = cost(inst, sol);
      if (s == 0) lo = hi = c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      mean += static_cast<double>(c);
    }
    mean /= batch_seeds;
    const double lp = lp_lower_bound(check_inst, true, backend);
    json summary;
    summary["algorithm"] = "pk";
    summary["instance"] = in_path;
    summary["seeds"] = batch_seeds;
    summary["mean_cost"] = mean;
    summary["min_cost"] = lo;
    summary["max_cost"] = hi;
    summary["lp_bound"] = lp;
    summary["certificate_margin"] = 4.0 * lp - mean;  // >= 0 certifies the mean
    std::cout << summary.dump(2) << "\n";
    if (!report_path.empty()) {
      std::ofstream r(report_path);
      r << summary.dump(2) << "\n";
    }
    return 4.0 * lp - mean >= -1e-6 * std::max(1.0, 4.0 * lp) ? kExitOk
                                                              : kExitViolation;
  }

  const auto start = std::chrono::steady_clock::now();
  SolveOutput out = run_algorithm(alg, inst, backend, k_opt, seed);
  const auto stop = std::chrono::steady_clock::now();
  const auto rep = check_feasible(check_inst, out.sol, alg == "pk");
  if (!rep.ok()) {
    std::cerr << "internal error: solver emitted an infeasible solution\n"
              << rep.to_string();
    return kExitViolation;
  }

  if (!out_path.empty()) save_solution(out_path, inst, out.sol);
  if (!trace_path.empty() && out.trace) dump_trace(trace_path, *out.trace);

  RunReport report;
  report.instance_id = in_path;
  report.algorithm = alg;
  report.cost = cost(inst, out.sol);
  report.seed = seed;
  report.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  report.lp_bound = lp_lower_bound(check_inst, alg == "pk", backend);
  report.ratio_lp =
      report.lp_bound > 0 ? report.cost / report.lp_bound : 1.0;
  if (use_oracle) {
    const auto oracle = exact_ilp(check_inst, alg == "pk");
    report.oracle_cost = oracle.cost;
    report.ratio_oracle =
        oracle.cost > 0 ? static_cast<double>(report.cost) / oracle.cost : 1.0;
  }
  const json jrep = report_to_json(report);
  if (!report_path.empty()) {
    std::ofstream r(report_path);
    r << jrep.dump(2) << "\n";
  }
  std::cout << jrep.dump(2) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& in_path, bool enforce_k, std::uint64_t budget,
               const std::string& out_path) {
  const Instance inst = load_instance(in_path);
  const auto res = exact_ilp(inst, enforce_k, budget);
  if (!out_path.empty()) save_solution(out_path, inst, res.sol);
  std::cout << "optimum " << res.cost << " (" << res.nodes << " nodes)\n";
  return kExitOk;
}

int cmd_bench(Index count, Index nf, Index nc, Money r_max, Money R_max,
              bool uniform, std::uint64_t seed0, std::vector<std::string> algs,
              int seeds, bool use_oracle, LpBackend backend,
              const std::string& json_path) {
  json all = json::array();
  bool violated = false;
  struct Stat {
    double max_ratio = 0.0, sum_ratio = 0.0;
    long n = 0;
  };
  std::map<std::string, Stat> stats;

  for (Index idx = 0; idx < count; ++idx) {
    GenConfig cfg;
    cfg.n_f = nf;
    cfg.n_c = nc;
    cfg.r_max = r_max;
    cfg.R_max = R_max;
    cfg.uniform_r = uniform;
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(idx);
    const Instance inst = generate_euclidean(cfg, seed);
    const std::string id = "gen-" + std::to_string(seed);

    std::optional<Money> k_for_pk;
    for (const auto& alg : algs) {
      const bool with_k = alg == "pk";
      Instance work = inst;
      if (with_k) {
        // pick k just below the unconstrained opening count when possible
        const Money k0 = apd_solve(inst, {Rational(0), Rational(2)}).sol.y.sum();
        k_for_pk = std::max(inst.max_requirement(), k0 - 1);
        work.k = *k_for_pk;
      }
      const double lp = lp_lower_bound(work, with_k, backend);
      std::optional<Money> oracle_cost;
      if (use_oracle) oracle_cost = exact_ilp(work, with_k).cost;

      const int nseeds = with_k ? seeds : 1;
      double cost_acc = 0.0;
      Money worst = 0;
      for (int s = 0; s < nseeds; ++s) {
        const auto start = std::chrono::steady_clock::now();
        SolveOutput out = run_algorithm(alg, work, backend, k_for_pk,
                                        static_cast<std::uint64_t>(s));
        const auto stop = std::chrono::steady_clock::now();
        const auto rep = check_feasible(work, out.sol, with_k);
        if (!rep.ok()) {
          std::cerr << "infeasible output from " << alg << " on " << id << "\n";
          return kExitViolation;
        }
        const Money c = cost(work, out.sol);
        cost_acc += static_cast<double>(c);
        worst = std::max(worst, c);

        RunReport report;
        report.instance_id = id;
        report.algorithm = alg;
        report.cost = c;
        report.lp_bound = lp;
        report.ratio_lp = lp > 0 ? c / lp : 1.0;
        report.oracle_cost = oracle_cost;
        if (oracle_cost && *oracle_cost > 0)
          report.ratio_oracle = static_cast<double>(c) / *oracle_cost;
        report.wall_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        report.seed = static_cast<std::uint64_t>(s);
        all.push_back(report_to_json(report));
      }
      // pk is certified in expectation over seeds; the others per run
      const double eff_cost = with_k ? cost_acc / nseeds : cost_acc;
      const double ratio = lp > 0 ? eff_cost / lp : 1.0;
      auto& st = stats[alg];
      st.max_ratio = std::max(st.max_ratio, ratio);
      st.sum_ratio += ratio;
      st.n += 1;
      const double bound = certified_bound(alg);
      const bool certify = bound > 0 && (!bound_needs_uniform(alg) || uniform);
      if (certify && ratio > bound * (1 + 1e-6)) {
        std::cerr << alg << " exceeded its certified bound " << bound << " on "
                  << id << ": ratio " << ratio << "\n";
        violated = true;
      }
    }
  }

  std::cout << "algorithm      runs   mean-ratio   max-ratio\n";
  for (const auto& [alg, st] : stats) {
    std::printf("%-12s %6ld %12.4f %11.4f\n", alg.c_str(), st.n,
                st.n ? st.sum_ratio / st.n : 0.0, st.max_ratio);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << all.dump(2) << "\n";
  }
  return violated ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvers and ratio certification for constrained fault-tolerant "
               "resource allocation"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a Euclidean instance");
  GenConfig gcfg;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instance.json";
  Money gen_k = -1;
  gen->add_option("--nf", gcfg.n_f, "number of sites");
  gen->add_option("--nc", gcfg.n_c, "number of clients");
  gen->add_option("--rmax", gcfg.r_max, "max client requirement");
  gen->add_option("--Rmax", gcfg.R_max, "max site capacity");
  gen->add_option("--fmin", gcfg.f_min, "min facility cost");
  gen->add_option("--fmax", gcfg.f_max, "max facility cost");
  gen->add_option("--grid", gcfg.grid, "coordinate grid size");
  gen->add_flag("--uniform", gcfg.uniform_r, "same requirement for all clients");
  gen->add_option("--k", gen_k, "embed a global opening bound");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("-o,--out", gen_out, "output path");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run an algorithm on an instance");
  std::string alg, in_path, out_path, report_path, trace_path, lp_path,
      solution_path, backend_name = "exact";
  Money k_flag = -1;
  std::uint64_t solve_seed = 0;
  int solve_seeds = 1;
  bool verify_only = false, solve_oracle = false;
  solve_cmd->add_option("--alg", alg, "ulpr|pd|apd|aga152|reduce|pk")
      ->check(CLI::IsMember({"ulpr", "pd", "apd", "aga152", "reduce", "pk"}));
  solve_cmd->add_option("--in", in_path, "instance file")->required();
  solve_cmd->add_option("--out", out_path, "solution file");
  solve_cmd->add_option("--report", report_path, "report file");
  solve_cmd->add_option("--trace", trace_path, "event-log file (pd/apd)");
  solve_cmd->add_option("--export-lp", lp_path, "write the LP model text");
  solve_cmd->add_option("--backend", backend_name, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  solve_cmd->add_option("--k", k_flag, "opening bound for pk");
  solve_cmd->add_option("--seed", solve_seed, "seed for randomized rounding");
  solve_cmd->add_option("--seeds", solve_seeds,
                        "pk expectation mode: mean/min/max over this many seeds");
  solve_cmd->add_flag("--verify-only", verify_only, "verify --solution instead");
  solve_cmd->add_option("--solution", solution_path, "solution to verify");
  solve_cmd->add_flag("--oracle", solve_oracle, "also run the exact oracle");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by enumeration");
  std::string oracle_in, oracle_out;
  bool oracle_k = false;
  std::uint64_t budget = 10'000'000;
  oracle_cmd->add_option("--in", oracle_in, "instance file")->required();
  oracle_cmd->add_option("--out", oracle_out, "solution file");
  oracle_cmd->add_flag("--enforce-k", oracle_k, "respect the instance's k");
  oracle_cmd->add_option("--budget", budget, "node budget");

  // bench
  auto* bench = app.add_subcommand("bench", "ratio certification over a corpus");
  Index b_count = 50, b_nf = 6, b_nc = 6;
  Money b_rmax = 3, b_Rmax = 3;
  bool b_uniform = false, b_oracle = false;
  std::uint64_t b_seed = 1000;
  int b_seeds = 20;
  std::vector<std::string> b_algs{"ulpr", "apd"};
  std::string b_json, b_backend = "float";
  bench->add_option("--count", b_count, "instances to generate");
  bench->add_option("--nf", b_nf, "sites per instance");
  bench->add_option("--nc", b_nc, "clients per instance");
  bench->add_option("--rmax", b_rmax, "max requirement");
  bench->add_option("--Rmax", b_Rmax, "max capacity");
  bench->add_flag("--uniform", b_uniform, "uniform requirements");
  bench->add_option("--seed", b_seed, "first instance seed");
  bench->add_option("--seeds", b_seeds, "rounding seeds per pk instance");
  bench->add_option("--algs", b_algs, "algorithms to run")->delimiter(',');
  bench->add_flag("--oracle", b_oracle, "include oracle columns");
  bench->add_option("--backend", b_backend, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  bench->add_option("--json", b_json, "write the report array here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      if (gen_k >= 0) gcfg.k = gen_k;
      return cmd_gen(gcfg, gen_seed, gen_out);
    }
    if (*solve_cmd) {
      if (!verify_only && alg.empty())
        throw CLI::ValidationError("solve", "--alg is required");
      const LpBackend backend =
          backend_name == "exact" ? LpBackend::Exact : LpBackend::Float;
      std::optional<Money> k_opt;
      if (k_flag >= 0) k_opt = k_flag;
      return cmd_solve(alg, in_path, out_path, report_path, trace_path, lp_path,
                       backend, k_opt, solve_seed, solve_seeds, verify_only,
                       solution_path, solve_oracle);
    }
    if (*oracle_cmd) return cmd_oracle(oracle_in, oracle_k, budget, oracle_out);
    if (*bench)
      return cmd_bench(b_count, b_nf, b_nc, b_rmax, b_Rmax, b_uniform, b_seed,
                       b_algs, b_seeds, b_oracle,
                       b_backend == "exact" ? LpBackend::Exact : LpBackend::Float,
                       b_json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}

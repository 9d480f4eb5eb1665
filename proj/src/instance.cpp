#include "ftra/instance.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ftra {

void validate(const Instance& inst, bool allow_zero_capacity) {
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  if (inst.R.size() != nf || inst.c.rows() != nf || inst.c.cols() != nc)
    throw std::invalid_argument("instance dimensions are inconsistent");
  for (Index i = 0; i < nf; ++i) {
    if (inst.f[i] < 0) throw std::invalid_argument("facility cost must be nonnegative");
    if (inst.R[i] < (allow_zero_capacity ? 0 : 1))
      throw std::invalid_argument("site capacity must be positive");
  }
  for (Index j = 0; j < nc; ++j)
    if (inst.r[j] < 1) throw std::invalid_argument("client requirement must be at least 1");
  for (Index i = 0; i < nf; ++i)
    for (Index j = 0; j < nc; ++j)
      if (inst.c(i, j) < 0) throw std::invalid_argument("connection cost must be nonnegative");
  if (nc > 0 && inst.max_requirement() > inst.capacity_total())
    throw std::invalid_argument("max r_j exceeds total capacity");
  if (inst.k) {
    if (*inst.k < 1) throw std::invalid_argument("k must be positive");
    if (nc > 0 && *inst.k < inst.max_requirement())
      throw std::invalid_argument("k below max requirement");
    if (*inst.k > inst.capacity_total())
      throw std::invalid_argument("k exceeds total capacity");
  }
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << constraint;
  if (i >= 0) os << " at site " << i;
  if (j >= 0) os << (i >= 0 ? ", client " : " at client ") << j;
  os << " (slack " << slack << ")";
  return os.str();
}

std::string ViolationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : items) os << v.to_string() << "\n";
  return os.str();
}

ViolationReport check_feasible(const Instance& inst, const IntegralSolution& sol,
                               bool enforce_k) {
  detail::check_dims(inst, sol);
  ViolationReport rep;
  for (Index j = 0; j < inst.num_clients(); ++j) {
    Money got = sol.x.col(j).sum();
    if (got < inst.r[j])
      rep.items.push_back({"sum_i x_ij >= r_j", -1, j,
                           static_cast<double>(inst.r[j] - got)});
  }
  for (Index i = 0; i < inst.num_sites(); ++i) {
    if (sol.y[i] > inst.R[i])
      rep.items.push_back({"y_i <= R_i", i, -1,
                           static_cast<double>(sol.y[i] - inst.R[i])});
    if (sol.y[i] < 0)
      rep.items.push_back({"y_i >= 0", i, -1, static_cast<double>(-sol.y[i])});
    for (Index j = 0; j < inst.num_clients(); ++j) {
      if (sol.x(i, j) > sol.y[i])
        rep.items.push_back({"x_ij <= y_i", i, j,
                             static_cast<double>(sol.x(i, j) - sol.y[i])});
      if (sol.x(i, j) < 0)
        rep.items.push_back({"x_ij >= 0", i, j, static_cast<double>(-sol.x(i, j))});
    }
  }
  if (enforce_k && inst.k) {
    Money open = sol.y.size() ? sol.y.sum() : 0;
    if (open > *inst.k)
      rep.items.push_back({"sum_i y_i <= k", -1, -1,
                           static_cast<double>(open - *inst.k)});
  }
  return rep;
}

ViolationReport check_metric(const Instance& inst, Money slack) {
  ViolationReport rep;
  const Index nf = inst.num_sites(), nc = inst.num_clients();
  for (Index i = 0; i < nf; ++i)
    for (Index j = 0; j < nc; ++j) {
      // c_ij against every detour i -> j' -> i' -> j
      for (Index i2 = 0; i2 < nf; ++i2)
        for (Index j2 = 0; j2 < nc; ++j2) {
          if (i2 == i && j2 == j) continue;
          const Money bound = inst.c(i2, j) + inst.c(i2, j2) + inst.c(i, j2);
          if (inst.c(i, j) > bound + slack) {
            rep.items.push_back({"c_ij <= c_i2j + c_i2j2 + c_ij2", i, j,
                                 static_cast<double>(inst.c(i, j) - bound)});
            goto next_pair;  // one report per offending (i, j)
          }
        }
    next_pair:;
    }
  return rep;
}

Money max_connection_cost(const Instance& inst, const IntegralSolution& sol, Index j) {
  Money best = -1;
  for (Index i = 0; i < inst.num_sites(); ++i)
    if (sol.x(i, j) > 0) best = std::max(best, inst.c(i, j));
  return best;
}

Index max_connection_site(const Instance& inst, const IntegralSolution& sol, Index j) {
  Index best = -1;
  Money best_c = -1;
  for (Index i = 0; i < inst.num_sites(); ++i)
    if (sol.x(i, j) > 0 && inst.c(i, j) > best_c) {
      best_c = inst.c(i, j);
      best = i;
    }
  return best;
}

Money site_distance(const Instance& inst, Index i, Index i2) {
  FTRA_REQUIRE(i >= 0 && i < inst.num_sites() && i2 >= 0 && i2 < inst.num_sites(),
               "site index out of range");
  FTRA_REQUIRE(inst.num_clients() > 0, "site_distance needs at least one client");
  Money best = std::numeric_limits<Money>::max();
  for (Index j = 0; j < inst.num_clients(); ++j)
    best = std::min(best, inst.c(i, j) + inst.c(i2, j));
  return best;
}

}  // namespace ftra

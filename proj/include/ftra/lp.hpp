// LP model for the relaxation: variables y_i then x_ij, rows in the order
// requirement (sum_i x_ij >= r_j), linking (y_i - x_ij >= 0), capacity
// (y_i <= R_i) and, when requested, the global bound (sum_i y_i <= k).
#pragma once

#include <string>
#include <vector>

#include "ftra/instance.hpp"

namespace ftra {

enum class RowKind { Requirement, Linking, Capacity, OpeningBound };
enum class RowSense { Ge, Le };

struct LpRow {
  RowKind kind;
  RowSense sense;
  Money rhs;
  Index i = -1;  // site of a linking/capacity row
  Index j = -1;  // client of a requirement/linking row
  std::vector<std::pair<Index, int>> coeffs;  // (column, coefficient)
};

struct LpModel {
  Index n_f = 0, n_c = 0;
  bool with_k = false;
  MoneyVec objective;       // over the structural columns
  std::vector<LpRow> rows;

  Index y_col(Index i) const { return i; }
  Index x_col(Index i, Index j) const { return n_f + i * n_c + j; }
  Index num_vars() const { return n_f + n_f * n_c; }
  Index num_rows() const { return static_cast<Index>(rows.size()); }
};

// Throws when with_k is requested on an instance without k.
LpModel build_primal(const Instance& inst, bool with_k = false);

// CPLEX-LP-format text of the model, for cross-checking with external
// solvers.
std::string export_lp_format(const LpModel& model);

}  // namespace ftra

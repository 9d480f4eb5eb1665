#include "ftra/lp.hpp"

#include <sstream>

namespace ftra {

LpModel build_primal(const Instance& inst, bool with_k) {
  if (with_k && !inst.k)
    throw std::invalid_argument("with_k requires an instance with k");
  LpModel m;
  m.n_f = inst.num_sites();
  m.n_c = inst.num_clients();
  m.with_k = with_k;
  m.objective.resize(m.num_vars());
  for (Index i = 0; i < m.n_f; ++i) m.objective[m.y_col(i)] = inst.f[i];
  for (Index i = 0; i < m.n_f; ++i)
    for (Index j = 0; j < m.n_c; ++j) m.objective[m.x_col(i, j)] = inst.c(i, j);

  for (Index j = 0; j < m.n_c; ++j) {
    LpRow row{RowKind::Requirement, RowSense::Ge, inst.r[j], -1, j, {}};
    for (Index i = 0; i < m.n_f; ++i) row.coeffs.emplace_back(m.x_col(i, j), 1);
    m.rows.push_back(std::move(row));
  }
  for (Index i = 0; i < m.n_f; ++i)
    for (Index j = 0; j < m.n_c; ++j) {
      LpRow row{RowKind::Linking, RowSense::Ge, 0, i, j, {}};
      row.coeffs.emplace_back(m.y_col(i), 1);
      row.coeffs.emplace_back(m.x_col(i, j), -1);
      m.rows.push_back(std::move(row));
    }
  for (Index i = 0; i < m.n_f; ++i) {
    LpRow row{RowKind::Capacity, RowSense::Le, inst.R[i], i, -1, {}};
    row.coeffs.emplace_back(m.y_col(i), 1);
    m.rows.push_back(std::move(row));
  }
  if (with_k) {
    LpRow row{RowKind::OpeningBound, RowSense::Le, *inst.k, -1, -1, {}};
    for (Index i = 0; i < m.n_f; ++i) row.coeffs.emplace_back(m.y_col(i), 1);
    m.rows.push_back(std::move(row));
  }
  return m;
}

namespace {

std::string col_name(const LpModel& m, Index col) {
  std::ostringstream os;
  if (col < m.n_f) {
    os << "y_" << col;
  } else {
    const Index rel = col - m.n_f;
    os << "x_" << rel / m.n_c << "_" << rel % m.n_c;
  }
  return os.str();
}

}  // namespace

std::string export_lp_format(const LpModel& m) {
  std::ostringstream os;
  os << "Minimize\n obj:";
  for (Index c = 0; c < m.num_vars(); ++c)
    if (m.objective[c] != 0) os << " + " << m.objective[c] << " " << col_name(m, c);
  os << "\nSubject To\n";
  for (Index rix = 0; rix < m.num_rows(); ++rix) {
    const LpRow& row = m.rows[rix];
    os << " c" << rix << ":";
    for (const auto& [col, coef] : row.coeffs) {
      os << (coef >= 0 ? " + " : " - ") << std::abs(coef) << " " << col_name(m, col);
    }
    os << (row.sense == RowSense::Ge ? " >= " : " <= ") << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (Index c = 0; c < m.num_vars(); ++c) os << " " << col_name(m, c) << " >= 0\n";
  os << "End\n";
  return os.str();
}

}  // namespace ftra

#include "ftra/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ftra {
namespace {

using nlohmann::json;

json vec_to_json(const MoneyVec& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat_to_json(const MoneyMat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MoneyVec vec_from_json(const json& a, const char* what) {
  if (!a.is_array()) throw std::invalid_argument(std::string(what) + ": expected array");
  MoneyVec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Index>(i)] = a[i].get<Money>();
  return v;
}

MoneyMat mat_from_json(const json& a, Index rows, Index cols, const char* what) {
  if (!a.is_array() || static_cast<Index>(a.size()) != rows)
    throw std::invalid_argument(std::string(what) + ": wrong row count");
  MoneyMat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = a[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument(std::string(what) + ": wrong column count");
    for (Index j = 0; j < cols; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<Money>();
  }
  return m;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  json j;  // nlohmann objects keep keys sorted, which makes output canonical
  j["n_f"] = inst.num_sites();
  j["n_c"] = inst.num_clients();
  j["f"] = vec_to_json(inst.f);
  j["R"] = vec_to_json(inst.R);
  j["r"] = vec_to_json(inst.r);
  j["c"] = mat_to_json(inst.c);
  if (inst.k) j["k"] = *inst.k;
  return dump_canonical(j);
}

Instance parse_instance(const std::string& text) {
  const json j = json::parse(text);
  Instance inst;
  const Index nf = j.at("n_f").get<Index>();
  const Index nc = j.at("n_c").get<Index>();
  if (nf < 1 || nc < 0) throw std::invalid_argument("bad n_f/n_c");
  inst.f = vec_from_json(j.at("f"), "f");
  inst.R = vec_from_json(j.at("R"), "R");
  inst.r = vec_from_json(j.at("r"), "r");
  if (inst.f.size() != nf || inst.R.size() != nf || inst.r.size() != nc)
    throw std::invalid_argument("vector lengths disagree with n_f/n_c");
  inst.c = mat_from_json(j.at("c"), nf, nc, "c");
  if (j.contains("k")) inst.k = j.at("k").get<Money>();
  validate(inst);
  return inst;
}

std::string serialize_solution(const Instance& inst, const IntegralSolution& sol) {
  json j;
  j["y"] = vec_to_json(sol.y);
  j["x"] = mat_to_json(sol.x);
  j["cost"] = cost(inst, sol);
  return dump_canonical(j);
}

IntegralSolution parse_solution(const std::string& text) {
  const json j = json::parse(text);
  IntegralSolution sol;
  sol.y = vec_from_json(j.at("y"), "y");
  const Index nf = sol.y.size();
  const json& x = j.at("x");
  const Index nc = (nf > 0 && x.is_array() && !x.empty())
                       ? static_cast<Index>(x[0].size())
                       : 0;
  sol.x = mat_from_json(x, nf, nc, "x");
  return sol;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }
void save_instance(const std::string& path, const Instance& inst) {
  write_file(path, serialize_instance(inst));
}
IntegralSolution load_solution(const std::string& path) {
  return parse_solution(read_file(path));
}
void save_solution(const std::string& path, const Instance& inst,
                   const IntegralSolution& sol) {
  write_file(path, serialize_solution(inst, sol));
}

}  // namespace ftra

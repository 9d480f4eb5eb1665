// JSON wire formats.
//
// Instance: {"n_f","n_c","f":[...],"R":[...],"r":[...],"c":[[row per site]],
//            "k": optional}
// Solution: {"y":[...],"x":[[...]],"cost"}
// Field order is irrelevant on input; serialization is canonical (sorted
// keys, two-space indent, trailing newline) so parse -> serialize is a
// byte-identical round trip.
#pragma once

#include <string>

#include "ftra/instance.hpp"

namespace ftra {

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_solution(const Instance& inst, const IntegralSolution& sol);
IntegralSolution parse_solution(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);
IntegralSolution load_solution(const std::string& path);
void save_solution(const std::string& path, const Instance& inst,
                   const IntegralSolution& sol);

}  // namespace ftra

// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tvop/instance.hpp"
#include "tvop/route.hpp"

namespace tvop {

inline constexpr std::size_t kDefaultMipVariableCap = 1'000'000;

// Binary program over the spatio-temporal graph, written in CPLEX LP format:
//
//   y_i_u_j_s   edge (i,u) -> (j,s) is used
//   v_i_u       vertex i is visited at layer u
//
//   maximize    sum f_i(u dt) v_i_u
//   start:      v_0_0 = 1
//   depart:     sum of y leaving (0,0) <= 1
//   in_i_u:     sum of y entering (i,u) - v_i_u = 0        (i,u) != (0,0)
//   out_i_u:    sum of y leaving (i,u) - v_i_u <= 0         (i,u) != (0,0)
//   once_i:     sum over u of v_i_u <= 1
//
// Travel times and the budget live in the layer structure, and once_i keeps
// the path simple. Throws Error(cap_exceeded) when edges + vertices > cap.
std::string emit_mip(const Instance& instance, std::size_t variable_cap = kDefaultMipVariableCap);

std::string edge_variable(int i, int u, int j, int s);
std::string visit_variable(int i, int u);

// Parsed form of the LP dialect above. The reader accepts exactly what the
// emitter writes plus free whitespace, blank lines, and '\' comments.
struct LpRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    std::string sense;  // "<=", ">=" or "="
    double rhs = 0.0;
};

struct LpModel {
    bool maximize = true;
    std::vector<std::pair<std::string, double>> objective;
    std::vector<LpRow> rows;
    std::vector<std::string> binaries;
};

// Throws Error(validation) with a line number on grammar errors or when a
// used variable lacks a binary declaration.
LpModel parse_lp(const std::string& text);

using Assignment = std::map<std::string, int>;

// Unlisted variables read as 0.
double objective_value(const LpModel& model, const Assignment& values);
std::vector<std::string> unsatisfied_rows(const LpModel& model, const Assignment& values);

// Discrete route -> 0/1 assignment (y on each hop, v on each stop).
Assignment route_assignment(const Route& route);
// Follows y edges from (0,0); the inverse of route_assignment on paths.
Route decode_assignment(const Assignment& values, const Instance& instance);

}  // namespace tvop

// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <string>
#include <vector>

#include "tvop/instance.hpp"
#include "tvop/route.hpp"

namespace tvop {

// Exhaustive enumeration is O(n!); past a dozen vertices it stops being a
// test tool.
inline constexpr int kDefaultOracleCap = 10;
inline constexpr int kMaxOracleCap = 12;

struct OracleSolution {
    double value = 0.0;
    // Visit order, starting with 0.
    std::vector<int> sequence;
    Route route;
};

// Best simple path from vertex 0 with arrival times accumulating exact travel
// times, free destination. Throws Error(cap_exceeded) above `cap`.
OracleSolution brute_force_continuous(const Instance& instance, int cap = kDefaultOracleCap);

// Same enumeration with arrival layers accumulating rounded hops; the exact
// optimum over simple paths of the spatio-temporal graph.
OracleSolution brute_force_discrete(const Instance& instance, int cap = kDefaultOracleCap);

// Largest per-vertex Lipschitz constant over [0, T]. Throws Error(validation)
// when some profit is discontinuous.
double lipschitz_constant(const Instance& instance);

// Discretization gap bound n(n+1)/2 * K * dt.
double discretization_bound(int n, double lipschitz, double dt);

struct OracleReport {
    int n = 0;
    double z_continuous = 0.0;
    double z_discrete = 0.0;
    double dp_value = 0.0;
    double lipschitz = 0.0;
    double bound = 0.0;
    bool bound_holds = false;
    std::vector<int> optimal_sequence;
    std::vector<int> discrete_sequence;
    std::vector<int> dp_sequence;
};

// Runs both enumerators and the DP (free destination) and checks
// |z - z'| <= bound with 1e-9 slack.
OracleReport check_error_bound(const Instance& instance, int cap = kDefaultOracleCap);

std::string save_oracle_report(const OracleReport& report);

}  // namespace tvop

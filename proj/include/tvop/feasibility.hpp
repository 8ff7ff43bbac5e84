// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tvop/instance.hpp"
#include "tvop/route.hpp"

namespace tvop {

enum class ViolationCode { start, edge, revisit, budget, profit };

std::string_view to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::string detail;
};

// Checks a route against the instance: rooted at (0, 0); every hop a real
// edge whose time gap matches (rounded layers for discrete routes, exact
// travel time for continuous ones); no spatial vertex twice, except a final
// return to 0; finish within T; reported profit equal to the recomputed one.
// An empty result means feasible.
std::vector<Violation> check_feasible(const Route& route, const Instance& instance);

// One "CODE: detail" line per violation.
std::string format_violations(const std::vector<Violation>& violations);

}  // namespace tvop

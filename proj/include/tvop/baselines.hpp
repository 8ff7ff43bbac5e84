// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include "tvop/instance.hpp"
#include "tvop/route.hpp"

namespace tvop {

// Classic-OP route built from frozen weights, scored both ways.
struct BaselineRoute {
    Route route;
    // Sum of w_i over visited vertices (what the heuristic optimizes).
    double static_profit = 0.0;
    // Sum of f_i at the actual arrival times.
    double dynamic_profit = 0.0;
};

// Center-of-gravity construction:
//
//   1. centroid c = weight-averaged position of the unrouted vertices;
//   2. rank unrouted vertices by w_i / (1 + |p_i - c|);
//   3. take the best-ranked vertex whose cheapest insertion into the open
//      path keeps the finish layer within n_T, insert it, and repeat from 1.
//
// Stops when no unrouted vertex fits. Travel is measured in rounded layers
// so the result is a path of the spatio-temporal graph.
BaselineRoute center_of_gravity_route(const Instance& instance);

}  // namespace tvop

// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tvop {

class Instance;

enum class TimeModel {
    // Arrival times are whole layers of the spatio-temporal graph.
    discrete,
    // Arrival times accumulate exact travel times.
    continuous,
};

struct Stop {
    int vertex = 0;
    int layer = 0;
    double time = 0.0;

    friend bool operator==(const Stop&, const Stop&) = default;
};

struct Route {
    std::string solver = "dp";
    TimeModel time_model = TimeModel::discrete;
    std::vector<Stop> stops;
    double total_profit = 0.0;
    // Set by solvers that score vertices with frozen weights.
    std::optional<double> static_profit;

    int finish_layer() const { return stops.empty() ? 0 : stops.back().layer; }
    double finish_time() const { return stops.empty() ? 0.0 : stops.back().time; }
    bool is_trivial() const { return stops.size() <= 1; }

    friend bool operator==(const Route&, const Route&) = default;
};

Route trivial_route(std::string solver);

// Sum of f_i at each stop's time, independent of any solver bookkeeping.
double recompute_profit(const Route& route, const Instance& instance);

// JSON route document, format version 1.
std::string save_route(const Route& route, double dt);
Route load_route(const std::string& text);

Route read_route_file(const std::string& path);
void write_route_file(const Route& route, double dt, const std::string& path);

}  // namespace tvop

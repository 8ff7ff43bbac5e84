// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvop/instance.hpp"

namespace tvop {

struct Event {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

struct EventSet {
    std::vector<Event> events;
};

// CSV with an `x,y,t` header (columns in any order, extras ignored), one event
// per row. Errors name the offending line.
EventSet load_events(const std::string& csv);
EventSet read_events_file(const std::string& path);

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Clustering {
    std::vector<Point> centers;
    std::vector<int> assignment;
    // Sum of squared distances after every assignment step.
    std::vector<double> objective_history;
    int iterations = 0;
};

// Lloyd iteration from a farthest-point start: the seed picks the first
// center uniformly, each further center is the event farthest from those
// already chosen. Stops once assignments no longer change or after
// `max_iters` updates. Throws Error(invalid_argument) when k < 1 or there are
// fewer events than k.
Clustering kmeans(const EventSet& events, int k, std::uint64_t seed, int max_iters);

struct RegionModel {
    std::vector<Point> centers;
    std::vector<int> assignment;
    double bin_width = 1.0;
    // counts[region][bin], bin b covering [b w, (b+1) w).
    std::vector<std::vector<long>> counts;
    std::vector<double> objective_history;

    int k() const { return static_cast<int>(centers.size()); }
    long total() const;
};

RegionModel bin_events(const EventSet& events, const Clustering& clustering, double bin_width);

RegionModel build_region_model(const EventSet& events, int k, std::uint64_t seed, int max_iters,
                               double bin_width);

// Start vertex at `start`, one vertex per region center, complete Euclidean
// travel, and a table profit per region replaying its counts. The bin width
// must be a whole multiple of dt.
Instance build_region_instance(const RegionModel& model, double budget, double dt, Point start);

std::string save_region_model(const RegionModel& model);

}  // namespace tvop

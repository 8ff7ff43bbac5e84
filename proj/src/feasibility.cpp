// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/feasibility.hpp"

#include <cmath>
#include <sstream>

#include "tvop/st_graph.hpp"

namespace tvop {

std::string_view to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::start: return "START";
        case ViolationCode::edge: return "EDGE";
        case ViolationCode::revisit: return "REVISIT";
        case ViolationCode::budget: return "BUDGET";
        case ViolationCode::profit: return "PROFIT";
    }
    return "UNKNOWN";
}

std::vector<Violation> check_feasible(const Route& route, const Instance& instance) {
    std::vector<Violation> out;
    auto report = [&](ViolationCode code, const std::string& detail) { out.push_back({code, detail}); };

    if (route.stops.empty()) {
        report(ViolationCode::start, "route has no stops");
        return out;
    }
    const bool discrete = route.time_model == TimeModel::discrete;
    const Stop& first = route.stops.front();
    if (first.vertex != 0 || first.time != 0.0 || (discrete && first.layer != 0)) {
        std::ostringstream os;
        os << "route starts at vertex " << first.vertex << " t=" << first.time << ", expected vertex 0 t=0";
        report(ViolationCode::start, os.str());
    }

    const int n1 = static_cast<int>(instance.vertex_count());
    const double time_tol = 1e-9 * std::max(1.0, instance.budget());
    bool vertices_known = true;
    for (std::size_t k = 0; k < route.stops.size(); ++k) {
        const Stop& s = route.stops[k];
        if (s.vertex < 0 || s.vertex >= n1) {
            report(ViolationCode::edge, "stop " + std::to_string(k) + " names unknown vertex " + std::to_string(s.vertex));
            vertices_known = false;
            continue;
        }
        if (discrete && std::abs(s.time - instance.layer_time(s.layer)) > time_tol) {
            std::ostringstream os;
            os << "stop " << k << " time " << s.time << " disagrees with layer " << s.layer;
            report(ViolationCode::edge, os.str());
        }
    }
    if (!vertices_known) return out;

    for (std::size_t k = 1; k < route.stops.size(); ++k) {
        const Stop& a = route.stops[k - 1];
        const Stop& b = route.stops[k];
        std::ostringstream os;
        if (!instance.has_edge(a.vertex, b.vertex)) {
            os << "no edge " << a.vertex << "->" << b.vertex << " at stop " << k;
            report(ViolationCode::edge, os.str());
            continue;
        }
        const double tau = instance.travel().at(a.vertex, b.vertex);
        if (discrete) {
            const int hop = round_travel_layers(tau, instance.dt());
            if (b.layer - a.layer != hop) {
                os << "hop " << a.vertex << "->" << b.vertex << " spans " << (b.layer - a.layer)
                   << " layers, travel needs " << hop;
                report(ViolationCode::edge, os.str());
            }
        } else if (std::abs((b.time - a.time) - tau) > time_tol) {
            os << "hop " << a.vertex << "->" << b.vertex << " takes " << (b.time - a.time) << ", travel needs " << tau;
            report(ViolationCode::edge, os.str());
        }
    }

    std::vector<int> seen_at(static_cast<std::size_t>(n1), -1);
    for (std::size_t k = 0; k < route.stops.size(); ++k) {
        const int v = route.stops[k].vertex;
        const bool closing_return = v == 0 && k + 1 == route.stops.size() && k > 0;
        auto& prev = seen_at[static_cast<std::size_t>(v)];
        if (prev >= 0 && !closing_return) {
            report(ViolationCode::revisit, "vertex " + std::to_string(v) + " visited at stops " + std::to_string(prev) +
                                               " and " + std::to_string(k));
        }
        if (prev < 0) prev = static_cast<int>(k);
    }

    bool in_budget = true;
    for (const auto& s : route.stops) {
        const bool over = discrete ? s.layer > instance.layers() || s.layer < 0
                                   : s.time > instance.budget() + time_tol || s.time < 0.0;
        if (over) {
            std::ostringstream os;
            os << "stop at vertex " << s.vertex << " t=" << s.time << " lies outside [0, " << instance.budget() << "]";
            report(ViolationCode::budget, os.str());
            in_budget = false;
        }
    }

    if (in_budget) {
        double recomputed = 0.0;
        for (const auto& s : route.stops) {
            recomputed += discrete ? instance.profit_at_layer(s.vertex, s.layer)
                                   : instance.profit(s.vertex, std::min(s.time, instance.budget()));
        }
        if (std::abs(recomputed - route.total_profit) > 1e-9 * std::max(1.0, std::abs(recomputed))) {
            std::ostringstream os;
            os.precision(17);
            os << "reported profit " << route.total_profit << " differs from recomputed " << recomputed;
            report(ViolationCode::profit, os.str());
        }
    }
    return out;
}

std::string format_violations(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        out += to_string(v.code);
        out += ": ";
        out += v.detail;
        out += '\n';
    }
    return out;
}

}  // namespace tvop

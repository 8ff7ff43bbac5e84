// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/route.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tvop/error.hpp"
#include "tvop/instance.hpp"

namespace tvop {

using nlohmann::json;

Route trivial_route(std::string solver) {
    Route r;
    r.solver = std::move(solver);
    r.stops.push_back({0, 0, 0.0});
    return r;
}

double recompute_profit(const Route& route, const Instance& instance) {
    double total = 0.0;
    for (const auto& s : route.stops) total += instance.profit(s.vertex, s.time);
    return total;
}

std::string save_route(const Route& route, double dt) {
    json doc;
    doc["version"] = 1;
    doc["solver"] = route.solver;
    doc["time_model"] = route.time_model == TimeModel::discrete ? "discrete" : "continuous";
    doc["dt"] = dt;
    json stops = json::array();
    for (const auto& s : route.stops) {
        json j{{"vertex", s.vertex}, {"t", s.time}};
        if (route.time_model == TimeModel::discrete) j["layer"] = s.layer;
        stops.push_back(std::move(j));
    }
    doc["stops"] = std::move(stops);
    doc["total_profit"] = route.total_profit;
    doc["finish_time"] = route.finish_time();
    if (route.static_profit) {
        doc["static_profit"] = *route.static_profit;
        doc["dynamic_profit"] = route.total_profit;
    }
    return doc.dump(1) + "\n";
}

Route load_route(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("version").get<int>() != 1) fail(ErrorCode::validation, "unsupported route version");
        Route r;
        r.solver = doc.value("solver", std::string("dp"));
        const auto model = doc.value("time_model", std::string("discrete"));
        if (model == "discrete") {
            r.time_model = TimeModel::discrete;
        } else if (model == "continuous") {
            r.time_model = TimeModel::continuous;
        } else {
            fail(ErrorCode::validation, "unknown time_model '" + model + "'");
        }
        const double dt = doc.value("dt", 1.0);
        for (const auto& s : doc.at("stops")) {
            Stop stop;
            stop.vertex = s.at("vertex").get<int>();
            stop.time = s.at("t").get<double>();
            if (r.time_model == TimeModel::discrete) {
                stop.layer = s.contains("layer") ? s.at("layer").get<int>()
                                                 : static_cast<int>(std::llround(stop.time / dt));
            }
            r.stops.push_back(stop);
        }
        r.total_profit = doc.at("total_profit").get<double>();
        if (doc.contains("static_profit")) r.static_profit = doc.at("static_profit").get<double>();
        return r;
    } catch (const json::exception& e) {
        fail(ErrorCode::validation, std::string("malformed route document: ") + e.what());
    }
}

Route read_route_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_route(buf.str());
}

void write_route_file(const Route& route, double dt, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot write " + path);
    out << save_route(route, dt);
    if (!out) fail(ErrorCode::io, "write failed for " + path);
}

}  // namespace tvop

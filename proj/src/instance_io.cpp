// Licensed under the Apache License 2.0 (see LICENSE file).

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tvop/error.hpp"
#include "tvop/instance.hpp"

namespace tvop {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::string_view quadrant_name(Quadrant q) {
    switch (q) {
        case Quadrant::I: return "I";
        case Quadrant::II: return "II";
        case Quadrant::III: return "III";
        case Quadrant::IV: return "IV";
    }
    return "I";
}

Quadrant parse_quadrant(const std::string& s) {
    if (s == "I") return Quadrant::I;
    if (s == "II") return Quadrant::II;
    if (s == "III") return Quadrant::III;
    if (s == "IV") return Quadrant::IV;
    fail(ErrorCode::validation, "unknown quadrant '" + s + "'");
}

json profit_to_json(const ProfitFunction& f) {
    json j;
    j["kind"] = std::string(to_string(f.kind()));
    switch (f.kind()) {
        case ProfitKind::constant:
        case ProfitKind::logarithmic:
            j["weight"] = f.weight();
            break;
        case ProfitKind::linear:
        case ProfitKind::quadratic:
            j["weight"] = f.weight();
            j["horizon"] = f.horizon();
            break;
        case ProfitKind::quadrant_step:
            j["weight"] = f.weight();
            j["horizon"] = f.horizon();
            j["region"] = std::string(quadrant_name(f.region()));
            break;
        case ProfitKind::table: {
            json bins = json::array();
            for (const auto& b : f.bins()) bins.push_back({{"t_start", b.t_start}, {"value", b.value}});
            j["bins"] = std::move(bins);
            break;
        }
    }
    return j;
}

ProfitKind kind_of(const json& j) {
    const auto name = j.at("kind").get<std::string>();
    auto kind = parse_profit_kind(name);
    if (!kind) fail(ErrorCode::validation, "unknown profit kind '" + name + "'");
    return *kind;
}

// Per-vertex profit entry. Missing weight falls back to the vertex weight and
// missing horizon to the budget, so hand-written documents stay short.
ProfitFunction profit_from_json(const json& j, const SpatialVertex& v, double budget,
                                double cx, double cy) {
    const ProfitKind kind = kind_of(j);
    const double weight = j.value("weight", v.weight);
    const double horizon = j.value("horizon", budget);
    switch (kind) {
        case ProfitKind::constant: return ProfitFunction::constant(weight);
        case ProfitKind::linear: return ProfitFunction::linear(weight, horizon);
        case ProfitKind::quadratic: return ProfitFunction::quadratic(weight, horizon);
        case ProfitKind::logarithmic: return ProfitFunction::logarithmic(weight);
        case ProfitKind::quadrant_step: {
            const Quadrant q = j.contains("region") ? parse_quadrant(j.at("region").get<std::string>())
                                                   : quadrant_of(v.x, v.y, cx, cy);
            return ProfitFunction::quadrant_step(weight, horizon, q);
        }
        case ProfitKind::table: {
            std::vector<ProfitBin> bins;
            for (const auto& b : j.at("bins")) {
                bins.push_back({b.at("t_start").get<double>(), b.at("value").get<double>()});
            }
            return ProfitFunction::table(std::move(bins));
        }
    }
    return ProfitFunction::zero();
}

Instance from_json(const json& doc) {
    if (!doc.is_object()) fail(ErrorCode::validation, "instance document must be an object");
    const int version = doc.at("version").get<int>();
    if (version != kFormatVersion) {
        fail(ErrorCode::validation, "unsupported instance version " + std::to_string(version));
    }
    const double budget = doc.at("T").get<double>();
    const double dt = doc.at("dt").get<double>();
    if (!(dt > 0.0)) fail(ErrorCode::validation, "dt must be positive");

    std::vector<SpatialVertex> vertices;
    for (const auto& v : doc.at("vertices")) {
        vertices.push_back({v.at("id").get<int>(), v.at("x").get<double>(), v.at("y").get<double>(),
                            v.value("weight", 0.0)});
    }
    if (vertices.empty()) fail(ErrorCode::validation, "instance has no vertices");

    std::vector<ProfitFunction> profits;
    if (doc.contains("profits")) {
        const auto& list = doc.at("profits");
        if (!list.is_array()) fail(ErrorCode::validation, "'profits' must be an array");
        if (list.size() != vertices.size()) {
            std::ostringstream os;
            os << "profit list length " << list.size() << " does not match vertex count " << vertices.size();
            fail(ErrorCode::validation, os.str());
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            profits.push_back(profit_from_json(list[i], vertices[i], budget, 0.0, 0.0));
        }
    } else if (doc.contains("profit")) {
        const auto& shared = doc.at("profit");
        if (kind_of(shared) == ProfitKind::table) {
            fail(ErrorCode::validation, "table profits must be given per vertex");
        }
        if (shared.contains("weight")) {
            fail(ErrorCode::validation, "shared profit takes weights from the vertices");
        }
        double cx = 0.0;
        double cy = 0.0;
        if (shared.contains("center")) {
            cx = shared.at("center").at(0).get<double>();
            cy = shared.at("center").at(1).get<double>();
        }
        profits.push_back(ProfitFunction::zero());
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            profits.push_back(profit_from_json(shared, vertices[i], budget, cx, cy));
        }
    } else {
        fail(ErrorCode::validation, "instance needs either 'profit' or 'profits'");
    }

    std::optional<int> destination;
    if (doc.contains("destination") && !doc.at("destination").is_null()) {
        destination = doc.at("destination").get<int>();
    }

    if (doc.contains("travel_times") && !doc.at("travel_times").is_null()) {
        const auto& rows = doc.at("travel_times");
        if (rows.size() != vertices.size()) {
            fail(ErrorCode::validation, "travel_times must have one row per vertex");
        }
        TravelMatrix m(vertices.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != vertices.size()) {
                fail(ErrorCode::validation, "travel_times row " + std::to_string(i) + " has the wrong length");
            }
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                if (i == j || rows[i][j].is_null()) continue;
                m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j].get<double>());
            }
        }
        return Instance::with_travel_times(std::move(vertices), std::move(m), std::move(profits), budget, dt,
                                           destination);
    }
    return Instance::euclidean(std::move(vertices), std::move(profits), budget, dt, destination);
}

}  // namespace

std::string save_instance(const Instance& instance) {
    json doc;
    doc["version"] = kFormatVersion;
    doc["T"] = instance.budget();
    doc["dt"] = instance.dt();
    doc["destination"] = instance.destination() ? json(*instance.destination()) : json(nullptr);
    json vertices = json::array();
    for (const auto& v : instance.vertices()) {
        vertices.push_back({{"id", v.id}, {"x", v.x}, {"y", v.y}, {"weight", v.weight}});
    }
    doc["vertices"] = std::move(vertices);
    json profits = json::array();
    for (const auto& f : instance.profits()) profits.push_back(profit_to_json(f));
    doc["profits"] = std::move(profits);
    if (!instance.is_euclidean()) {
        const auto& m = instance.travel();
        json rows = json::array();
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            json row = json::array();
            for (int j = 0; j < static_cast<int>(m.size()); ++j) {
                row.push_back(m.has(i, j) ? json(m.at(i, j)) : json(nullptr));
            }
            rows.push_back(std::move(row));
        }
        doc["travel_times"] = std::move(rows);
    }
    return doc.dump(1) + "\n";
}

Instance load_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::validation, std::string("malformed instance document: ") + e.what());
    }
    try {
        return from_json(doc);
    } catch (const json::exception& e) {
        fail(ErrorCode::validation, std::string("instance schema violation: ") + e.what());
    }
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_instance(buf.str());
}

void write_instance_file(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot write " + path);
    out << save_instance(instance);
    if (!out) fail(ErrorCode::io, "write failed for " + path);
}

}  // namespace tvop

// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tvop/error.hpp"

namespace tvop {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cell.erase(0, cell.find_first_not_of(" \t\r"));
        cell.erase(cell.find_last_not_of(" \t\r") + 1);
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, int line, const char* column) {
    if (cell.empty()) {
        fail(ErrorCode::validation, "events line " + std::to_string(line) + ": missing value for '" + column + "'");
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != cell.size() || !std::isfinite(v)) {
        fail(ErrorCode::validation, "events line " + std::to_string(line) + ": '" + cell + "' is not a number");
    }
    return v;
}

double squared(double v) { return v * v; }

double distance2(const Event& e, const Point& c) { return squared(e.x - c.x) + squared(e.y - c.y); }

}  // namespace

EventSet load_events(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    if (line_no == 0 || line.find_first_not_of(" \t\r") == std::string::npos) {
        fail(ErrorCode::validation, "events file has no header");
    }
    const auto header = split_csv(line);
    int cx = -1, cy = -1, ct = -1;
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == "x") cx = static_cast<int>(k);
        if (header[k] == "y") cy = static_cast<int>(k);
        if (header[k] == "t") ct = static_cast<int>(k);
    }
    if (cx < 0 || cy < 0 || ct < 0) {
        fail(ErrorCode::validation, "events header must name columns x, y and t; got '" + line + "'");
    }
    const std::size_t width = header.size();

    EventSet set;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        if (cells.size() < width) {
            fail(ErrorCode::validation, "events line " + std::to_string(line_no) + ": expected " +
                                            std::to_string(width) + " fields, got " + std::to_string(cells.size()));
        }
        Event e;
        e.x = parse_cell(cells[static_cast<std::size_t>(cx)], line_no, "x");
        e.y = parse_cell(cells[static_cast<std::size_t>(cy)], line_no, "y");
        e.t = parse_cell(cells[static_cast<std::size_t>(ct)], line_no, "t");
        if (e.t < 0.0) {
            fail(ErrorCode::validation, "events line " + std::to_string(line_no) + ": negative timestamp");
        }
        set.events.push_back(e);
    }
    return set;
}

EventSet read_events_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_events(buf.str());
}

Clustering kmeans(const EventSet& set, int k, std::uint64_t seed, int max_iters) {
    const auto& ev = set.events;
    if (k < 1) fail(ErrorCode::invalid_argument, "k must be at least 1");
    if (ev.size() < static_cast<std::size_t>(k)) {
        fail(ErrorCode::invalid_argument, "k = " + std::to_string(k) + " exceeds the event count " +
                                              std::to_string(ev.size()));
    }

    Clustering out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ev.size() - 1);
    const std::size_t first = pick(rng);
    out.centers.push_back({ev[first].x, ev[first].y});

    std::vector<double> nearest(ev.size(), std::numeric_limits<double>::infinity());
    while (out.centers.size() < static_cast<std::size_t>(k)) {
        const Point& last = out.centers.back();
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t e = 0; e < ev.size(); ++e) {
            nearest[e] = std::min(nearest[e], distance2(ev[e], last));
            if (nearest[e] > far_d) {
                far_d = nearest[e];
                far = e;
            }
        }
        out.centers.push_back({ev[far].x, ev[far].y});
    }

    out.assignment.assign(ev.size(), -1);
    auto assign = [&] {
        bool changed = false;
        double objective = 0.0;
        for (std::size_t e = 0; e < ev.size(); ++e) {
            int best = 0;
            double best_d = distance2(ev[e], out.centers[0]);
            for (int c = 1; c < k; ++c) {
                const double d = distance2(ev[e], out.centers[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (out.assignment[e] != best) changed = true;
            out.assignment[e] = best;
            objective += best_d;
        }
        out.objective_history.push_back(objective);
        return changed;
    };

    assign();
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> sx(static_cast<std::size_t>(k), 0.0), sy(static_cast<std::size_t>(k), 0.0);
        std::vector<std::size_t> size(static_cast<std::size_t>(k), 0);
        for (std::size_t e = 0; e < ev.size(); ++e) {
            const auto c = static_cast<std::size_t>(out.assignment[e]);
            sx[c] += ev[e].x;
            sy[c] += ev[e].y;
            ++size[c];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (size[c] > 0) {
                out.centers[c] = {sx[c] / static_cast<double>(size[c]), sy[c] / static_cast<double>(size[c])};
            }
        }
        ++out.iterations;
        if (!assign()) break;
    }
    return out;
}

long RegionModel::total() const {
    long sum = 0;
    for (const auto& row : counts) {
        for (long c : row) sum += c;
    }
    return sum;
}

RegionModel bin_events(const EventSet& set, const Clustering& clustering, double bin_width) {
    if (!(bin_width > 0.0)) fail(ErrorCode::invalid_argument, "bin width must be positive");
    if (clustering.assignment.size() != set.events.size()) {
        fail(ErrorCode::invalid_argument, "clustering does not match the event set");
    }
    RegionModel m;
    m.centers = clustering.centers;
    m.assignment = clustering.assignment;
    m.bin_width = bin_width;
    m.objective_history = clustering.objective_history;

    double latest = 0.0;
    for (const auto& e : set.events) latest = std::max(latest, e.t);
    const auto bins = static_cast<std::size_t>(std::floor(latest / bin_width)) + 1;
    m.counts.assign(m.centers.size(), std::vector<long>(bins, 0));
    for (std::size_t e = 0; e < set.events.size(); ++e) {
        const auto b = std::min(bins - 1, static_cast<std::size_t>(std::floor(set.events[e].t / bin_width)));
        ++m.counts[static_cast<std::size_t>(m.assignment[e])][b];
    }
    return m;
}

RegionModel build_region_model(const EventSet& events, int k, std::uint64_t seed, int max_iters,
                               double bin_width) {
    return bin_events(events, kmeans(events, k, seed, max_iters), bin_width);
}

Instance build_region_instance(const RegionModel& model, double budget, double dt, Point start) {
    if (model.centers.empty()) fail(ErrorCode::invalid_argument, "region model is empty");
    if (!(dt > 0.0)) fail(ErrorCode::invalid_argument, "dt must be positive");
    const double ratio = model.bin_width / dt;
    if (std::round(ratio) < 1.0 || std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream os;
        os << "bin width " << model.bin_width << " is not a whole multiple of dt " << dt;
        fail(ErrorCode::invalid_argument, os.str());
    }

    std::vector<SpatialVertex> vertices{{0, start.x, start.y, 0.0}};
    std::vector<ProfitFunction> profits{ProfitFunction::zero()};
    for (std::size_t r = 0; r < model.centers.size(); ++r) {
        std::vector<ProfitBin> bins;
        long total = 0;
        for (std::size_t b = 0; b < model.counts[r].size(); ++b) {
            bins.push_back({static_cast<double>(b) * model.bin_width, static_cast<double>(model.counts[r][b])});
            total += model.counts[r][b];
        }
        // Past the recorded window there is nothing left to collect.
        bins.push_back({static_cast<double>(model.counts[r].size()) * model.bin_width, 0.0});
        vertices.push_back({static_cast<int>(r) + 1, model.centers[r].x, model.centers[r].y, static_cast<double>(total)});
        profits.push_back(ProfitFunction::table(std::move(bins)));
    }
    return Instance::euclidean(std::move(vertices), std::move(profits), budget, dt);
}

std::string save_region_model(const RegionModel& model) {
    nlohmann::json doc;
    doc["k"] = model.k();
    doc["bin_width"] = model.bin_width;
    nlohmann::json centers = nlohmann::json::array();
    for (const auto& c : model.centers) centers.push_back({c.x, c.y});
    doc["centers"] = std::move(centers);
    doc["counts"] = model.counts;
    doc["objective_history"] = model.objective_history;
    return doc.dump(1) + "\n";
}

}  // namespace tvop

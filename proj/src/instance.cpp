// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/instance.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>

#include "tvop/error.hpp"

namespace tvop {

namespace {

bool identically_zero(const ProfitFunction& f) {
    if (f.kind() == ProfitKind::table) {
        return std::all_of(f.bins().begin(), f.bins().end(),
                           [](const ProfitBin& b) { return b.value == 0.0; });
    }
    return f.weight() == 0.0;
}

}  // namespace

TravelMatrix TravelMatrix::euclidean(const std::vector<SpatialVertex>& vertices) {
    TravelMatrix m(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = 0; j < vertices.size(); ++j) {
            if (i == j) continue;
            const double dx = vertices[i].x - vertices[j].x;
            const double dy = vertices[i].y - vertices[j].y;
            m.set(static_cast<int>(i), static_cast<int>(j), std::hypot(dx, dy));
        }
    }
    return m;
}

int whole_layers(double budget, double dt) {
    const double ratio = budget / dt;
    const double nearest = std::round(ratio);
    if (std::abs(nearest * dt - budget) <= 1e-9 * std::max(1.0, std::abs(budget))) {
        return static_cast<int>(nearest);
    }
    return static_cast<int>(std::floor(ratio));
}

Instance Instance::euclidean(std::vector<SpatialVertex> vertices, std::vector<ProfitFunction> profits,
                             double budget, double dt, std::optional<int> destination) {
    Instance inst;
    inst.travel_ = TravelMatrix::euclidean(vertices);
    inst.vertices_ = std::move(vertices);
    inst.profits_ = std::move(profits);
    inst.dt_ = dt;
    inst.destination_ = destination;
    inst.euclidean_ = true;
    inst.validate_and_normalize(budget);
    return inst;
}

Instance Instance::with_travel_times(std::vector<SpatialVertex> vertices, TravelMatrix travel,
                                     std::vector<ProfitFunction> profits, double budget, double dt,
                                     std::optional<int> destination) {
    Instance inst;
    inst.vertices_ = std::move(vertices);
    inst.travel_ = std::move(travel);
    inst.profits_ = std::move(profits);
    inst.dt_ = dt;
    inst.destination_ = destination;
    inst.euclidean_ = false;
    inst.validate_and_normalize(budget);
    return inst;
}

void Instance::validate_and_normalize(double requested_budget) {
    if (vertices_.empty()) fail(ErrorCode::validation, "instance has no vertices");
    if (!std::isfinite(dt_) || dt_ <= 0.0) {
        fail(ErrorCode::validation, "dt must be a positive finite number");
    }
    if (!std::isfinite(requested_budget) || requested_budget < 0.0) {
        fail(ErrorCode::validation, "T must be a non-negative finite number");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (v.id != static_cast<int>(i)) {
            std::ostringstream os;
            os << "vertex ids must be 0..n in order; found id " << v.id << " at position " << i;
            fail(ErrorCode::validation, os.str());
        }
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.weight)) {
            fail(ErrorCode::validation, "vertex " + std::to_string(i) + " has non-finite fields");
        }
        if (v.weight < 0.0) fail(ErrorCode::validation, "vertex " + std::to_string(i) + " has negative weight");
    }
    if (vertices_[0].weight != 0.0) fail(ErrorCode::validation, "start vertex 0 must have weight 0");
    if (profits_.size() != vertices_.size()) {
        std::ostringstream os;
        os << "profit list length " << profits_.size() << " does not match vertex count " << vertices_.size();
        fail(ErrorCode::validation, os.str());
    }
    if (travel_.size() != vertices_.size()) {
        fail(ErrorCode::validation, "travel-time matrix size does not match vertex count");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        for (std::size_t j = 0; j < vertices_.size(); ++j) {
            if (i == j) continue;
            const double tau = travel_.at(static_cast<int>(i), static_cast<int>(j));
            if (tau == TravelMatrix::kNoEdge) continue;
            if (!(tau > 0.0) || !std::isfinite(tau)) {
                std::ostringstream os;
                os << "travel time " << i << "->" << j << " must be positive, got " << tau;
                fail(ErrorCode::validation, os.str());
            }
        }
    }

    layers_ = whole_layers(requested_budget, dt_);
    const double normalized = layers_ * dt_;
    budget_adjusted_ = std::abs(normalized - requested_budget) > 1e-9 * std::max(1.0, requested_budget);
    budget_ = budget_adjusted_ ? normalized : requested_budget;
    if (budget_adjusted_) {
        std::clog << "tvop: warning: T = " << requested_budget << " is not a multiple of dt = " << dt_
                  << "; using T = " << budget_ << '\n';
    }

    if (!identically_zero(profits_[0])) {
        fail(ErrorCode::validation, "profit of start vertex 0 must be identically zero");
    }
    for (std::size_t i = 0; i < profits_.size(); ++i) {
        try {
            profits_[i].validate(budget_);
        } catch (const Error& e) {
            fail(ErrorCode::validation, "vertex " + std::to_string(i) + ": " + e.what());
        }
    }
    if (destination_ && (*destination_ < 0 || *destination_ >= static_cast<int>(vertices_.size()))) {
        fail(ErrorCode::validation, "destination " + std::to_string(*destination_) + " is not a vertex");
    }
}

bool Instance::has_edge(int i, int j) const {
    const int size = static_cast<int>(vertices_.size());
    if (i < 0 || j < 0 || i >= size || j >= size) return false;
    return travel_.has(i, j);
}

double Instance::travel_time(int i, int j) const {
    if (!has_edge(i, j)) {
        std::ostringstream os;
        os << "no edge " << i << "->" << j;
        fail(ErrorCode::invalid_argument, os.str());
    }
    return travel_.at(i, j);
}

double Instance::profit(int vertex, double t) const {
    if (vertex < 0 || vertex >= static_cast<int>(vertices_.size())) {
        fail(ErrorCode::invalid_argument, "unknown vertex " + std::to_string(vertex));
    }
    const double slack = 1e-9 * std::max(1.0, budget_);
    if (!(t >= 0.0) || t > budget_ + slack) {
        std::ostringstream os;
        os << "time " << t << " outside [0, " << budget_ << "]";
        fail(ErrorCode::invalid_argument, os.str());
    }
    if (vertex == 0) return 0.0;
    return profits_[static_cast<std::size_t>(vertex)](std::min(t, budget_));
}

double Instance::profit_at_layer(int vertex, int layer) const {
    if (vertex == 0) return 0.0;
    return profits_[static_cast<std::size_t>(vertex)](std::min(layer_time(layer), budget_));
}

std::optional<ProfitKind> Instance::uniform_profit_kind() const {
    if (profits_.size() <= 1) return ProfitKind::constant;
    std::set<ProfitKind> kinds;
    for (std::size_t i = 1; i < profits_.size(); ++i) kinds.insert(profits_[i].kind());
    if (kinds.size() == 1) return *kinds.begin();
    return std::nullopt;
}

Instance Instance::with_budget(double budget) const {
    Instance copy = *this;
    copy.validate_and_normalize(budget);
    return copy;
}

Instance Instance::with_dt(double dt) const {
    Instance copy = *this;
    copy.dt_ = dt;
    copy.validate_and_normalize(budget_);
    return copy;
}

Instance Instance::with_destination(std::optional<int> destination) const {
    Instance copy = *this;
    copy.destination_ = destination;
    copy.validate_and_normalize(budget_);
    return copy;
}

Instance Instance::with_profits(std::vector<ProfitFunction> profits) const {
    Instance copy = *this;
    copy.profits_ = std::move(profits);
    copy.validate_and_normalize(budget_);
    return copy;
}

}  // namespace tvop

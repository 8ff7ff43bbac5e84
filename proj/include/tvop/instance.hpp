// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tvop/profit.hpp"

namespace tvop {

struct SpatialVertex {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double weight = 0.0;

    friend bool operator==(const SpatialVertex&, const SpatialVertex&) = default;
};

// Dense (n+1) x (n+1) matrix of travel times. Missing edges hold +inf.
class TravelMatrix {
public:
    static constexpr double kNoEdge = std::numeric_limits<double>::infinity();

    TravelMatrix() = default;
    explicit TravelMatrix(std::size_t size) : size_(size), times_(size * size, kNoEdge) {}

    static TravelMatrix euclidean(const std::vector<SpatialVertex>& vertices);

    std::size_t size() const noexcept { return size_; }
    bool has(int i, int j) const { return i != j && times_[index(i, j)] != kNoEdge; }
    double at(int i, int j) const { return times_[index(i, j)]; }
    void set(int i, int j, double tau) { times_[index(i, j)] = tau; }

    friend bool operator==(const TravelMatrix&, const TravelMatrix&) = default;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * size_ + static_cast<std::size_t>(j);
    }

    std::size_t size_ = 0;
    std::vector<double> times_;
};

// Number of whole layers that fit in a budget. Budgets within a relative
// 1e-9 of a layer boundary snap to it (150 / 0.1 is 1500, not 1499).
int whole_layers(double budget, double dt);

// A validated problem instance. Immutable once built; every factory checks
// the invariants and normalizes the budget down to a whole number of layers.
class Instance {
public:
    static Instance euclidean(std::vector<SpatialVertex> vertices, std::vector<ProfitFunction> profits,
                              double budget, double dt, std::optional<int> destination = std::nullopt);

    static Instance with_travel_times(std::vector<SpatialVertex> vertices, TravelMatrix travel,
                                      std::vector<ProfitFunction> profits, double budget, double dt,
                                      std::optional<int> destination = std::nullopt);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    // Count of non-start vertices.
    int n() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

    const std::vector<SpatialVertex>& vertices() const noexcept { return vertices_; }
    const SpatialVertex& vertex(int id) const { return vertices_.at(static_cast<std::size_t>(id)); }
    const std::vector<ProfitFunction>& profits() const noexcept { return profits_; }
    const TravelMatrix& travel() const noexcept { return travel_; }

    double budget() const noexcept { return budget_; }
    double dt() const noexcept { return dt_; }
    int layers() const noexcept { return layers_; }
    std::optional<int> destination() const noexcept { return destination_; }
    bool is_euclidean() const noexcept { return euclidean_; }
    // True when the requested budget was not a whole number of layers.
    bool budget_adjusted() const noexcept { return budget_adjusted_; }

    bool has_edge(int i, int j) const;
    // Throws Error(invalid_argument) for unknown vertices or missing edges.
    double travel_time(int i, int j) const;
    // Throws Error(invalid_argument) when t is outside [0, T] or the vertex is unknown.
    double profit(int vertex, double t) const;
    // Unchecked hot-path evaluation at layer time (clamped to the budget).
    double profit_at_layer(int vertex, int layer) const;
    double layer_time(int layer) const noexcept { return layer * dt_; }

    // Distinct profit kinds of the non-start vertices, or constant when n = 0.
    std::optional<ProfitKind> uniform_profit_kind() const;

    Instance with_budget(double budget) const;
    Instance with_dt(double dt) const;
    Instance with_destination(std::optional<int> destination) const;
    Instance with_profits(std::vector<ProfitFunction> profits) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    Instance() = default;
    void validate_and_normalize(double requested_budget);

    std::vector<SpatialVertex> vertices_;
    TravelMatrix travel_;
    std::vector<ProfitFunction> profits_;
    double budget_ = 0.0;
    double dt_ = 1.0;
    int layers_ = 0;
    std::optional<int> destination_;
    bool euclidean_ = true;
    bool budget_adjusted_ = false;
};

enum class WeightSkew {
    none,
    // Weights grow toward the upper-right corner of the box.
    upper_right,
};

struct Box {
    double xmin = -50.0;
    double xmax = 50.0;
    double ymin = -50.0;
    double ymax = 50.0;
};

struct GenerateOptions {
    int n = 10;
    Box bounds;
    ProfitKind profit = ProfitKind::linear;
    double budget = 200.0;
    double dt = 1.0;
    std::uint64_t seed = 0;
    double start_x = -49.0;
    double start_y = 0.0;
    double weight_min = 1.0;
    double weight_max = 10.0;
    WeightSkew skew = WeightSkew::none;
    // Minimum pairwise distance between any two vertices (start included).
    double min_separation = 0.0;
    // Profit horizon h; defaults to the budget.
    std::optional<double> horizon;
};

Instance generate_random(const GenerateOptions& options);

// JSON instance document, format version 1.
std::string save_instance(const Instance& instance);
Instance load_instance(const std::string& text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& instance, const std::string& path);

}  // namespace tvop

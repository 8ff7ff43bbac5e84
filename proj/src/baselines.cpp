// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvop/st_graph.hpp"

namespace tvop {

namespace {

class LayerMetric {
public:
    explicit LayerMetric(const Instance& instance)
        : n1_(instance.vertex_count()), hops_(n1_ * n1_, 0) {
        for (std::size_t i = 0; i < n1_; ++i) {
            for (std::size_t j = 0; j < n1_; ++j) {
                const int a = static_cast<int>(i);
                const int b = static_cast<int>(j);
                if (instance.has_edge(a, b)) {
                    hops_[i * n1_ + j] = round_travel_layers(instance.travel().at(a, b), instance.dt());
                }
            }
        }
    }

    // 0 means no edge.
    int hop(int i, int j) const {
        return hops_[static_cast<std::size_t>(i) * n1_ + static_cast<std::size_t>(j)];
    }

private:
    std::size_t n1_;
    std::vector<int> hops_;
};

struct Insertion {
    std::size_t position = 0;
    int delta = std::numeric_limits<int>::max();
};

// Cheapest place to put `v` into the open path; position k means "before
// path[k]", with k == path.size() appending.
Insertion cheapest_insertion(const std::vector<int>& path, int v, const LayerMetric& metric) {
    Insertion best;
    for (std::size_t k = 1; k <= path.size(); ++k) {
        const int a = path[k - 1];
        const int in = metric.hop(a, v);
        if (in == 0) continue;
        int delta = in;
        if (k < path.size()) {
            const int b = path[k];
            const int out = metric.hop(v, b);
            if (out == 0) continue;
            delta += out - metric.hop(a, b);
        }
        if (delta < best.delta) best = {k, delta};
    }
    return best;
}

}  // namespace

BaselineRoute center_of_gravity_route(const Instance& instance) {
    const LayerMetric metric(instance);
    const auto& vertices = instance.vertices();

    std::vector<int> path{0};
    int used_layers = 0;
    std::vector<int> unrouted;
    for (int i = 1; i <= instance.n(); ++i) unrouted.push_back(i);

    while (!unrouted.empty()) {
        double wsum = 0.0;
        double cx = 0.0;
        double cy = 0.0;
        for (int i : unrouted) {
            const auto& v = vertices[static_cast<std::size_t>(i)];
            wsum += v.weight;
            cx += v.weight * v.x;
            cy += v.weight * v.y;
        }
        if (wsum > 0.0) {
            cx /= wsum;
            cy /= wsum;
        } else {
            cx = cy = 0.0;
            for (int i : unrouted) {
                cx += vertices[static_cast<std::size_t>(i)].x;
                cy += vertices[static_cast<std::size_t>(i)].y;
            }
            cx /= static_cast<double>(unrouted.size());
            cy /= static_cast<double>(unrouted.size());
        }

        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(unrouted.size());
        for (int i : unrouted) {
            const auto& v = vertices[static_cast<std::size_t>(i)];
            ranked.emplace_back(v.weight / (1.0 + std::hypot(v.x - cx, v.y - cy)), i);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });

        bool inserted = false;
        for (const auto& [score, v] : ranked) {
            const Insertion ins = cheapest_insertion(path, v, metric);
            if (ins.delta == std::numeric_limits<int>::max()) continue;
            if (used_layers + ins.delta > instance.layers()) continue;
            path.insert(path.begin() + static_cast<std::ptrdiff_t>(ins.position), v);
            used_layers += ins.delta;
            unrouted.erase(std::find(unrouted.begin(), unrouted.end(), v));
            inserted = true;
            break;
        }
        if (!inserted) break;
    }

    BaselineRoute out;
    out.route.solver = "cog-baseline";
    int layer = 0;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (k > 0) layer += metric.hop(path[k - 1], path[k]);
        const int v = path[k];
        out.route.stops.push_back({v, layer, instance.layer_time(layer)});
        out.static_profit += vertices[static_cast<std::size_t>(v)].weight;
        out.dynamic_profit += instance.profit_at_layer(v, layer);
    }
    out.route.total_profit = out.dynamic_profit;
    out.route.static_profit = out.static_profit;
    return out;
}

}  // namespace tvop

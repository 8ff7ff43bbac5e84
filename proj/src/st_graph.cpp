// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/st_graph.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "tvop/error.hpp"

namespace tvop {

int round_travel_layers(double tau, double dt) {
    const double ratio = tau / dt;
    const double lower = std::floor(ratio);
    // Snap ratios that are a half-step up to float noise (0.25 / 0.1) onto the half.
    double rounded;
    if (std::abs(ratio - (lower + 0.5)) <= 1e-9 * std::max(1.0, ratio)) {
        rounded = lower + 1.0;
    } else {
        rounded = std::round(ratio);
    }
    if (rounded < 1.0) return 1;
    if (rounded > static_cast<double>(std::numeric_limits<int>::max() / 2)) {
        return std::numeric_limits<int>::max() / 2;
    }
    return static_cast<int>(rounded);
}

StGraph StGraph::build(const Instance& instance) {
    StGraph g;
    g.spatial_ = static_cast<int>(instance.vertex_count());
    g.layers_ = instance.layers();
    g.dt_ = instance.dt();

    const std::size_t total = static_cast<std::size_t>(g.spatial_) * static_cast<std::size_t>(g.layers_ + 1);
    if (total > std::numeric_limits<StIndex>::max()) {
        fail(ErrorCode::cap_exceeded, "spatio-temporal graph too large to index");
    }

    const auto n1 = static_cast<std::size_t>(g.spatial_);
    g.hops_.assign(n1 * n1, 0);
    g.adj_offsets_.assign(n1 + 1, 0);
    for (int i = 0; i < g.spatial_; ++i) {
        for (int j = 0; j < g.spatial_; ++j) {
            if (!instance.has_edge(i, j)) continue;
            const int hop = round_travel_layers(instance.travel().at(i, j), g.dt_);
            g.hops_[static_cast<std::size_t>(i) * n1 + static_cast<std::size_t>(j)] = hop;
            g.adj_targets_.push_back(j);
            g.adj_hops_.push_back(hop);
        }
        g.adj_offsets_[static_cast<std::size_t>(i) + 1] = static_cast<std::uint32_t>(g.adj_targets_.size());
    }

    g.profit_.resize(total);
    g.indegree_.assign(total, 0);
    for (int i = 0; i < g.spatial_; ++i) {
        for (int u = 0; u <= g.layers_; ++u) {
            g.profit_[g.index(i, u)] = instance.profit_at_layer(i, u);
        }
    }
    for (StIndex idx = 0; idx < total; ++idx) {
        g.for_each_successor(idx, [&](StIndex w) {
            ++g.indegree_[w];
            ++g.edges_;
        });
    }
    return g;
}

bool StGraph::has_edge(StNode from, StNode to) const {
    if (from.vertex < 0 || to.vertex < 0 || from.vertex >= spatial_ || to.vertex >= spatial_) return false;
    if (from.layer < 0 || to.layer < 0 || from.layer > layers_ || to.layer > layers_) return false;
    const int hop = hop_layers(from.vertex, to.vertex);
    return hop > 0 && from.layer + hop == to.layer;
}

std::vector<StIndex> StGraph::successors(StIndex idx) const {
    std::vector<StIndex> out;
    for_each_successor(idx, [&](StIndex w) { out.push_back(w); });
    return out;
}

std::string StGraph::edge_dump() const {
    std::ostringstream os;
    for (StIndex idx = 0; idx < vertex_count(); ++idx) {
        const StNode a = node(idx);
        for_each_successor(idx, [&](StIndex w) {
            const StNode b = node(w);
            os << a.vertex << ',' << a.layer << " -> " << b.vertex << ',' << b.layer << '\n';
        });
    }
    return os.str();
}

std::vector<StIndex> topological_sort(const StGraph& graph) {
    const std::size_t total = graph.vertex_count();
    std::vector<StIndex> order;
    order.reserve(total);
    if (total == 0) return order;

    std::vector<std::uint32_t> indegree(total);
    for (StIndex idx = 0; idx < total; ++idx) indegree[idx] = graph.indegree(idx);

    // Layer-major key so the heap yields the lowest (layer, spatial id).
    const auto spatial = static_cast<std::uint64_t>(graph.spatial_count());
    auto key = [&](StIndex idx) {
        const StNode n = graph.node(idx);
        return static_cast<std::uint64_t>(n.layer) * spatial + static_cast<std::uint64_t>(n.vertex);
    };
    std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> ready;
    for (StIndex idx = 0; idx < total; ++idx) {
        if (indegree[idx] == 0) ready.push(key(idx));
    }
    while (!ready.empty()) {
        const std::uint64_t k = ready.top();
        ready.pop();
        const StIndex v = graph.index(static_cast<int>(k % spatial), static_cast<int>(k / spatial));
        order.push_back(v);
        graph.for_each_successor(v, [&](StIndex w) {
            if (--indegree[w] == 0) ready.push(key(w));
        });
    }
    if (order.size() != total) {
        fail(ErrorCode::internal, "spatio-temporal graph has a cycle: " + std::to_string(total - order.size()) +
                                      " vertices never reached indegree 0");
    }
    return order;
}

}  // namespace tvop

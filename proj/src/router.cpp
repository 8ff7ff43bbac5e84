// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/router.hpp"

#include <algorithm>

#include "tvop/error.hpp"

namespace tvop {

DpLabels::DpLabels(const StGraph& graph)
    : words_(std::max<std::size_t>(1, (static_cast<std::size_t>(graph.spatial_count()) + 63) / 64)),
      sum_(graph.vertex_count(), kUnreached),
      parent_(graph.vertex_count(), kNoParent),
      visited_(graph.vertex_count() * words_, 0) {
    if (graph.vertex_count() == 0) return;
    const StIndex start = graph.index(0, 0);
    sum_[start] = 0.0;
    visited_[row(start)] = 1U;
}

std::vector<int> DpLabels::visited_set(StIndex v) const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = visited_[row(v) + w];
        while (bits != 0) {
            const int bit = __builtin_ctzll(bits);
            out.push_back(static_cast<int>(w * 64) + bit);
            bits &= bits - 1;
        }
    }
    return out;
}

void DpLabels::assign(StIndex w, StIndex v, double sum, int spatial) {
    sum_[w] = sum;
    parent_[w] = v;
    std::copy_n(visited_.begin() + static_cast<std::ptrdiff_t>(row(v)), words_,
                visited_.begin() + static_cast<std::ptrdiff_t>(row(w)));
    visited_[row(w) + static_cast<std::size_t>(spatial) / 64] |= std::uint64_t{1} << (spatial % 64);
}

void sweep(const StGraph& graph, std::span<const StIndex> order, DpLabels& labels) {
    for (const StIndex v : order) {
        if (!labels.reached(v)) continue;
        const double base = labels.sum(v);
        graph.for_each_successor(v, [&](StIndex w) {
            const int j = graph.node(w).vertex;
            if (labels.visited(v, j)) return;
            const double candidate = base + graph.profit(w);
            if (tie_break(candidate, labels.sum(w)) == TieDecision::replace) {
                labels.assign(w, v, candidate, j);
            }
        });
    }
}

namespace {

Route backtrack(const StGraph& graph, const DpLabels& labels, StIndex end) {
    Route r;
    r.solver = "dp";
    for (StIndex v = end; v != DpLabels::kNoParent; v = labels.parent(v)) {
        const StNode n = graph.node(v);
        r.stops.push_back({n.vertex, n.layer, n.layer * graph.dt()});
    }
    std::reverse(r.stops.begin(), r.stops.end());
    r.total_profit = labels.sum(end);
    return r;
}

}  // namespace

Route extract_route(const StGraph& graph, const DpLabels& labels, std::optional<int> destination) {
    if (graph.vertex_count() == 0) fail(ErrorCode::invalid_argument, "empty spatio-temporal graph");
    const int spatial = graph.spatial_count();
    const int layers = graph.layers();

    if (destination && (*destination < 0 || *destination >= spatial)) {
        fail(ErrorCode::invalid_argument, "destination " + std::to_string(*destination) + " is not a vertex");
    }

    if (destination && *destination == 0) {
        // Staying put is the incumbent; any closing hop must strictly beat it.
        const StIndex start = graph.index(0, 0);
        StIndex best_from = start;
        int best_arrival = 0;
        double best = labels.sum(start);
        for (int i = 1; i < spatial; ++i) {
            const int hop = graph.hop_layers(i, 0);
            if (hop == 0) continue;
            for (int u = 0; u + hop <= layers; ++u) {
                const StIndex v = graph.index(i, u);
                if (!labels.reached(v)) continue;
                const double candidate = labels.sum(v) + graph.profit(graph.index(0, u + hop));
                if (tie_break(candidate, best) == TieDecision::replace) {
                    best = candidate;
                    best_from = v;
                    best_arrival = u + hop;
                }
            }
        }
        Route r = backtrack(graph, labels, best_from);
        if (best_from != start) {
            r.stops.push_back({0, best_arrival, best_arrival * graph.dt()});
            r.total_profit = best;
        }
        return r;
    }

    StIndex best_state = DpLabels::kNoParent;
    double best = DpLabels::kUnreached;
    const int first = destination ? *destination : 0;
    const int last = destination ? *destination : spatial - 1;
    for (int i = first; i <= last; ++i) {
        for (int u = 0; u <= layers; ++u) {
            const StIndex v = graph.index(i, u);
            if (!labels.reached(v)) continue;
            if (best_state == DpLabels::kNoParent || tie_break(labels.sum(v), best) == TieDecision::replace) {
                best = labels.sum(v);
                best_state = v;
            }
        }
    }
    if (best_state == DpLabels::kNoParent) {
        fail(ErrorCode::no_route, "destination " + std::to_string(*destination) + " is unreachable within T");
    }
    return backtrack(graph, labels, best_state);
}

Route max_profit_path(const StGraph& graph, std::span<const StIndex> order, std::optional<int> destination) {
    DpLabels labels(graph);
    sweep(graph, order, labels);
    return extract_route(graph, labels, destination);
}

Route solve(const Instance& instance) {
    const StGraph graph = StGraph::build(instance);
    const auto order = topological_sort(graph);
    return max_profit_path(graph, order, instance.destination());
}

}  // namespace tvop

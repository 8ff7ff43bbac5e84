// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvop/instance.hpp"

namespace tvop {

// Layer count for a travel time: nearest whole number of dt steps, halves
// rounded up, never below one so every edge advances time.
int round_travel_layers(double tau, double dt);

// A spatio-temporal vertex: spatial id at time layer * dt.
struct StNode {
    int vertex = 0;
    int layer = 0;

    friend bool operator==(const StNode&, const StNode&) = default;
};

using StIndex = std::uint32_t;

// Time-expanded DAG over an instance. Vertices form a dense table indexed by
// (spatial id, layer); (i, u) -> (j, s) is an edge iff the spatial edge i -> j
// exists and s = u + round_travel_layers(tau_ij) <= n_T.
//
// Successor lists are generated from the per-pair hop table rather than
// stored, so memory is O(n^2 + n T / dt) instead of one record per edge.
class StGraph {
public:
    StGraph() = default;

    static StGraph build(const Instance& instance);

    int spatial_count() const noexcept { return spatial_; }
    // n_T; layers run 0..n_T inclusive.
    int layers() const noexcept { return layers_; }
    double dt() const noexcept { return dt_; }

    std::size_t vertex_count() const noexcept { return profit_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    StIndex index(int vertex, int layer) const noexcept {
        return static_cast<StIndex>(vertex * (layers_ + 1) + layer);
    }
    StNode node(StIndex idx) const noexcept {
        return {static_cast<int>(idx) / (layers_ + 1), static_cast<int>(idx) % (layers_ + 1)};
    }

    double profit(StIndex idx) const { return profit_[idx]; }
    std::uint32_t indegree(StIndex idx) const { return indegree_[idx]; }

    // Layers needed to travel i -> j, or 0 when there is no spatial edge.
    int hop_layers(int i, int j) const {
        return hops_[static_cast<std::size_t>(i) * static_cast<std::size_t>(spatial_) +
                     static_cast<std::size_t>(j)];
    }

    bool has_edge(StNode from, StNode to) const;

    // Calls fn(successor_index) for every out-edge of idx, ordered by target
    // spatial id.
    template <class Fn>
    void for_each_successor(StIndex idx, Fn&& fn) const {
        const StNode from = node(idx);
        const auto begin = adj_offsets_[static_cast<std::size_t>(from.vertex)];
        const auto end = adj_offsets_[static_cast<std::size_t>(from.vertex) + 1];
        for (auto k = begin; k < end; ++k) {
            const int s = from.layer + adj_hops_[k];
            if (s <= layers_) fn(index(adj_targets_[k], s));
        }
    }

    std::vector<StIndex> successors(StIndex idx) const;

    // One "i,u -> j,s" line per edge, in (i, u, j) order.
    std::string edge_dump() const;

private:
    int spatial_ = 0;
    int layers_ = 0;
    double dt_ = 1.0;
    std::vector<int> hops_;
    std::vector<std::uint32_t> adj_offsets_;
    std::vector<int> adj_targets_;
    std::vector<int> adj_hops_;
    std::vector<double> profit_;
    std::vector<std::uint32_t> indegree_;
    std::size_t edges_ = 0;
};

// Kahn's algorithm. Among ready vertices the lowest (layer, spatial id) is
// taken first, so the output is deterministic. Throws Error(internal) if a
// cycle is detected.
std::vector<StIndex> topological_sort(const StGraph& graph);

}  // namespace tvop

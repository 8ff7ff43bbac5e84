// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tvop/instance.hpp"
#include "tvop/route.hpp"
#include "tvop/st_graph.hpp"

namespace tvop {

// Per-vertex dynamic-programming labels for one sweep: best accumulated
// profit, predecessor, and the spatial vertices already on that best path.
// A sweep owns its labels; the graph itself is never written.
class DpLabels {
public:
    static constexpr StIndex kNoParent = std::numeric_limits<StIndex>::max();
    static constexpr double kUnreached = -std::numeric_limits<double>::infinity();

    // Start (0, 0) gets sum 0 and visited {0}; everything else is unreached.
    explicit DpLabels(const StGraph& graph);

    double sum(StIndex v) const { return sum_[v]; }
    StIndex parent(StIndex v) const { return parent_[v]; }
    bool reached(StIndex v) const { return sum_[v] != kUnreached; }
    bool visited(StIndex v, int spatial) const {
        return (visited_[row(v) + static_cast<std::size_t>(spatial) / 64] >> (spatial % 64)) & 1U;
    }
    std::vector<int> visited_set(StIndex v) const;

    // Label of w becomes (sum, parent v, visited(v) + {spatial of w}).
    void assign(StIndex w, StIndex v, double sum, int spatial);

private:
    std::size_t row(StIndex v) const { return static_cast<std::size_t>(v) * words_; }

    std::size_t words_ = 1;
    std::vector<double> sum_;
    std::vector<StIndex> parent_;
    std::vector<std::uint64_t> visited_;
};

enum class TieDecision { keep, replace };

// Strict improvement only; exact ties keep the incumbent.
constexpr TieDecision tie_break(double candidate_sum, double incumbent_sum) {
    return candidate_sum > incumbent_sum ? TieDecision::replace : TieDecision::keep;
}

// Relaxes every edge in topological order, skipping successors whose spatial
// vertex is already on the predecessor's path.
void sweep(const StGraph& graph, std::span<const StIndex> order, DpLabels& labels);

// Reads the answer off swept labels. With a destination, the best state of
// that vertex over all layers; destination 0 means returning to the start
// through one closing hop. Without one, the best state overall, scanned in
// (spatial id, layer) order with the first maximum kept.
// Throws Error(no_route) when the destination cannot be reached.
Route extract_route(const StGraph& graph, const DpLabels& labels, std::optional<int> destination);

Route max_profit_path(const StGraph& graph, std::span<const StIndex> order, std::optional<int> destination);

// build -> sort -> sweep -> extract, routed to instance.destination().
Route solve(const Instance& instance);

}  // namespace tvop

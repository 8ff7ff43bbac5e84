// Licensed under the Apache License 2.0 (see LICENSE file).

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "support.hpp"
#include "tvop/error.hpp"
#include "tvop/st_graph.hpp"

using namespace tvop;
using namespace tvop::testing;

namespace {

// Independent rounding rule: nearest integer, halves up, at least one.
int oracle_layers(double tau, double dt) { return std::max(1, static_cast<int>(std::floor(tau / dt + 0.5))); }

struct OracleEdge {
    int i, u, j, s;
    auto operator<=>(const OracleEdge&) const = default;
};

// Applies the edge predicate to every (i, j, u, s) tuple.
std::vector<OracleEdge> enumerate_edges(const Instance& inst) {
    std::vector<OracleEdge> out;
    const int n = inst.n(), L = inst.layers();
    for (int i = 0; i <= n; ++i) {
        for (int u = 0; u <= L; ++u) {
            for (int j = 0; j <= n; ++j) {
                for (int s = 0; s <= L; ++s) {
                    if (!inst.has_edge(i, j)) continue;
                    if (s - u == oracle_layers(inst.travel_time(i, j), inst.dt())) out.push_back({i, u, j, s});
                }
            }
        }
    }
    return out;
}

std::vector<std::pair<StIndex, StIndex>> all_edges(const StGraph& g) {
    std::vector<std::pair<StIndex, StIndex>> out;
    for (StIndex v = 0; v < g.vertex_count(); ++v) {
        g.for_each_successor(v, [&](StIndex w) { out.emplace_back(v, w); });
    }
    return out;
}

void check_order(const StGraph& g, const std::vector<StIndex>& order) {
    REQUIRE(order.size() == g.vertex_count());
    std::vector<std::size_t> pos(g.vertex_count(), g.vertex_count());
    for (std::size_t k = 0; k < order.size(); ++k) {
        REQUIRE(order[k] < g.vertex_count());
        REQUIRE(pos[order[k]] == g.vertex_count());  // each vertex exactly once
        pos[order[k]] = k;
    }
    std::size_t bad = 0;
    for (const auto& [a, b] : all_edges(g)) {
        if (pos[a] >= pos[b]) ++bad;
    }
    CHECK(bad == 0);
}

}  // namespace

TEST_CASE("round_travel_layers") {
    CHECK(round_travel_layers(3.0, 1.0) == 3);
    CHECK(round_travel_layers(0.4, 1.0) == 1);
    CHECK(round_travel_layers(2.5, 1.0) == 3);
    CHECK(round_travel_layers(2.49, 1.0) == 2);
    CHECK(round_travel_layers(1.0, 0.1) == 10);
    CHECK(round_travel_layers(0.35, 0.1) == 4);  // 3.4999999999999996 in floating point
    CHECK(round_travel_layers(7.0, 2.0) == 4);
}

TEST_CASE("three-vertex example") {
    const auto inst = read_instance_file(fixture("three_vertex.json"));
    const auto g = StGraph::build(inst);
    CHECK(g.vertex_count() == 18);
    CHECK(g.layers() == 5);
    CHECK(g.has_edge({0, 0}, {1, 3}));
    CHECK(g.has_edge({2, 0}, {1, 5}));
    int from2to1 = 0;
    for (const auto& [a, b] : all_edges(g)) {
        if (g.node(a).vertex == 2 && g.node(b).vertex == 1) {
            ++from2to1;
            CHECK(g.node(a) == StNode{2, 0});
            CHECK(g.node(b) == StNode{1, 5});
        }
    }
    CHECK(from2to1 == 1);
    const auto order = topological_sort(g);
    check_order(g, order);
    CHECK(std::set<StIndex>(order.begin(), order.end()).size() == 18);
}

TEST_CASE("single vertex graph has no edges") {
    const Instance inst = Instance::euclidean({{0, 0, 0, 0}}, {ProfitFunction::zero()}, 7, 1);
    const auto g = StGraph::build(inst);
    CHECK(g.vertex_count() == 8);
    CHECK(g.edge_count() == 0);
    CHECK(topological_sort(g).size() == 8);
}

TEST_CASE("empty graph sorts to an empty list") {
    const StGraph g;
    CHECK(g.vertex_count() == 0);
    CHECK(topological_sort(g).empty());
}

TEST_CASE("edges match the brute-force predicate") {
    for (std::uint64_t seed : {3u, 17u, 29u}) {
        for (double dt : {0.5, 1.0, 3.0}) {
            CAPTURE(seed);
            CAPTURE(dt);
            const auto inst = generate_random(options(5, ProfitKind::linear, 60, dt, seed));
            const auto g = StGraph::build(inst);
            auto expected = enumerate_edges(inst);
            std::vector<OracleEdge> got;
            for (const auto& [a, b] : all_edges(g)) {
                got.push_back({g.node(a).vertex, g.node(a).layer, g.node(b).vertex, g.node(b).layer});
            }
            std::sort(expected.begin(), expected.end());
            std::sort(got.begin(), got.end());
            CHECK(g.edge_count() == expected.size());
            CHECK(got == expected);

            // has_edge agrees on every tuple, including non-edges.
            std::set<OracleEdge> lookup(expected.begin(), expected.end());
            std::size_t mismatches = 0;
            for (int i = 0; i <= inst.n(); ++i)
                for (int u = 0; u <= g.layers(); ++u)
                    for (int j = 0; j <= inst.n(); ++j)
                        for (int s = 0; s <= g.layers(); ++s)
                            if (g.has_edge({i, u}, {j, s}) != (lookup.count({i, u, j, s}) > 0)) ++mismatches;
            CHECK(mismatches == 0);

            // The text dump lists the same edges.
            std::ostringstream dump;
            for (const auto& e : expected) dump << e.i << ',' << e.u << " -> " << e.j << ',' << e.s << '\n';
            CHECK(g.edge_dump() == dump.str());
        }
    }
}

TEST_CASE("graph invariants on generated instances") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto inst = generate_random(options(12, ProfitKind::quadratic, 50, 0.5, seed));
        const auto g = StGraph::build(inst);
        const std::size_t n = static_cast<std::size_t>(inst.n());
        const std::size_t L = static_cast<std::size_t>(inst.layers());
        CHECK(g.vertex_count() == (n + 1) * (L + 1));
        CHECK(g.edge_count() <= (n + 1) * n * (L + 1));

        std::vector<std::uint32_t> indeg(g.vertex_count(), 0);
        std::size_t backwards = 0;
        for (const auto& [a, b] : all_edges(g)) {
            if (g.node(b).layer <= g.node(a).layer) ++backwards;
            ++indeg[b];
        }
        CHECK(backwards == 0);
        std::size_t indeg_mismatch = 0, profit_mismatch = 0;
        for (StIndex v = 0; v < g.vertex_count(); ++v) {
            if (indeg[v] != g.indegree(v)) ++indeg_mismatch;
            const auto node = g.node(v);
            if (g.profit(v) != inst.profit(node.vertex, node.layer * inst.dt())) ++profit_mismatch;
            CHECK(g.index(node.vertex, node.layer) == v);
        }
        CHECK(indeg_mismatch == 0);
        CHECK(profit_mismatch == 0);
    }
}

TEST_CASE("Kahn order is valid up to n = 50, 100 layers") {
    for (int n : {1, 7, 20, 50}) {
        const auto inst = generate_random(options(n, ProfitKind::linear, 100, 1, static_cast<std::uint64_t>(n)));
        const auto g = StGraph::build(inst);
        const auto order = topological_sort(g);
        check_order(g, order);

        // Sorting by layer alone is also a valid order.
        std::vector<StIndex> by_layer(g.vertex_count());
        for (StIndex v = 0; v < g.vertex_count(); ++v) by_layer[v] = v;
        std::stable_sort(by_layer.begin(), by_layer.end(),
                         [&](StIndex a, StIndex b) { return g.node(a).layer < g.node(b).layer; });
        check_order(g, by_layer);

        // Ready vertices leave in (layer, id) order, so the output is the
        // layer-major scan itself.
        std::vector<StIndex> expected;
        for (int u = 0; u <= g.layers(); ++u)
            for (int i = 0; i < g.spatial_count(); ++i) expected.push_back(g.index(i, u));
        CHECK(order == expected);
    }
}

TEST_CASE("successor lists are ordered by target id") {
    const auto inst = generate_random(options(9, ProfitKind::linear, 40, 1, 8));
    const auto g = StGraph::build(inst);
    for (StIndex v = 0; v < g.vertex_count(); ++v) {
        const auto succ = g.successors(v);
        for (std::size_t k = 1; k < succ.size(); ++k) CHECK(g.node(succ[k - 1]).vertex < g.node(succ[k]).vertex);
    }
}

TEST_CASE("missing spatial edges produce no spatio-temporal edges") {
    const auto inst = matrix_instance({{0, 2, 0}, {0, 0, 1}, {0, 0, 0}},
                                      [](int) { return ProfitFunction::constant(1); }, 6, 1);
    const auto g = StGraph::build(inst);
    CHECK(g.hop_layers(0, 2) == 0);
    CHECK(g.hop_layers(0, 1) == 2);
    for (const auto& [a, b] : all_edges(g)) {
        const bool allowed = (g.node(a).vertex == 0 && g.node(b).vertex == 1) ||
                             (g.node(a).vertex == 1 && g.node(b).vertex == 2);
        CHECK(allowed);
    }
}

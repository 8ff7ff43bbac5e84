// Licensed under the Apache License 2.0 (see LICENSE file).
//
// Small builders shared by the unit tests.

#pragma once

#include <string>
#include <vector>

#include "tvop/instance.hpp"

namespace tvop::testing {

inline std::string fixture(const std::string& name) { return std::string(TVOP_FIXTURE_DIR) + "/" + name; }

// Vertices at the given positions (start first), each collectible vertex
// with the profit from `make(i)` and weight taken from that profit.
template <class Make>
Instance euclidean_instance(const std::vector<std::pair<double, double>>& pos, Make make, double T, double dt,
                            std::optional<int> destination = std::nullopt) {
    std::vector<SpatialVertex> vs;
    std::vector<ProfitFunction> fs;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        ProfitFunction f = i == 0 ? ProfitFunction::zero() : make(static_cast<int>(i));
        vs.push_back({static_cast<int>(i), pos[i].first, pos[i].second, i == 0 ? 0.0 : f.weight()});
        fs.push_back(f);
    }
    return Instance::euclidean(vs, fs, T, dt, destination);
}

// Explicit travel matrix; entries <= 0 off the diagonal mean "no edge".
template <class Make>
Instance matrix_instance(const std::vector<std::vector<double>>& tau, Make make, double T, double dt,
                         std::optional<int> destination = std::nullopt) {
    const std::size_t n = tau.size();
    std::vector<SpatialVertex> vs;
    std::vector<ProfitFunction> fs;
    TravelMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        ProfitFunction f = i == 0 ? ProfitFunction::zero() : make(static_cast<int>(i));
        vs.push_back({static_cast<int>(i), static_cast<double>(i), 0.0, i == 0 ? 0.0 : f.weight()});
        fs.push_back(f);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && tau[i][j] > 0) m.set(static_cast<int>(i), static_cast<int>(j), tau[i][j]);
        }
    }
    return Instance::with_travel_times(vs, m, fs, T, dt, destination);
}

inline GenerateOptions options(int n, ProfitKind kind, double T, double dt, std::uint64_t seed) {
    GenerateOptions o;
    o.n = n;
    o.profit = kind;
    o.budget = T;
    o.dt = dt;
    o.seed = seed;
    return o;
}

}  // namespace tvop::testing

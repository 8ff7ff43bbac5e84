// Licensed under the Apache License 2.0 (see LICENSE file).

#include <algorithm>
#include <cmath>
#include <random>

#include "tvop/error.hpp"
#include "tvop/instance.hpp"

namespace tvop {

namespace {

constexpr int kMaxPlacementAttempts = 100000;

ProfitFunction make_profit(ProfitKind kind, double weight, double horizon, const SpatialVertex& v,
                           const Box& box, int layers, double dt, std::mt19937_64& rng) {
    switch (kind) {
        case ProfitKind::constant: return ProfitFunction::constant(weight);
        case ProfitKind::linear: return ProfitFunction::linear(weight, horizon);
        case ProfitKind::quadratic: return ProfitFunction::quadratic(weight, horizon);
        case ProfitKind::logarithmic: return ProfitFunction::logarithmic(weight);
        case ProfitKind::quadrant_step: {
            const double cx = (box.xmin + box.xmax) / 2.0;
            const double cy = (box.ymin + box.ymax) / 2.0;
            return ProfitFunction::quadrant_step(weight, horizon, quadrant_of(v.x, v.y, cx, cy));
        }
        case ProfitKind::table: {
            // Ten equal bins over the budget with values drawn from [0, w].
            const int per_bin = std::max(1, layers / 10);
            std::uniform_real_distribution<double> value(0.0, weight);
            std::vector<ProfitBin> bins;
            for (int layer = 0; layer <= std::max(layers, 0); layer += per_bin) {
                bins.push_back({layer * dt, value(rng)});
            }
            return ProfitFunction::table(std::move(bins));
        }
    }
    return ProfitFunction::zero();
}

}  // namespace

Instance generate_random(const GenerateOptions& o) {
    if (o.n < 1) fail(ErrorCode::invalid_argument, "n must be at least 1");
    if (!(o.bounds.xmax > o.bounds.xmin) || !(o.bounds.ymax > o.bounds.ymin)) {
        fail(ErrorCode::invalid_argument, "bounds must have positive extent");
    }
    if (!(o.dt > 0.0)) fail(ErrorCode::invalid_argument, "dt must be positive");
    if (!(o.budget >= o.dt)) fail(ErrorCode::invalid_argument, "T must be at least dt");
    if (!(o.weight_max >= o.weight_min) || o.weight_min < 0.0) {
        fail(ErrorCode::invalid_argument, "weight range must satisfy 0 <= min <= max");
    }

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> xs(o.bounds.xmin, o.bounds.xmax);
    std::uniform_real_distribution<double> ys(o.bounds.ymin, o.bounds.ymax);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<SpatialVertex> vertices;
    vertices.reserve(static_cast<std::size_t>(o.n) + 1);
    vertices.push_back({0, o.start_x, o.start_y, 0.0});

    const double sep2 = o.min_separation * o.min_separation;
    for (int i = 1; i <= o.n; ++i) {
        SpatialVertex v{i, 0.0, 0.0, 0.0};
        int attempts = 0;
        for (;;) {
            v.x = xs(rng);
            v.y = ys(rng);
            const bool clear = std::all_of(vertices.begin(), vertices.end(), [&](const SpatialVertex& u) {
                const double dx = u.x - v.x;
                const double dy = u.y - v.y;
                return dx * dx + dy * dy >= sep2;
            });
            if (clear) break;
            if (++attempts >= kMaxPlacementAttempts) {
                fail(ErrorCode::invalid_argument, "cannot place vertices with the requested min separation");
            }
        }
        vertices.push_back(v);
    }

    const double span = o.weight_max - o.weight_min;
    for (int i = 1; i <= o.n; ++i) {
        auto& v = vertices[static_cast<std::size_t>(i)];
        const double u = unit(rng);
        switch (o.skew) {
            case WeightSkew::none:
                v.weight = o.weight_min + span * u;
                break;
            case WeightSkew::upper_right: {
                const double sx = (v.x - o.bounds.xmin) / (o.bounds.xmax - o.bounds.xmin);
                const double sy = (v.y - o.bounds.ymin) / (o.bounds.ymax - o.bounds.ymin);
                const double s = std::clamp(sx * sy, 0.0, 1.0);
                v.weight = o.weight_min + span * u * s * s;
                break;
            }
        }
    }

    const double horizon = o.horizon.value_or(o.budget);
    const int layers = whole_layers(o.budget, o.dt);
    std::vector<ProfitFunction> profits;
    profits.reserve(vertices.size());
    profits.push_back(ProfitFunction::zero());
    for (int i = 1; i <= o.n; ++i) {
        const auto& v = vertices[static_cast<std::size_t>(i)];
        profits.push_back(make_profit(o.profit, v.weight, horizon, v, o.bounds, layers, o.dt, rng));
    }
    return Instance::euclidean(std::move(vertices), std::move(profits), o.budget, o.dt);
}

}  // namespace tvop

// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <json.hpp>

#include "tvop/error.hpp"
#include "tvop/router.hpp"
#include "tvop/st_graph.hpp"

namespace tvop {

namespace {

void check_cap(const Instance& instance, int cap) {
    if (cap > kMaxOracleCap) {
        fail(ErrorCode::cap_exceeded, "oracle cap " + std::to_string(cap) + " exceeds the hard limit of " +
                                          std::to_string(kMaxOracleCap));
    }
    if (instance.n() > cap) {
        fail(ErrorCode::cap_exceeded, "brute force refused: n = " + std::to_string(instance.n()) +
                                          " exceeds the oracle cap of " + std::to_string(cap));
    }
}

// Depth-first enumeration of simple paths from vertex 0. `Clock` advances the
// arrival (exact seconds or whole layers) and reports whether it still fits.
template <class Clock>
class Enumerator {
public:
    using Time = typename Clock::Time;

    Enumerator(const Instance& instance, Clock clock)
        : instance_(instance), clock_(std::move(clock)), n1_(static_cast<int>(instance.vertex_count())) {}

    // Best extension of the path 0 -> first; first == 0 means the empty path.
    void run(int first) {
        path_.assign(1, 0);
        times_.assign(1, Time{});
        std::vector<bool> used(static_cast<std::size_t>(n1_), false);
        used[0] = true;
        best_ = 0.0;
        best_path_ = path_;
        best_times_ = times_;
        if (first == 0) return;
        Time t{};
        if (!clock_.advance(0, first, t)) {
            best_ = -1.0;
            return;
        }
        used[static_cast<std::size_t>(first)] = true;
        path_.push_back(first);
        times_.push_back(t);
        const double gained = clock_.profit(first, t);
        best_ = -1.0;
        dfs(first, t, gained, used);
    }

    double best() const { return best_; }
    const std::vector<int>& best_path() const { return best_path_; }
    const std::vector<Time>& best_times() const { return best_times_; }

private:
    void dfs(int at, Time now, double collected, std::vector<bool>& used) {
        if (collected > best_) {
            best_ = collected;
            best_path_ = path_;
            best_times_ = times_;
        }
        for (int j = 1; j < n1_; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            Time t = now;
            if (!clock_.advance(at, j, t)) continue;
            used[static_cast<std::size_t>(j)] = true;
            path_.push_back(j);
            times_.push_back(t);
            dfs(j, t, collected + clock_.profit(j, t), used);
            times_.pop_back();
            path_.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    }

    const Instance& instance_;
    Clock clock_;
    int n1_;
    std::vector<int> path_;
    std::vector<Time> times_;
    double best_ = 0.0;
    std::vector<int> best_path_;
    std::vector<Time> best_times_;
};

struct ContinuousClock {
    using Time = double;
    const Instance* instance;
    double limit;

    bool advance(int from, int to, double& t) const {
        if (!instance->has_edge(from, to)) return false;
        t += instance->travel().at(from, to);
        return t <= limit;
    }
    double profit(int v, double t) const { return instance->profit(v, std::min(t, instance->budget())); }
};

struct DiscreteClock {
    using Time = int;
    const Instance* instance;
    // Rounded hop per ordered pair, 0 where there is no edge.
    const std::vector<int>* hops;

    bool advance(int from, int to, int& layer) const {
        const int hop = (*hops)[static_cast<std::size_t>(from) * instance->vertex_count() +
                                static_cast<std::size_t>(to)];
        if (hop == 0) return false;
        layer += hop;
        return layer <= instance->layers();
    }
    double profit(int v, int layer) const { return instance->profit_at_layer(v, layer); }
};

// Fans the enumeration out over first hops and keeps the first strict maximum
// in first-hop order, so the answer does not depend on scheduling.
template <class Clock>
auto enumerate(const Instance& instance, const Clock& clock) {
    using E = Enumerator<Clock>;
    const int n1 = static_cast<int>(instance.vertex_count());
    std::vector<std::future<E>> branches;
    for (int first = 0; first < n1; ++first) {
        branches.push_back(std::async(std::launch::async, [&instance, &clock, first] {
            E e(instance, clock);
            e.run(first);
            return e;
        }));
    }
    std::optional<E> best;
    for (auto& f : branches) {
        E e = f.get();
        if (!best || e.best() > best->best()) best.emplace(std::move(e));
    }
    return std::move(*best);
}

}  // namespace

OracleSolution brute_force_continuous(const Instance& instance, int cap) {
    check_cap(instance, cap);
    const ContinuousClock clock{&instance, instance.budget() + 1e-9 * std::max(1.0, instance.budget())};
    auto e = enumerate(instance, clock);
    OracleSolution s;
    s.value = e.best();
    s.sequence = e.best_path();
    s.route.solver = "oracle-continuous";
    s.route.time_model = TimeModel::continuous;
    for (std::size_t k = 0; k < s.sequence.size(); ++k) {
        s.route.stops.push_back({s.sequence[k], 0, std::min(e.best_times()[k], instance.budget())});
    }
    s.route.total_profit = s.value;
    return s;
}

OracleSolution brute_force_discrete(const Instance& instance, int cap) {
    check_cap(instance, cap);
    const std::size_t n1 = instance.vertex_count();
    std::vector<int> hops(n1 * n1, 0);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
            const int a = static_cast<int>(i);
            const int b = static_cast<int>(j);
            if (instance.has_edge(a, b)) hops[i * n1 + j] = round_travel_layers(instance.travel().at(a, b), instance.dt());
        }
    }
    const DiscreteClock clock{&instance, &hops};
    auto e = enumerate(instance, clock);
    OracleSolution s;
    s.value = e.best();
    s.sequence = e.best_path();
    s.route.solver = "oracle-discrete";
    for (std::size_t k = 0; k < s.sequence.size(); ++k) {
        const int layer = e.best_times()[k];
        s.route.stops.push_back({s.sequence[k], layer, instance.layer_time(layer)});
    }
    s.route.total_profit = s.value;
    return s;
}

double lipschitz_constant(const Instance& instance) {
    double k = 0.0;
    const auto& profits = instance.profits();
    for (std::size_t i = 1; i < profits.size(); ++i) {
        const auto slope = profits[i].lipschitz(instance.budget());
        if (!slope) {
            fail(ErrorCode::validation, "vertex " + std::to_string(i) + " has a discontinuous " +
                                            std::string(to_string(profits[i].kind())) +
                                            " profit; no finite Lipschitz constant");
        }
        k = std::max(k, *slope);
    }
    return k;
}

double discretization_bound(int n, double lipschitz, double dt) {
    return static_cast<double>(n) * static_cast<double>(n + 1) / 2.0 * lipschitz * dt;
}

OracleReport check_error_bound(const Instance& instance, int cap) {
    check_cap(instance, cap);
    OracleReport r;
    r.n = instance.n();
    r.lipschitz = lipschitz_constant(instance);
    r.bound = discretization_bound(r.n, r.lipschitz, instance.dt());

    const auto continuous = brute_force_continuous(instance, cap);
    const auto discrete = brute_force_discrete(instance, cap);
    const Route dp = solve(instance.with_destination(std::nullopt));

    r.z_continuous = continuous.value;
    r.z_discrete = discrete.value;
    r.dp_value = dp.total_profit;
    r.optimal_sequence = continuous.sequence;
    r.discrete_sequence = discrete.sequence;
    for (const auto& s : dp.stops) r.dp_sequence.push_back(s.vertex);
    r.bound_holds = std::abs(r.z_continuous - r.z_discrete) <= r.bound + 1e-9;
    return r;
}

std::string save_oracle_report(const OracleReport& r) {
    nlohmann::json doc{
        {"n", r.n},
        {"z_continuous", r.z_continuous},
        {"z_discrete", r.z_discrete},
        {"dp_value", r.dp_value},
        {"K", r.lipschitz},
        {"bound", r.bound},
        {"bound_holds", r.bound_holds},
        {"optimal_sequence", r.optimal_sequence},
        {"discrete_sequence", r.discrete_sequence},
        {"dp_sequence", r.dp_sequence},
    };
    return doc.dump(1) + "\n";
}

}  // namespace tvop

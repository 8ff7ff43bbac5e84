// Licensed under the Apache License 2.0 (see LICENSE file).

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <json.hpp>

#include "oracles.hpp"
#include "support.hpp"
#include "tvop/error.hpp"
#include "tvop/feasibility.hpp"
#include "tvop/oracle.hpp"
#include "tvop/router.hpp"

using namespace tvop;
using namespace tvop::testing;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected tvop::Error");
    return ErrorCode::internal;
}

// Same geometry with the non-start ids shuffled.
Instance relabel(const Instance& inst, std::uint64_t seed) {
    std::vector<int> perm(static_cast<std::size_t>(inst.n()));
    std::iota(perm.begin(), perm.end(), 1);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<SpatialVertex> vs{inst.vertex(0)};
    std::vector<ProfitFunction> fs{inst.profits()[0]};
    for (int k = 0; k < inst.n(); ++k) {
        auto v = inst.vertex(perm[static_cast<std::size_t>(k)]);
        v.id = k + 1;
        vs.push_back(v);
        fs.push_back(inst.profits()[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])]);
    }
    return Instance::euclidean(vs, fs, inst.budget(), inst.dt());
}

}  // namespace

TEST_CASE("single collectible vertex") {
    // f(t) = t is linear with w = h.
    const auto inst = matrix_instance({{0, 3.7}, {3.7, 0}}, [](int) { return ProfitFunction::linear(5, 5); }, 5, 1);
    const auto z = brute_force_continuous(inst);
    CHECK(z.value == doctest::Approx(3.7));
    CHECK(z.sequence == std::vector<int>{0, 1});
    CHECK(z.route.stops.back().time == doctest::Approx(3.7));
    CHECK(z.route.time_model == TimeModel::continuous);
    const auto zd = brute_force_discrete(inst);
    CHECK(zd.value == doctest::Approx(4.0));
    CHECK(zd.route.stops.back().layer == 4);
}

TEST_CASE("nothing reachable") {
    const auto inst = euclidean_instance({{0, 0}, {10, 0}, {0, 11}}, [](int) { return ProfitFunction::constant(3); },
                                         9, 1);
    for (const auto& sol : {brute_force_continuous(inst), brute_force_discrete(inst)}) {
        CHECK(sol.value == 0.0);
        CHECK(sol.sequence == std::vector<int>{0});
        CHECK(sol.route.is_trivial());
    }
}

TEST_CASE("hand-computable rounding gap") {
    const auto inst = matrix_instance({{0, 2.4}, {2.4, 0}}, [](int) { return ProfitFunction::linear(5, 5); }, 5, 1);
    const auto report = check_error_bound(inst);
    CHECK(report.z_discrete == doctest::Approx(2.0));
    CHECK(report.z_continuous == doctest::Approx(2.4));
    CHECK(report.lipschitz == doctest::Approx(1.0));
    CHECK(report.bound == doctest::Approx(1.0));
    CHECK(report.bound_holds);
}

TEST_CASE("both enumerators agree with an independent permutation search") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        CAPTURE(seed);
        const auto inst = generate_random(options(8, ProfitKind::linear, 100, 1, 500 + seed));
        const auto ref_c = permutation_optimum(inst, false);
        const auto ref_d = permutation_optimum(inst, true);
        const auto z = brute_force_continuous(inst);
        const auto zd = brute_force_discrete(inst);
        CHECK(z.value == doctest::Approx(ref_c.value).epsilon(1e-12));
        CHECK(zd.value == doctest::Approx(ref_d.value).epsilon(1e-12));
        CHECK(recompute_profit(z.route, inst) == doctest::Approx(z.value).epsilon(1e-12));
        CHECK(check_feasible(zd.route, inst).empty());
        CHECK(check_feasible(z.route, inst).empty());
        CHECK(solve(inst).total_profit <= zd.value + 1e-9);
    }
    for (auto kind : {ProfitKind::quadratic, ProfitKind::logarithmic, ProfitKind::quadrant_step, ProfitKind::table}) {
        const auto inst = generate_random(options(7, kind, 120, 2, 9));
        CHECK(brute_force_discrete(inst).value == doctest::Approx(permutation_optimum(inst, true).value));
        CHECK(brute_force_continuous(inst).value == doctest::Approx(permutation_optimum(inst, false).value));
    }
}

TEST_CASE("exact multiples of dt make the two optima coincide") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> tau(1, 12);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 6;
        std::vector<std::vector<double>> m(n + 1, std::vector<double>(n + 1, 0.0));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 2.0 * tau(rng);
        const auto inst = matrix_instance(m, [](int i) { return ProfitFunction::linear(i, 40); }, 40, 2);
        const auto report = check_error_bound(inst);
        CHECK(report.z_continuous == doctest::Approx(report.z_discrete).epsilon(1e-12));
        CHECK(report.bound_holds);
        // Refining dt keeps every coarse schedule, and nothing new appears.
        CHECK(brute_force_discrete(inst.with_dt(1)).value == doctest::Approx(report.z_discrete).epsilon(1e-12));
    }
}

TEST_CASE("optima are invariant to relabeling") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto inst = generate_random(options(7, ProfitKind::logarithmic, 90, 1, seed));
        const auto other = relabel(inst, seed + 99);
        CHECK(brute_force_discrete(other).value == doctest::Approx(brute_force_discrete(inst).value).epsilon(1e-12));
        CHECK(brute_force_continuous(other).value ==
              doctest::Approx(brute_force_continuous(inst).value).epsilon(1e-12));
    }
}

TEST_CASE("lipschitz constants per family") {
    auto with_weights = [](ProfitKind kind, double T) {
        return euclidean_instance({{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                                  [&](int i) {
                                      const double w = i == 2 ? 10.0 : 2.0;
                                      switch (kind) {
                                          case ProfitKind::linear: return ProfitFunction::linear(w, T);
                                          case ProfitKind::quadratic: return ProfitFunction::quadratic(w, T);
                                          case ProfitKind::logarithmic: return ProfitFunction::logarithmic(i == 2 ? 2.0 : 1.0);
                                          case ProfitKind::quadrant_step: return ProfitFunction::quadrant_step(w, T, Quadrant::I);
                                          case ProfitKind::table: return ProfitFunction::table({{0, 1}, {5, 2}});
                                          default: return ProfitFunction::constant(w);
                                      }
                                  },
                                  T, 1);
    };
    CHECK(lipschitz_constant(with_weights(ProfitKind::linear, 100)) == doctest::Approx(0.1));
    CHECK(lipschitz_constant(with_weights(ProfitKind::constant, 100)) == 0.0);
    CHECK(lipschitz_constant(with_weights(ProfitKind::logarithmic, 100)) == doctest::Approx(2.0));
    // f' = w (h - 2t) / h^2 is w / h at both ends of [0, h].
    CHECK(lipschitz_constant(with_weights(ProfitKind::quadratic, 100)) == doctest::Approx(0.1));
    CHECK(code_of([&] { lipschitz_constant(with_weights(ProfitKind::table, 100)); }) == ErrorCode::validation);
    CHECK(code_of([&] { lipschitz_constant(with_weights(ProfitKind::quadrant_step, 100)); }) ==
          ErrorCode::validation);
    // Past the horizon the quadratic steepens: |f'(T)| = w (2T - h) / h^2.
    const auto q = ProfitFunction::quadratic(4.0, 100.0);
    CHECK(*q.lipschitz(150.0) == doctest::Approx(4.0 * 200.0 / 10000.0));
    // The closed forms dominate a dense finite-difference estimate.
    for (auto f : {ProfitFunction::linear(7, 50), ProfitFunction::quadratic(3, 50), ProfitFunction::logarithmic(2)}) {
        CHECK(f.sampled_slope(50, 5000) <= *f.lipschitz(50) + 1e-9);
        CHECK(f.sampled_slope(50, 5000) >= 0.95 * *f.lipschitz(50));
    }
    CHECK(discretization_bound(4, 0.1, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("constant profits close the gap when every vertex fits") {
    // A budget long enough for any order in both time models.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = generate_random(options(6, ProfitKind::constant, 1000, 1, seed));
        const auto r = check_error_bound(inst);
        CHECK(r.lipschitz == 0.0);
        CHECK(r.bound == 0.0);
        CHECK(r.z_continuous == r.z_discrete);
        CHECK(r.bound_holds);
    }
}

TEST_CASE("rounding can change which vertex sets fit a binding budget") {
    // 2.4 + 2.7 = 5.1 exceeds T = 5, but the rounded hops 2 + 3 fit exactly.
    // With K = 0 the bound is 0, yet the discrete optimum collects one more
    // vertex: the bound only covers schedules feasible in both time models.
    const auto inst = matrix_instance({{0, 2.4, 9}, {9, 0, 2.7}, {9, 9, 0}},
                                      [](int) { return ProfitFunction::constant(1); }, 5, 1);
    const auto r = check_error_bound(inst);
    CHECK(r.z_continuous == 1.0);
    CHECK(r.z_discrete == 2.0);
    CHECK(r.bound == 0.0);
    CHECK_FALSE(r.bound_holds);
}

TEST_CASE("oracle cap") {
    const auto inst = generate_random(options(11, ProfitKind::linear, 10, 1, 0));
    CHECK(code_of([&] { brute_force_discrete(inst); }) == ErrorCode::cap_exceeded);
    CHECK(code_of([&] { brute_force_continuous(inst); }) == ErrorCode::cap_exceeded);
    CHECK_NOTHROW(brute_force_discrete(inst, 11));
    CHECK(code_of([&] { brute_force_discrete(generate_random(options(13, ProfitKind::linear, 5, 1, 0)), 13); }) ==
          ErrorCode::cap_exceeded);
}

TEST_CASE("report fields and serialization") {
    const auto inst = generate_random(options(6, ProfitKind::linear, 100, 0.5, 3));
    const auto r = check_error_bound(inst);
    CHECK(r.n == 6);
    CHECK(r.dp_value <= r.z_discrete + 1e-9);
    CHECK(r.bound == doctest::Approx(21 * r.lipschitz * 0.5));
    CHECK(r.bound_holds == (std::abs(r.z_continuous - r.z_discrete) <= r.bound + 1e-9));
    CHECK(r.optimal_sequence.front() == 0);
    const auto j = nlohmann::json::parse(save_oracle_report(r));
    for (const char* key : {"n", "z_continuous", "z_discrete", "dp_value", "K", "bound", "bound_holds",
                            "optimal_sequence"}) {
        CHECK(j.contains(key));
    }
    // The fan-out over first hops merges deterministically.
    const auto again = check_error_bound(inst);
    CHECK(again.optimal_sequence == r.optimal_sequence);
    CHECK(again.discrete_sequence == r.discrete_sequence);
}

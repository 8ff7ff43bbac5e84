// Licensed under the Apache License 2.0 (see LICENSE file).

#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "lp_grammar.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "tvop/baselines.hpp"
#include "tvop/error.hpp"
#include "tvop/feasibility.hpp"
#include "tvop/mip.hpp"
#include "tvop/oracle.hpp"
#include "tvop/router.hpp"
#include "tvop/st_graph.hpp"

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

void check_lp_grammar(const std::string& text) {
    const auto problems = lp_grammar_problems(text);
    CHECK_MESSAGE(problems.empty(), (problems.empty() ? std::string() : problems.front()));
}

// Stops outside the instance cannot be scored; such routes keep their
// reported profit and fail on other grounds.
Route with_profit(Route r, const Instance& inst) {
    try {
        r.total_profit = recompute_profit(r, inst);
    } catch (const Error&) {
    }
    return r;
}

bool has_code(const std::vector<Violation>& v, ViolationCode code) {
    for (const auto& x : v)
        if (x.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("single-vertex model is empty but valid") {
    const Instance inst = Instance::euclidean({{0, 0, 0, 0}}, {ProfitFunction::zero()}, 3, 1);
    const auto text = emit_mip(inst);
    check_lp_grammar(text);
    const auto model = parse_lp(text);
    std::size_t edges = 0;
    for (const auto& b : model.binaries) edges += b.rfind("y_", 0) == 0;
    CHECK(edges == 0);
    const Assignment a = route_assignment(trivial_route("dp"));
    CHECK(unsatisfied_rows(model, a).empty());
    CHECK(objective_value(model, a) == 0.0);
}

TEST_CASE("three-vertex example: one binary per edge and per vertex") {
    const auto inst = read_instance_file(fixture("three_vertex.json"));
    const auto g = StGraph::build(inst);
    const auto text = emit_mip(inst);
    check_lp_grammar(text);
    const auto model = parse_lp(text);
    CHECK(model.maximize);
    CHECK(model.binaries.size() == g.edge_count() + g.vertex_count());
    CHECK(std::set<std::string>(model.binaries.begin(), model.binaries.end()).size() == model.binaries.size());
    CHECK(text.find(edge_variable(0, 0, 1, 3)) != std::string::npos);
    CHECK(text.find(edge_variable(2, 0, 1, 5)) != std::string::npos);
    CHECK(edge_variable(2, 0, 1, 5) == "y_2_0_1_5");
    CHECK(visit_variable(1, 3) == "v_1_3");
}

TEST_CASE("paths and assignments correspond one to one (n <= 6)") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const auto inst = generate_random(options(n, ProfitKind::linear, 90, 2, seed));
        const auto text = emit_mip(inst);
        check_lp_grammar(text);
        const auto model = parse_lp(text);
        const auto paths = all_paths(inst);
        double best = 0.0;
        std::set<Assignment> distinct;
        for (const auto& p : paths) {
            const auto a = route_assignment(p);
            CHECK(unsatisfied_rows(model, a).empty());
            CHECK(objective_value(model, a) == doctest::Approx(p.total_profit).epsilon(1e-12));
            const auto back = decode_assignment(a, inst);
            CHECK(back.stops == p.stops);
            CHECK(back.total_profit == doctest::Approx(p.total_profit).epsilon(1e-12));
            CHECK(check_feasible(p, inst).empty());
            distinct.insert(a);
            best = std::max(best, p.total_profit);
        }
        CHECK(distinct.size() == paths.size());
        CHECK(best == doctest::Approx(brute_force_discrete(inst).value).epsilon(1e-12));
    }
}

TEST_CASE("every feasible 0/1 assignment of a tiny model is a path") {
    // Unit travel times, two layers: 9 visit and 12 edge variables, so all
    // 2^21 assignments can be checked.
    const auto inst = matrix_instance({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}},
                                      [](int i) { return ProfitFunction::linear(i * 3.0, 2.0); }, 2, 1);
    const auto model = parse_lp(emit_mip(inst));
    const auto& vars = model.binaries;
    REQUIRE(vars.size() == 21);
    std::set<std::vector<std::pair<int, int>>> decoded;
    std::size_t feasible = 0;
    for (std::uint32_t mask = 0; mask < (1U << vars.size()); ++mask) {
        Assignment a;
        for (std::size_t k = 0; k < vars.size(); ++k)
            if (mask >> k & 1U) a[vars[k]] = 1;
        if (!unsatisfied_rows(model, a).empty()) continue;
        ++feasible;
        const auto r = decode_assignment(a, inst);
        CHECK(route_assignment(r) == a);
        CHECK(objective_value(model, a) == doctest::Approx(recompute_profit(r, inst)).epsilon(1e-12));
        CHECK(check_feasible(with_profit(r, inst), inst).empty());
        std::vector<std::pair<int, int>> key;
        for (const auto& st : r.stops) key.emplace_back(st.vertex, st.layer);
        decoded.insert(key);
    }
    const auto paths = all_paths(inst);
    CHECK(feasible == paths.size());
    CHECK(decoded.size() == paths.size());
}

TEST_CASE("check_feasible agrees with the emitted constraints") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto inst = generate_random(options(5, ProfitKind::logarithmic, 80, 1, seed));
        const auto model = parse_lp(emit_mip(inst));
        std::vector<Route> routes{solve(inst), brute_force_discrete(inst).route,
                                  center_of_gravity_route(inst).route};
        // Tampered variants of the DP route.
        Route dp = solve(inst);
        if (dp.stops.size() >= 2) {
            Route shifted = dp;
            shifted.stops.back().layer += 1;
            shifted.stops.back().time = shifted.stops.back().layer * inst.dt();
            routes.push_back(with_profit(shifted, inst));
            if (dp.stops.size() >= 3) {
                // Go back to the first collected vertex; layers stay consistent.
                Route revisit = dp;
                const int v = dp.stops[1].vertex;
                const int u = dp.finish_layer() + ref_layers(inst.travel_time(dp.stops.back().vertex, v), inst.dt());
                revisit.stops.push_back({v, u, u * inst.dt()});
                routes.push_back(with_profit(revisit, inst));
            }
            Route late = dp;
            late.stops.push_back({dp.stops.back().vertex == 1 ? 2 : 1, inst.layers() + 3, (inst.layers() + 3) * inst.dt()});
            late.total_profit = dp.total_profit;
            routes.push_back(late);
        }
        Route bad_start;
        bad_start.stops = {{1, 0, 0.0}};
        routes.push_back(with_profit(bad_start, inst));

        for (const auto& r : routes) {
            const bool feasible = check_feasible(r, inst).empty();
            const bool satisfies = unsatisfied_rows(model, route_assignment(r)).empty();
            CHECK(feasible == satisfies);
        }
    }
}

TEST_CASE("violation codes") {
    const auto inst = euclidean_instance({{0, 0}, {3, 0}, {3, 4}, {0, 4}},
                                         [](int i) { return ProfitFunction::linear(i, 20); }, 20, 1);
    auto route_of = [&](std::vector<std::pair<int, int>> stops) {
        Route r;
        for (auto [v, u] : stops) r.stops.push_back({v, u, u * inst.dt()});
        return with_profit(r, inst);
    };
    const auto ok = route_of({{0, 0}, {1, 3}, {2, 7}, {3, 10}});
    CHECK(check_feasible(ok, inst).empty());

    const auto revisit = check_feasible(route_of({{0, 0}, {1, 3}, {2, 7}, {1, 11}}), inst);
    CHECK(has_code(revisit, ViolationCode::revisit));
    CHECK(format_violations(revisit).rfind("REVISIT: ", 0) == 0);

    CHECK(has_code(check_feasible(route_of({{0, 0}, {1, 4}}), inst), ViolationCode::edge));
    CHECK(has_code(check_feasible(route_of({{1, 0}, {2, 4}}), inst), ViolationCode::start));
    CHECK(has_code(check_feasible(route_of({{0, 0}, {7, 3}}), inst), ViolationCode::edge));

    const auto long_inst = inst.with_budget(9);
    const auto over = check_feasible(route_of({{0, 0}, {1, 3}, {2, 7}, {3, 10}}), long_inst);
    CHECK(has_code(over, ViolationCode::budget));

    Route wrong = ok;
    wrong.total_profit += 0.5;
    const auto profit = check_feasible(wrong, inst);
    REQUIRE(profit.size() == 1);
    CHECK(profit[0].code == ViolationCode::profit);
    Route close = ok;
    close.total_profit += 1e-12;
    CHECK(check_feasible(close, inst).empty());

    // Continuous routes are checked against exact travel times.
    Route cont;
    cont.time_model = TimeModel::continuous;
    cont.stops = {{0, 0, 0.0}, {1, 0, 3.0}, {2, 0, 7.0}};
    cont.total_profit = recompute_profit(cont, inst);
    CHECK(check_feasible(cont, inst).empty());
    cont.stops[2].time = 7.5;
    cont.total_profit = recompute_profit(cont, inst);
    CHECK(has_code(check_feasible(cont, inst), ViolationCode::edge));

    for (auto c : {ViolationCode::start, ViolationCode::edge, ViolationCode::revisit, ViolationCode::budget,
                   ViolationCode::profit}) {
        CHECK_FALSE(to_string(c).empty());
    }
    CHECK(to_string(ViolationCode::budget) == "BUDGET");
}

TEST_CASE("LP reader rejects malformed text") {
    const auto good = emit_mip(read_instance_file(fixture("three_vertex.json")));
    CHECK_NOTHROW(parse_lp(good));
    auto message = [](const std::string& text) -> std::string {
        try {
            parse_lp(text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::validation);
            return e.what();
        }
        FAIL("expected a parse error");
        return {};
    };
    CHECK(message("Maximize\n obj: 2 x\nSubject To\n c1: x << 1\nBinary\n x\nEnd\n").find("line 4") !=
          std::string::npos);
    CHECK(message("Maximize\n obj: 2 x +\nSubject To\n c1: x <= 1\nBinary\n x\nEnd\n").find("line 2") !=
          std::string::npos);
    CHECK(message("Maximize\n obj: 2 x\nSubject To\n c1: x <= 1\nBinary\n x\n").find("End") != std::string::npos);
    CHECK(message("Maximize\n obj: 2 x\nSubject To\n c1: x + y <= 1\nBinary\n x\nEnd\n").find("y") !=
          std::string::npos);
    const auto parsed = parse_lp("\\ comment\nMaximize\n obj: 2 x\n  + 3 y\nSubject To\n c1: x + y <= 1\n\n"
                                 " c2: x\n  - y = 0\nBinary\n x y\nEnd\n");
    CHECK(parsed.rows.size() == 2);
    CHECK(parsed.rows[1].terms.size() == 2);
    CHECK(parsed.rows[1].terms[1].second == -1.0);
    CHECK(objective_value(parsed, {{"x", 1}, {"y", 0}}) == 2.0);
    CHECK(unsatisfied_rows(parsed, {{"x", 1}, {"y", 1}}) == std::vector<std::string>{"c1"});
}

TEST_CASE("variable cap") {
    const auto inst = generate_random(options(30, ProfitKind::linear, 100, 1, 0));
    CHECK(code_of([&] { emit_mip(inst, 1000); }) == ErrorCode::cap_exceeded);
    CHECK_NOTHROW(emit_mip(inst));
}

TEST_CASE("route documents round trip") {
    const auto inst = generate_random(options(12, ProfitKind::quadratic, 80, 0.5, 2));
    for (const auto& r : {solve(inst), center_of_gravity_route(inst).route, brute_force_continuous(inst, 12).route}) {
        const auto back = load_route(save_route(r, inst.dt()));
        CHECK(back.solver == r.solver);
        CHECK(back.time_model == r.time_model);
        CHECK(back.stops.size() == r.stops.size());
        for (std::size_t k = 0; k < r.stops.size(); ++k) {
            CHECK(back.stops[k].vertex == r.stops[k].vertex);
            CHECK(back.stops[k].time == r.stops[k].time);
            if (r.time_model == TimeModel::discrete) CHECK(back.stops[k].layer == r.stops[k].layer);
        }
        CHECK(back.total_profit == r.total_profit);
        CHECK(back.static_profit == r.static_profit);
        CHECK(check_feasible(back, inst).empty());
    }
    const auto path = std::filesystem::temp_directory_path() / "tvop_route_roundtrip.json";
    write_route_file(solve(inst), inst.dt(), path.string());
    CHECK(read_route_file(path.string()) == load_route(save_route(solve(inst), inst.dt())));
    std::filesystem::remove(path);
    CHECK(code_of([] { load_route("{}"); }) == ErrorCode::validation);
    CHECK(code_of([] { load_route("nope"); }) == ErrorCode::validation);
}

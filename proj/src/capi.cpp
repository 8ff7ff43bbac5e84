// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/tvop.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "tvop/baselines.hpp"
#include "tvop/error.hpp"
#include "tvop/feasibility.hpp"
#include "tvop/ingest.hpp"
#include "tvop/instance.hpp"
#include "tvop/mip.hpp"
#include "tvop/oracle.hpp"
#include "tvop/route.hpp"
#include "tvop/router.hpp"
#include "tvop/st_graph.hpp"

struct tvop_instance {
    tvop::Instance value;
};

struct tvop_route {
    tvop::Route value;
};

struct tvop_events {
    tvop::EventSet value;
};

struct tvop_region_model {
    tvop::RegionModel value;
};

namespace {

thread_local std::string g_last_error;

tvop_status to_status(tvop::ErrorCode code) {
    switch (code) {
        case tvop::ErrorCode::invalid_argument: return TVOP_ERR_INVALID_ARGUMENT;
        case tvop::ErrorCode::validation: return TVOP_ERR_VALIDATION;
        case tvop::ErrorCode::no_route: return TVOP_ERR_NO_ROUTE;
        case tvop::ErrorCode::cap_exceeded: return TVOP_ERR_CAP_EXCEEDED;
        case tvop::ErrorCode::io: return TVOP_ERR_IO;
        case tvop::ErrorCode::internal: return TVOP_ERR_INTERNAL;
    }
    return TVOP_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes at the boundary.
template <class Fn>
tvop_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return TVOP_OK;
    } catch (const tvop::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TVOP_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TVOP_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return TVOP_ERR_INTERNAL;
    }
}

void require(const void* p, const char* name) {
    if (p == nullptr) tvop::fail(tvop::ErrorCode::invalid_argument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int kind_code(tvop::ProfitKind kind) {
    switch (kind) {
        case tvop::ProfitKind::constant: return TVOP_PROFIT_CONSTANT;
        case tvop::ProfitKind::linear: return TVOP_PROFIT_LINEAR;
        case tvop::ProfitKind::quadratic: return TVOP_PROFIT_QUADRATIC;
        case tvop::ProfitKind::logarithmic: return TVOP_PROFIT_LOGARITHMIC;
        case tvop::ProfitKind::quadrant_step: return TVOP_PROFIT_QUADRANT_STEP;
        case tvop::ProfitKind::table: return TVOP_PROFIT_TABLE;
    }
    return TVOP_PROFIT_MIXED;
}

tvop::ProfitKind kind_from_code(int code) {
    switch (code) {
        case TVOP_PROFIT_CONSTANT: return tvop::ProfitKind::constant;
        case TVOP_PROFIT_LINEAR: return tvop::ProfitKind::linear;
        case TVOP_PROFIT_QUADRATIC: return tvop::ProfitKind::quadratic;
        case TVOP_PROFIT_LOGARITHMIC: return tvop::ProfitKind::logarithmic;
        case TVOP_PROFIT_QUADRANT_STEP: return tvop::ProfitKind::quadrant_step;
        case TVOP_PROFIT_TABLE: return tvop::ProfitKind::table;
        default: break;
    }
    tvop::fail(tvop::ErrorCode::invalid_argument, "unknown profit kind code " + std::to_string(code));
}

tvop_instance* wrap(tvop::Instance inst) { return new tvop_instance{std::move(inst)}; }

std::string plot_csv(const tvop::Instance& inst, const tvop::Route& route) {
    const auto violations = tvop::check_feasible(route, inst);
    if (!violations.empty()) {
        tvop::fail(tvop::ErrorCode::validation,
                   "route fails the feasibility check:\n" + tvop::format_violations(violations));
    }
    std::vector<int> order(inst.vertex_count(), -1);
    std::vector<double> time(inst.vertex_count(), 0.0);
    for (std::size_t k = 0; k < route.stops.size(); ++k) {
        const auto v = static_cast<std::size_t>(route.stops[k].vertex);
        if (order[v] >= 0) continue;  // closing return to the start
        order[v] = static_cast<int>(k);
        time[v] = route.stops[k].time;
    }
    std::ostringstream os;
    os.precision(17);
    os << "id,x,y,weight,order,t\n";
    for (const auto& v : inst.vertices()) {
        const auto id = static_cast<std::size_t>(v.id);
        os << v.id << ',' << v.x << ',' << v.y << ',' << v.weight << ',';
        if (order[id] >= 0) os << order[id] << ',' << time[id];
        else os << ',';
        os << '\n';
    }
    return os.str();
}

}  // namespace

extern "C" {

const char* tvop_version(void) { return "1.0.0"; }

const char* tvop_last_error(void) { return g_last_error.c_str(); }

const char* tvop_status_name(tvop_status status) {
    switch (status) {
        case TVOP_OK: return "OK";
        case TVOP_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
        case TVOP_ERR_VALIDATION: return "VALIDATION";
        case TVOP_ERR_NO_ROUTE: return "NOROUTE";
        case TVOP_ERR_CAP_EXCEEDED: return "CAP_EXCEEDED";
        case TVOP_ERR_IO: return "IO";
        case TVOP_ERR_INTERNAL: return "INTERNAL";
    }
    return "UNKNOWN";
}

void tvop_string_free(char* s) { std::free(s); }

int tvop_profit_kind_from_name(const char* name) {
    if (name == nullptr) return -1;
    const auto kind = tvop::parse_profit_kind(name);
    return kind ? kind_code(*kind) : -1;
}

const char* tvop_profit_kind_name(int kind) {
    if (kind == TVOP_PROFIT_MIXED) return "mixed";
    try {
        return tvop::to_string(kind_from_code(kind)).data();
    } catch (const tvop::Error&) {
        return "unknown";
    }
}

int tvop_solver_from_name(const char* name) {
    if (name == nullptr) return -1;
    const std::string s(name);
    if (s == "dp") return TVOP_SOLVER_DP;
    if (s == "cog") return TVOP_SOLVER_COG;
    if (s == "oracle-discrete") return TVOP_SOLVER_ORACLE_DISCRETE;
    if (s == "oracle-continuous") return TVOP_SOLVER_ORACLE_CONTINUOUS;
    return -1;
}

void tvop_generate_params_init(tvop_generate_params* p) {
    if (p == nullptr) return;
    const tvop::GenerateOptions d;
    p->n = d.n;
    p->xmin = d.bounds.xmin;
    p->xmax = d.bounds.xmax;
    p->ymin = d.bounds.ymin;
    p->ymax = d.bounds.ymax;
    p->profit_kind = kind_code(d.profit);
    p->T = d.budget;
    p->dt = d.dt;
    p->seed = d.seed;
    p->start_x = d.start_x;
    p->start_y = d.start_y;
    p->weight_min = d.weight_min;
    p->weight_max = d.weight_max;
    p->skew = TVOP_SKEW_NONE;
    p->min_separation = d.min_separation;
    p->horizon = 0.0;
}

tvop_status tvop_instance_generate(const tvop_generate_params* p, tvop_instance** out) {
    return guarded([&] {
        require(p, "params");
        require(out, "out");
        tvop::GenerateOptions o;
        o.n = p->n;
        o.bounds = {p->xmin, p->xmax, p->ymin, p->ymax};
        o.profit = kind_from_code(p->profit_kind);
        o.budget = p->T;
        o.dt = p->dt;
        o.seed = p->seed;
        o.start_x = p->start_x;
        o.start_y = p->start_y;
        o.weight_min = p->weight_min;
        o.weight_max = p->weight_max;
        if (p->skew == TVOP_SKEW_UPPER_RIGHT) o.skew = tvop::WeightSkew::upper_right;
        else if (p->skew != TVOP_SKEW_NONE) tvop::fail(tvop::ErrorCode::invalid_argument, "unknown weight skew");
        o.min_separation = p->min_separation;
        if (p->horizon > 0.0) o.horizon = p->horizon;
        *out = wrap(tvop::generate_random(o));
    });
}

tvop_status tvop_instance_from_json(const char* text, tvop_instance** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = wrap(tvop::load_instance(text));
    });
}

tvop_status tvop_instance_to_json(const tvop_instance* instance, char** out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = dup_string(tvop::save_instance(instance->value));
    });
}

tvop_status tvop_instance_read_file(const char* path, tvop_instance** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = wrap(tvop::read_instance_file(path));
    });
}

tvop_status tvop_instance_write_file(const tvop_instance* instance, const char* path) {
    return guarded([&] {
        require(instance, "instance");
        require(path, "path");
        tvop::write_instance_file(instance->value, path);
    });
}

tvop_status tvop_instance_clone_with_budget(const tvop_instance* instance, double T, tvop_instance** out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = wrap(instance->value.with_budget(T));
    });
}

tvop_status tvop_instance_clone_with_dt(const tvop_instance* instance, double dt, tvop_instance** out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = wrap(instance->value.with_dt(dt));
    });
}

tvop_status tvop_instance_summary_get(const tvop_instance* instance, tvop_instance_summary* out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        const auto& inst = instance->value;
        out->n = inst.n();
        out->T = inst.budget();
        out->dt = inst.dt();
        out->layers = inst.layers();
        const auto kind = inst.uniform_profit_kind();
        out->profit_kind = kind ? kind_code(*kind) : TVOP_PROFIT_MIXED;
        out->destination = inst.destination().value_or(-1);
        out->euclidean = inst.is_euclidean() ? 1 : 0;
        out->budget_adjusted = inst.budget_adjusted() ? 1 : 0;
    });
}

tvop_status tvop_instance_vertex(const tvop_instance* instance, int id, double* x, double* y, double* weight) {
    return guarded([&] {
        require(instance, "instance");
        if (id < 0 || id > instance->value.n()) {
            tvop::fail(tvop::ErrorCode::invalid_argument, "unknown vertex " + std::to_string(id));
        }
        const auto& v = instance->value.vertex(id);
        if (x) *x = v.x;
        if (y) *y = v.y;
        if (weight) *weight = v.weight;
    });
}

tvop_status tvop_evaluate_profit(const tvop_instance* instance, int vertex, double t, double* out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = instance->value.profit(vertex, t);
    });
}

tvop_status tvop_travel_time(const tvop_instance* instance, int i, int j, double* out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = instance->value.travel_time(i, j);
    });
}

void tvop_instance_destroy(tvop_instance* instance) { delete instance; }

tvop_status tvop_st_graph_stats(const tvop_instance* instance, size_t* vertices, size_t* edges) {
    return guarded([&] {
        require(instance, "instance");
        const auto g = tvop::StGraph::build(instance->value);
        if (vertices) *vertices = g.vertex_count();
        if (edges) *edges = g.edge_count();
    });
}

tvop_status tvop_st_graph_edge_dump(const tvop_instance* instance, char** out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = dup_string(tvop::StGraph::build(instance->value).edge_dump());
    });
}

tvop_status tvop_solve(const tvop_instance* instance, tvop_solver solver, const tvop_solve_options* options,
                       tvop_route** out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        const int dest = options ? options->destination : TVOP_DESTINATION_FROM_INSTANCE;
        const int cap = (options && options->oracle_cap > 0) ? options->oracle_cap : tvop::kDefaultOracleCap;

        tvop::Instance inst = instance->value;
        if (dest == TVOP_DESTINATION_FREE) inst = inst.with_destination(std::nullopt);
        else if (dest >= 0) {
            if (dest > inst.n()) {
                tvop::fail(tvop::ErrorCode::invalid_argument, "destination " + std::to_string(dest) + " is not a vertex");
            }
            inst = inst.with_destination(dest);
        } else if (dest != TVOP_DESTINATION_FROM_INSTANCE) {
            tvop::fail(tvop::ErrorCode::invalid_argument, "bad destination selector " + std::to_string(dest));
        }

        tvop::Route route;
        switch (solver) {
            case TVOP_SOLVER_DP:
                route = tvop::solve(inst);
                break;
            case TVOP_SOLVER_COG:
                if (inst.destination()) {
                    tvop::fail(tvop::ErrorCode::invalid_argument, "the cog baseline has a free destination only");
                }
                route = tvop::center_of_gravity_route(inst).route;
                break;
            case TVOP_SOLVER_ORACLE_DISCRETE:
            case TVOP_SOLVER_ORACLE_CONTINUOUS:
                if (inst.destination()) {
                    tvop::fail(tvop::ErrorCode::invalid_argument, "oracle solvers have a free destination only");
                }
                route = solver == TVOP_SOLVER_ORACLE_DISCRETE ? tvop::brute_force_discrete(inst, cap).route
                                                              : tvop::brute_force_continuous(inst, cap).route;
                break;
            default:
                tvop::fail(tvop::ErrorCode::invalid_argument, "unknown solver " + std::to_string(solver));
        }
        *out = new tvop_route{std::move(route)};
    });
}

tvop_status tvop_route_summary_get(const tvop_route* route, tvop_route_summary* out) {
    return guarded([&] {
        require(route, "route");
        require(out, "out");
        const auto& r = route->value;
        out->stop_count = r.stops.size();
        out->total_profit = r.total_profit;
        out->finish_time = r.finish_time();
        out->finish_layer = r.finish_layer();
        out->continuous = r.time_model == tvop::TimeModel::continuous ? 1 : 0;
        out->has_static_profit = r.static_profit ? 1 : 0;
        out->static_profit = r.static_profit.value_or(0.0);
    });
}

tvop_status tvop_route_stop(const tvop_route* route, size_t index, int* vertex, int* layer, double* time) {
    return guarded([&] {
        require(route, "route");
        if (index >= route->value.stops.size()) {
            tvop::fail(tvop::ErrorCode::invalid_argument, "stop index out of range");
        }
        const auto& s = route->value.stops[index];
        if (vertex) *vertex = s.vertex;
        if (layer) *layer = s.layer;
        if (time) *time = s.time;
    });
}

tvop_status tvop_route_solver(const tvop_route* route, char** out) {
    return guarded([&] {
        require(route, "route");
        require(out, "out");
        *out = dup_string(route->value.solver);
    });
}

tvop_status tvop_route_to_json(const tvop_route* route, double dt, char** out) {
    return guarded([&] {
        require(route, "route");
        require(out, "out");
        *out = dup_string(tvop::save_route(route->value, dt));
    });
}

tvop_status tvop_route_from_json(const char* text, tvop_route** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new tvop_route{tvop::load_route(text)};
    });
}

tvop_status tvop_route_read_file(const char* path, tvop_route** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new tvop_route{tvop::read_route_file(path)};
    });
}

tvop_status tvop_route_write_file(const tvop_route* route, double dt, const char* path) {
    return guarded([&] {
        require(route, "route");
        require(path, "path");
        tvop::write_route_file(route->value, dt, path);
    });
}

void tvop_route_destroy(tvop_route* route) { delete route; }

tvop_status tvop_check_feasible(const tvop_route* route, const tvop_instance* instance, size_t* violations,
                                char** report) {
    return guarded([&] {
        require(route, "route");
        require(instance, "instance");
        require(violations, "violations");
        const auto v = tvop::check_feasible(route->value, instance->value);
        *violations = v.size();
        if (report) *report = dup_string(tvop::format_violations(v));
    });
}

tvop_status tvop_lipschitz_constant(const tvop_instance* instance, double* out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = tvop::lipschitz_constant(instance->value);
    });
}

tvop_status tvop_oracle_check(const tvop_instance* instance, int cap, tvop_oracle_report* out, char** json) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        const auto r = tvop::check_error_bound(instance->value, cap > 0 ? cap : tvop::kDefaultOracleCap);
        out->n = r.n;
        out->z_continuous = r.z_continuous;
        out->z_discrete = r.z_discrete;
        out->dp_value = r.dp_value;
        out->lipschitz = r.lipschitz;
        out->bound = r.bound;
        out->bound_holds = r.bound_holds ? 1 : 0;
        if (json) *json = dup_string(tvop::save_oracle_report(r));
    });
}

tvop_status tvop_emit_mip(const tvop_instance* instance, size_t variable_cap, char** out) {
    return guarded([&] {
        require(instance, "instance");
        require(out, "out");
        *out = dup_string(tvop::emit_mip(instance->value, variable_cap ? variable_cap : tvop::kDefaultMipVariableCap));
    });
}

tvop_status tvop_lp_check(const char* text, size_t* rows, size_t* binaries) {
    return guarded([&] {
        require(text, "text");
        const auto model = tvop::parse_lp(text);
        if (rows) *rows = model.rows.size();
        if (binaries) *binaries = model.binaries.size();
    });
}

tvop_status tvop_plot_data(const tvop_instance* instance, const tvop_route* route, char** csv) {
    return guarded([&] {
        require(instance, "instance");
        require(route, "route");
        require(csv, "csv");
        *csv = dup_string(plot_csv(instance->value, route->value));
    });
}

tvop_status tvop_events_from_csv(const char* text, tvop_events** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new tvop_events{tvop::load_events(text)};
    });
}

tvop_status tvop_events_read_file(const char* path, tvop_events** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new tvop_events{tvop::read_events_file(path)};
    });
}

size_t tvop_events_count(const tvop_events* events) { return events ? events->value.events.size() : 0; }

void tvop_events_destroy(tvop_events* events) { delete events; }

tvop_status tvop_region_model_build(const tvop_events* events, int k, uint64_t seed, int max_iters, double bin_width,
                                    tvop_region_model** out) {
    return guarded([&] {
        require(events, "events");
        require(out, "out");
        *out = new tvop_region_model{tvop::build_region_model(events->value, k, seed, max_iters, bin_width)};
    });
}

tvop_status tvop_region_model_to_json(const tvop_region_model* model, char** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = dup_string(tvop::save_region_model(model->value));
    });
}

tvop_status tvop_region_instance(const tvop_region_model* model, double T, double dt, double start_x, double start_y,
                                 tvop_instance** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = wrap(tvop::build_region_instance(model->value, T, dt, {start_x, start_y}));
    });
}

void tvop_region_model_destroy(tvop_region_model* model) { delete model; }

}  // extern "C"

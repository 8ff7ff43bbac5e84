// Licensed under the Apache License 2.0 (see LICENSE file).
//
// Command-line front end. Talks to the solver exclusively through the C API.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tvop/tvop.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode {
    kExitOk = 0,
    kExitInternal = 1,
    kExitUsage = 2,
    kExitValidation = 3,
    kExitNoRoute = 4,
    kExitCap = 5,
    kExitIo = 6,
};

int exit_code_for(tvop_status s) {
    switch (s) {
        case TVOP_OK: return kExitOk;
        case TVOP_ERR_INVALID_ARGUMENT: return kExitUsage;
        case TVOP_ERR_VALIDATION: return kExitValidation;
        case TVOP_ERR_NO_ROUTE: return kExitNoRoute;
        case TVOP_ERR_CAP_EXCEEDED: return kExitCap;
        case TVOP_ERR_IO: return kExitIo;
        case TVOP_ERR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

// Carries a C API failure up to main, which prints it and picks the exit code.
struct CliFailure {
    int exit_code;
    std::string message;
};

void check(tvop_status s, const std::string& context) {
    if (s != TVOP_OK) {
        throw CliFailure{exit_code_for(s), context + ": " + tvop_status_name(s) + ": " + tvop_last_error()};
    }
}

[[noreturn]] void usage_error(const std::string& message) { throw CliFailure{kExitUsage, message}; }

struct InstanceDeleter {
    void operator()(tvop_instance* p) const { tvop_instance_destroy(p); }
};
struct RouteDeleter {
    void operator()(tvop_route* p) const { tvop_route_destroy(p); }
};
struct EventsDeleter {
    void operator()(tvop_events* p) const { tvop_events_destroy(p); }
};
struct ModelDeleter {
    void operator()(tvop_region_model* p) const { tvop_region_model_destroy(p); }
};
struct StringDeleter {
    void operator()(char* p) const { tvop_string_free(p); }
};
using InstancePtr = std::unique_ptr<tvop_instance, InstanceDeleter>;
using RoutePtr = std::unique_ptr<tvop_route, RouteDeleter>;
using EventsPtr = std::unique_ptr<tvop_events, EventsDeleter>;
using ModelPtr = std::unique_ptr<tvop_region_model, ModelDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) { return std::string(CString(s).get()); }

InstancePtr read_instance(const std::string& path) {
    tvop_instance* raw = nullptr;
    check(tvop_instance_read_file(path.c_str(), &raw), "reading " + path);
    return InstancePtr(raw);
}

RoutePtr read_route(const std::string& path) {
    tvop_route* raw = nullptr;
    check(tvop_route_read_file(path.c_str(), &raw), "reading " + path);
    return RoutePtr(raw);
}

tvop_instance_summary summary_of(const tvop_instance* inst) {
    tvop_instance_summary s{};
    check(tvop_instance_summary_get(inst, &s), "summary");
    return s;
}

tvop_route_summary summary_of(const tvop_route* route) {
    tvop_route_summary s{};
    check(tvop_route_summary_get(route, &s), "route summary");
    return s;
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw CliFailure{kExitIo, "cannot create output directory " + dir + ": " + ec.message()};
    return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliFailure{kExitIo, "cannot write " + path.string()};
    out << text;
    if (!out) throw CliFailure{kExitIo, "failed writing " + path.string()};
}

// "A..B" (inclusive) or a single number.
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const auto v = std::stoull(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {v};
        }
        const auto a = std::stoull(text.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument(text);
        const auto rest = text.substr(dots + 2);
        const auto b = std::stoull(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        if (b < a) usage_error("seed range " + text + " is empty");
        std::vector<std::uint64_t> out;
        for (auto s = a; s <= b; ++s) out.push_back(s);
        return out;
    } catch (const std::logic_error&) {
        usage_error("--seeds expects A..B or a single integer, got '" + text + "'");
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// Runs task(k) for k in [0, count) on up to `jobs` threads.
template <class Task>
void parallel_for(std::size_t count, unsigned jobs, Task&& task) {
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::optional<CliFailure>> failures(count);
    auto worker = [&] {
        for (std::size_t k = next++; k < count; k = next++) {
            try {
                task(k);
            } catch (const CliFailure& f) {
                failures[k] = f;
            }
        }
    };
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& f : failures) {
        if (f) throw *f;
    }
}

struct GenerateFlags {
    int n = 0;
    double T = 200.0;
    double dt = 1.0;
    std::string profit = "linear";
    std::uint64_t seed = 0;
    std::vector<double> box{-50.0, 50.0, -50.0, 50.0};
    std::vector<double> start{-49.0, 0.0};
    std::vector<double> weights{1.0, 10.0};
    std::string skew = "none";
    double min_separation = 0.0;
    double horizon = 0.0;
};

void add_generation_flags(CLI::App* cmd, GenerateFlags& g, bool require_n) {
    auto* n = cmd->add_option("--n", g.n, "number of collectible vertices");
    if (require_n) n->required();
    cmd->add_option("--T", g.T, "time budget")->capture_default_str();
    cmd->add_option("--dt", g.dt, "time interval")->capture_default_str();
    cmd->add_option("--profit", g.profit, "constant|linear|quadratic|logarithmic|quadrant-step|table")
        ->capture_default_str();
    cmd->add_option("--box", g.box, "xmin xmax ymin ymax")->expected(4)->capture_default_str();
    cmd->add_option("--start", g.start, "start position x y")->expected(2)->capture_default_str();
    cmd->add_option("--weights", g.weights, "weight range lo hi")->expected(2)->capture_default_str();
    cmd->add_option("--skew", g.skew, "weight skew: none|upper-right")->capture_default_str();
    cmd->add_option("--min-sep", g.min_separation, "minimum distance between vertices")->capture_default_str();
    cmd->add_option("--horizon", g.horizon, "profit horizon h (default: T)");
}

tvop_generate_params to_params(const GenerateFlags& g, std::uint64_t seed) {
    tvop_generate_params p;
    tvop_generate_params_init(&p);
    p.n = g.n;
    p.xmin = g.box[0];
    p.xmax = g.box[1];
    p.ymin = g.box[2];
    p.ymax = g.box[3];
    p.profit_kind = tvop_profit_kind_from_name(g.profit.c_str());
    if (p.profit_kind < 0) usage_error("unknown profit kind '" + g.profit + "'");
    p.T = g.T;
    p.dt = g.dt;
    p.seed = seed;
    p.start_x = g.start[0];
    p.start_y = g.start[1];
    p.weight_min = g.weights[0];
    p.weight_max = g.weights[1];
    if (g.skew == "none") p.skew = TVOP_SKEW_NONE;
    else if (g.skew == "upper-right") p.skew = TVOP_SKEW_UPPER_RIGHT;
    else usage_error("unknown skew '" + g.skew + "'");
    p.min_separation = g.min_separation;
    p.horizon = g.horizon;
    return p;
}

InstancePtr generate(const GenerateFlags& g, std::uint64_t seed) {
    const auto p = to_params(g, seed);
    tvop_instance* raw = nullptr;
    check(tvop_instance_generate(&p, &raw), "generate");
    return InstancePtr(raw);
}

std::string describe(const tvop_instance_summary& s) {
    std::ostringstream os;
    os << "n=" << s.n << " T=" << fmt(s.T) << " dt=" << fmt(s.dt) << " layers=" << s.layers
       << " profit=" << tvop_profit_kind_name(s.profit_kind);
    if (s.destination >= 0) os << " destination=" << s.destination;
    return os.str();
}

struct Common {
    std::string out = ".";
    bool quiet = false;
};

// ---- generate ---------------------------------------------------------------

struct GenerateCmd {
    GenerateFlags g;
    std::string name;

    int run(const Common& c) const {
        auto inst = generate(g, g.seed);
        const auto dir = prepare_out_dir(c.out);
        const auto file = dir / (name.empty() ? "instance_n" + std::to_string(g.n) + "_s" + std::to_string(g.seed) + ".json"
                                              : name);
        check(tvop_instance_write_file(inst.get(), file.string().c_str()), "writing instance");
        if (!c.quiet) std::cout << file.string() << " " << describe(summary_of(inst.get())) << "\n";
        return kExitOk;
    }
};

// ---- solve ------------------------------------------------------------------

struct SolveCmd {
    std::string instance;
    std::string solver = "dp";
    std::string destination;
    int oracle_cap = 0;
    std::string route_name;

    int run(const Common& c) const {
        auto inst = read_instance(instance);
        const int which = tvop_solver_from_name(solver.c_str());
        if (which < 0) usage_error("unknown solver '" + solver + "'");
        tvop_solve_options opts{TVOP_DESTINATION_FROM_INSTANCE, oracle_cap};
        if (destination == "none") opts.destination = TVOP_DESTINATION_FREE;
        else if (!destination.empty()) {
            try {
                std::size_t used = 0;
                opts.destination = std::stoi(destination, &used);
                if (used != destination.size() || opts.destination < 0) throw std::invalid_argument(destination);
            } catch (const std::logic_error&) {
                usage_error("--destination expects a vertex id or 'none'");
            }
        }

        tvop_route* raw = nullptr;
        const auto t0 = std::chrono::steady_clock::now();
        check(tvop_solve(inst.get(), static_cast<tvop_solver>(which), &opts, &raw), "solve");
        const double ms = elapsed_ms(t0);
        RoutePtr route(raw);

        const auto s = summary_of(route.get());
        const auto dir = prepare_out_dir(c.out);
        const auto file = dir / (route_name.empty() ? "route_" + solver + ".json" : route_name);
        check(tvop_route_write_file(route.get(), summary_of(inst.get()).dt, file.string().c_str()), "writing route");
        if (!c.quiet) {
            std::cout << "solver=" << solver << " profit=" << fmt(s.total_profit, 10) << " stops=" << s.stop_count
                      << " finish_time=" << fmt(s.finish_time) << " wall_ms=" << fmt(ms, 6) << " route=" << file.string()
                      << "\n";
        }
        return kExitOk;
    }
};

// ---- compare ----------------------------------------------------------------

struct CompareRow {
    std::string label;
    int n = 0;
    double dp = 0.0;
    double dp_ms = 0.0;
    double cog_dynamic = 0.0;
    double cog_static = 0.0;
    std::optional<double> z_discrete, z_continuous, lipschitz, bound;
    std::optional<bool> bound_holds;
};

double route_profit(const tvop_instance* inst, tvop_solver solver, int cap, double* ms, tvop_route_summary* out) {
    tvop_solve_options opts{TVOP_DESTINATION_FREE, cap};
    tvop_route* raw = nullptr;
    const auto t0 = std::chrono::steady_clock::now();
    check(tvop_solve(inst, solver, &opts, &raw), "solve");
    if (ms) *ms = elapsed_ms(t0);
    RoutePtr route(raw);
    const auto s = summary_of(route.get());
    if (out) *out = s;
    return s.total_profit;
}

CompareRow compare_one(const tvop_instance* inst, std::string label, int cap) {
    CompareRow row;
    row.label = std::move(label);
    row.n = summary_of(inst).n;
    row.dp = route_profit(inst, TVOP_SOLVER_DP, cap, &row.dp_ms, nullptr);
    tvop_route_summary cog{};
    row.cog_dynamic = route_profit(inst, TVOP_SOLVER_COG, cap, nullptr, &cog);
    row.cog_static = cog.static_profit;
    if (row.n > (cap > 0 ? cap : 10)) return row;

    tvop_oracle_report report{};
    const tvop_status st = tvop_oracle_check(inst, cap, &report, nullptr);
    if (st == TVOP_OK) {
        row.z_discrete = report.z_discrete;
        row.z_continuous = report.z_continuous;
        row.lipschitz = report.lipschitz;
        row.bound = report.bound;
        row.bound_holds = report.bound_holds != 0;
    } else if (st == TVOP_ERR_VALIDATION) {
        // No closed-form Lipschitz constant; report the optima without a bound.
        row.z_discrete = route_profit(inst, TVOP_SOLVER_ORACLE_DISCRETE, cap, nullptr, nullptr);
        row.z_continuous = route_profit(inst, TVOP_SOLVER_ORACLE_CONTINUOUS, cap, nullptr, nullptr);
    } else {
        check(st, "oracle check");
    }
    return row;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fmt(*v, 10) : ""; }

struct CompareCmd {
    std::string instance;
    GenerateFlags g;
    std::string seeds = "0";
    int oracle_cap = 0;
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());

    int run(const Common& c) const {
        std::vector<CompareRow> rows;
        if (!instance.empty()) {
            auto inst = read_instance(instance);
            rows.push_back(compare_one(inst.get(), fs::path(instance).filename().string(), oracle_cap));
        } else {
            if (g.n <= 0) usage_error("compare needs --instance or --n");
            const auto seed_list = parse_seed_range(seeds);
            rows.resize(seed_list.size());
            parallel_for(seed_list.size(), jobs, [&](std::size_t k) {
                auto inst = generate(g, seed_list[k]);
                rows[k] = compare_one(inst.get(), std::to_string(seed_list[k]), oracle_cap);
            });
        }

        std::ostringstream csv;
        csv << "seed,n,dp,z_discrete,z_continuous,cog_dynamic,cog_static,dp_over_z_discrete,dp_over_cog,K,bound,"
               "bound_holds,dp_ms\n";
        double sum_dp = 0, sum_cog = 0, sum_ratio = 0, min_ratio = 1.0;
        int ratio_count = 0, holds = 0, bounded = 0, dp_wins = 0;
        for (const auto& r : rows) {
            std::optional<double> ratio;
            if (r.z_discrete) ratio = *r.z_discrete > 0 ? r.dp / *r.z_discrete : 1.0;
            std::optional<double> vs_cog;
            if (r.cog_dynamic > 0) vs_cog = r.dp / r.cog_dynamic;
            csv << r.label << ',' << r.n << ',' << fmt(r.dp, 10) << ',' << opt_cell(r.z_discrete) << ','
                << opt_cell(r.z_continuous) << ',' << fmt(r.cog_dynamic, 10) << ',' << fmt(r.cog_static, 10) << ','
                << opt_cell(ratio) << ',' << opt_cell(vs_cog) << ',' << opt_cell(r.lipschitz) << ','
                << opt_cell(r.bound) << ',' << (r.bound_holds ? (*r.bound_holds ? "true" : "false") : "") << ','
                << fmt(r.dp_ms, 6) << '\n';
            sum_dp += r.dp;
            sum_cog += r.cog_dynamic;
            if (r.dp >= r.cog_dynamic) ++dp_wins;
            if (ratio) {
                sum_ratio += *ratio;
                min_ratio = std::min(min_ratio, *ratio);
                ++ratio_count;
            }
            if (r.bound_holds) {
                ++bounded;
                if (*r.bound_holds) ++holds;
            }
        }
        const auto dir = prepare_out_dir(c.out);
        write_text(dir / "compare.csv", csv.str());

        const double count = static_cast<double>(rows.size());
        std::ostringstream summary;
        summary << "rows,mean_dp,mean_cog_dynamic,dp_ge_cog,mean_dp_over_z_discrete,min_dp_over_z_discrete,"
                   "bound_holds,bound_checked\n"
                << rows.size() << ',' << fmt(sum_dp / count, 10) << ',' << fmt(sum_cog / count, 10) << ','
                << dp_wins << ',' << (ratio_count ? fmt(sum_ratio / ratio_count, 10) : "") << ','
                << (ratio_count ? fmt(min_ratio, 10) : "") << ',' << holds << ',' << bounded << '\n';
        write_text(dir / "compare_summary.csv", summary.str());

        if (!c.quiet) {
            std::cout << csv.str();
            std::cout << "mean dp=" << fmt(sum_dp / count) << " mean cog=" << fmt(sum_cog / count)
                      << " dp>=cog in " << dp_wins << "/" << rows.size() << " rows";
            if (ratio_count) {
                std::cout << " mean dp/z'=" << fmt(sum_ratio / ratio_count) << " min dp/z'=" << fmt(min_ratio);
            }
            if (bounded) std::cout << " bound holds " << holds << "/" << bounded;
            std::cout << "\n";
        }
        return kExitOk;
    }
};

// ---- sweep-dt ---------------------------------------------------------------

struct SweepCmd {
    GenerateFlags g;
    std::vector<int> ns{50, 100, 150, 200};
    std::vector<double> dts{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    std::string seeds = "0";
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());

    int run(const Common& c) const {
        if (dts.empty()) usage_error("--dts needs at least one value");
        if (ns.empty()) usage_error("--ns needs at least one value");
        const auto seed_list = parse_seed_range(seeds);
        struct Cell {
            double profit = 0.0;
            double ms = 0.0;
        };
        const std::size_t width = dts.size();
        const std::size_t rows = ns.size() * seed_list.size();
        std::vector<Cell> cells(rows * width);
        parallel_for(cells.size(), jobs, [&](std::size_t k) {
            const std::size_t row = k / width, col = k % width;
            GenerateFlags local = g;
            local.n = ns[row / seed_list.size()];
            local.dt = dts[col];
            auto inst = generate(local, seed_list[row % seed_list.size()]);
            cells[k].profit = route_profit(inst.get(), TVOP_SOLVER_DP, 0, &cells[k].ms, nullptr);
        });

        std::ostringstream csv, times;
        csv << "n,seed";
        times << "n,seed";
        for (double dt : dts) {
            csv << ",dt=" << fmt(dt);
            times << ",dt=" << fmt(dt);
        }
        csv << '\n';
        times << '\n';
        for (std::size_t row = 0; row < rows; ++row) {
            const auto prefix = std::to_string(ns[row / seed_list.size()]) + ',' +
                                std::to_string(seed_list[row % seed_list.size()]);
            csv << prefix;
            times << prefix;
            for (std::size_t col = 0; col < width; ++col) {
                csv << ',' << fmt(cells[row * width + col].profit, 10);
                times << ',' << fmt(cells[row * width + col].ms, 6);
            }
            csv << '\n';
            times << '\n';
        }
        const auto dir = prepare_out_dir(c.out);
        write_text(dir / "sweep_dt.csv", csv.str());
        write_text(dir / "sweep_dt_ms.csv", times.str());
        if (!c.quiet) std::cout << csv.str();
        return kExitOk;
    }
};

// ---- emit-mip ---------------------------------------------------------------

struct EmitMipCmd {
    std::string instance;
    std::size_t cap = 0;
    std::string name = "model.lp";

    int run(const Common& c) const {
        auto inst = read_instance(instance);
        char* raw = nullptr;
        check(tvop_emit_mip(inst.get(), cap, &raw), "emit-mip");
        const std::string text = take(raw);
        std::size_t rows = 0, binaries = 0;
        check(tvop_lp_check(text.c_str(), &rows, &binaries), "LP self-check");
        const auto file = prepare_out_dir(c.out) / name;
        write_text(file, text);
        if (!c.quiet) std::cout << file.string() << " rows=" << rows << " binaries=" << binaries << "\n";
        return kExitOk;
    }
};

// ---- ingest -----------------------------------------------------------------

struct IngestCmd {
    std::string events;
    int k = 0;
    std::uint64_t seed = 0;
    int max_iters = 100;
    double bin_width = 1.0;
    double T = 0.0;
    double dt = 1.0;
    std::vector<double> start{0.0, 0.0};

    int run(const Common& c) const {
        tvop_events* ev_raw = nullptr;
        check(tvop_events_read_file(events.c_str(), &ev_raw), "reading " + events);
        EventsPtr ev(ev_raw);
        tvop_region_model* m_raw = nullptr;
        check(tvop_region_model_build(ev.get(), k, seed, max_iters, bin_width, &m_raw), "clustering");
        ModelPtr model(m_raw);
        char* json = nullptr;
        check(tvop_region_model_to_json(model.get(), &json), "region model");
        const auto dir = prepare_out_dir(c.out);
        write_text(dir / "region_model.json", take(json));
        tvop_instance* inst_raw = nullptr;
        check(tvop_region_instance(model.get(), T, dt, start[0], start[1], &inst_raw), "region instance");
        InstancePtr inst(inst_raw);
        const auto file = dir / "region_instance.json";
        check(tvop_instance_write_file(inst.get(), file.string().c_str()), "writing instance");
        if (!c.quiet) {
            std::cout << "events=" << tvop_events_count(ev.get()) << " regions=" << k << " model="
                      << (dir / "region_model.json").string() << " instance=" << file.string() << " "
                      << describe(summary_of(inst.get())) << "\n";
        }
        return kExitOk;
    }
};

// ---- plotdata / check / st-dump ----------------------------------------------

struct PlotCmd {
    std::string route;
    std::string instance;
    std::string name = "plot.csv";

    int run(const Common& c) const {
        auto inst = read_instance(instance);
        auto r = read_route(route);
        char* csv = nullptr;
        check(tvop_plot_data(inst.get(), r.get(), &csv), "plotdata");
        const auto file = prepare_out_dir(c.out) / name;
        write_text(file, take(csv));
        if (!c.quiet) std::cout << file.string() << "\n";
        return kExitOk;
    }
};

struct CheckCmd {
    std::string route;
    std::string instance;

    int run(const Common& c) const {
        auto inst = read_instance(instance);
        auto r = read_route(route);
        std::size_t count = 0;
        char* report = nullptr;
        check(tvop_check_feasible(r.get(), inst.get(), &count, &report), "check");
        const std::string text = take(report);
        if (count > 0) {
            std::cout << text;
            return kExitValidation;
        }
        if (!c.quiet) std::cout << "feasible\n";
        return kExitOk;
    }
};

struct StDumpCmd {
    std::string instance;
    std::string name;

    int run(const Common& c) const {
        auto inst = read_instance(instance);
        char* raw = nullptr;
        check(tvop_st_graph_edge_dump(inst.get(), &raw), "st-dump");
        const std::string text = take(raw);
        if (name.empty()) {
            std::cout << text;
        } else {
            const auto file = prepare_out_dir(c.out) / name;
            write_text(file, text);
            std::size_t v = 0, e = 0;
            check(tvop_st_graph_stats(inst.get(), &v, &e), "st-dump");
            if (!c.quiet) std::cout << file.string() << " vertices=" << v << " edges=" << e << "\n";
        }
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orienteering with time-varying profits on a spatio-temporal graph"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tvop_version()));
    app.footer(
        "Exit codes: 0 ok, 1 internal error, 2 usage, 3 validation/infeasible, 4 NOROUTE, 5 cap exceeded, 6 I/O.");

    Common common;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", common.out, "output directory")->capture_default_str();
        cmd->add_flag("--quiet", common.quiet, "suppress summaries");
    };

    GenerateCmd gen;
    auto* c_gen = app.add_subcommand("generate", "write a random instance");
    add_generation_flags(c_gen, gen.g, true);
    c_gen->add_option("--seed", gen.g.seed, "random seed")->capture_default_str();
    c_gen->add_option("--name", gen.name, "file name (default instance_n<N>_s<SEED>.json)");
    add_common(c_gen);

    SolveCmd solve;
    auto* c_solve = app.add_subcommand("solve", "solve an instance and write the route");
    c_solve->add_option("--instance", solve.instance, "instance file")->required()->check(CLI::ExistingFile);
    c_solve->add_option("--solver", solve.solver, "dp|cog|oracle-discrete|oracle-continuous")->capture_default_str();
    c_solve->add_option("--destination", solve.destination, "vertex id, or 'none' for a free destination");
    c_solve->add_option("--oracle-cap", solve.oracle_cap, "largest n the oracles accept (default 10, max 12)");
    c_solve->add_option("--name", solve.route_name, "route file name (default route_<solver>.json)");
    add_common(c_solve);

    CompareCmd compare;
    auto* c_cmp = app.add_subcommand("compare", "DP against oracles and the baseline, per seed");
    c_cmp->add_option("--instance", compare.instance, "compare on one instance file")->check(CLI::ExistingFile);
    add_generation_flags(c_cmp, compare.g, false);
    c_cmp->add_option("--seeds", compare.seeds, "seed range A..B")->capture_default_str();
    c_cmp->add_option("--oracle-cap", compare.oracle_cap, "oracles run when n <= cap (default 10)");
    c_cmp->add_option("--jobs", compare.jobs, "worker threads")->capture_default_str();
    add_common(c_cmp);

    SweepCmd sweep;
    sweep.g.T = 150.0;
    auto* c_sweep = app.add_subcommand("sweep-dt", "DP profit over n x dt");
    add_generation_flags(c_sweep, sweep.g, false);
    c_sweep->remove_option(c_sweep->get_option("--n"));
    c_sweep->remove_option(c_sweep->get_option("--dt"));
    c_sweep->add_option("--ns", sweep.ns, "vertex counts")->delimiter(',')->capture_default_str();
    c_sweep->add_option("--dts", sweep.dts, "time intervals")->delimiter(',')->capture_default_str();
    c_sweep->add_option("--seeds", sweep.seeds, "seed range A..B")->capture_default_str();
    c_sweep->add_option("--jobs", sweep.jobs, "worker threads")->capture_default_str();
    add_common(c_sweep);

    EmitMipCmd mip;
    auto* c_mip = app.add_subcommand("emit-mip", "write the binary program in LP format");
    c_mip->add_option("--instance", mip.instance, "instance file")->required()->check(CLI::ExistingFile);
    c_mip->add_option("--cap", mip.cap, "variable cap (default 1000000)");
    c_mip->add_option("--name", mip.name, "file name")->capture_default_str();
    add_common(c_mip);

    IngestCmd ingest;
    auto* c_ing = app.add_subcommand("ingest", "cluster events into regions and build an instance");
    c_ing->add_option("--events", ingest.events, "event CSV with x,y,t header")->required()->check(CLI::ExistingFile);
    c_ing->add_option("--k", ingest.k, "region count")->required();
    c_ing->add_option("--seed", ingest.seed, "k-means seed")->capture_default_str();
    c_ing->add_option("--max-iters", ingest.max_iters, "k-means iteration cap")->capture_default_str();
    c_ing->add_option("--bin-width", ingest.bin_width, "count bin width (multiple of dt)")->capture_default_str();
    c_ing->add_option("--T", ingest.T, "time budget")->required();
    c_ing->add_option("--dt", ingest.dt, "time interval")->capture_default_str();
    c_ing->add_option("--start", ingest.start, "start position x y")->expected(2)->capture_default_str();
    add_common(c_ing);

    PlotCmd plot;
    auto* c_plot = app.add_subcommand("plotdata", "vertex CSV with visit order for plotting");
    c_plot->add_option("--route", plot.route, "route file")->required()->check(CLI::ExistingFile);
    c_plot->add_option("--instance", plot.instance, "instance file")->required()->check(CLI::ExistingFile);
    c_plot->add_option("--name", plot.name, "file name")->capture_default_str();
    add_common(c_plot);

    CheckCmd chk;
    auto* c_chk = app.add_subcommand("check", "feasibility check of a route (exit 3 when infeasible)");
    c_chk->add_option("--route", chk.route, "route file")->required()->check(CLI::ExistingFile);
    c_chk->add_option("--instance", chk.instance, "instance file")->required()->check(CLI::ExistingFile);
    add_common(c_chk);

    StDumpCmd dump;
    auto* c_dump = app.add_subcommand("st-dump", "spatio-temporal edge list, one 'i,u -> j,s' per line");
    c_dump->add_option("--instance", dump.instance, "instance file")->required()->check(CLI::ExistingFile);
    c_dump->add_option("--name", dump.name, "write to this file under --out instead of stdout");
    add_common(c_dump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_gen->parsed()) return gen.run(common);
        if (c_solve->parsed()) return solve.run(common);
        if (c_cmp->parsed()) return compare.run(common);
        if (c_sweep->parsed()) return sweep.run(common);
        if (c_mip->parsed()) return mip.run(common);
        if (c_ing->parsed()) return ingest.run(common);
        if (c_plot->parsed()) return plot.run(common);
        if (c_chk->parsed()) return chk.run(common);
        if (c_dump->parsed()) return dump.run(common);
    } catch (const CliFailure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

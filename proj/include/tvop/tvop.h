/* Licensed under the Apache License 2.0 (see LICENSE file). */

/*
 * C interface to the tvop solver library: orienteering with time-varying
 * vertex profits on a time-expanded graph.
 *
 * Objects are opaque handles created by tvop_* functions and released with
 * the matching *_destroy call. Every fallible call returns a tvop_status; on
 * failure tvop_last_error() describes what went wrong (thread-local, valid
 * until the next call on the same thread). Strings returned through char**
 * belong to the caller and are released with tvop_string_free().
 *
 * Distinct handles may be used from different threads concurrently; a
 * single handle must not be shared between threads while being modified.
 */

#ifndef TVOP_H
#define TVOP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TVOP_BUILDING_LIB)
#    define TVOP_API __declspec(dllexport)
#  else
#    define TVOP_API __declspec(dllimport)
#  endif
#else
#  define TVOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvop_status {
  TVOP_OK = 0,
  TVOP_ERR_INVALID_ARGUMENT = 1,
  TVOP_ERR_VALIDATION = 2,
  TVOP_ERR_NO_ROUTE = 3,
  TVOP_ERR_CAP_EXCEEDED = 4,
  TVOP_ERR_IO = 5,
  TVOP_ERR_INTERNAL = 6
} tvop_status;

typedef enum tvop_profit_kind {
  TVOP_PROFIT_CONSTANT = 0,
  TVOP_PROFIT_LINEAR = 1,
  TVOP_PROFIT_QUADRATIC = 2,
  TVOP_PROFIT_LOGARITHMIC = 3,
  TVOP_PROFIT_QUADRANT_STEP = 4,
  TVOP_PROFIT_TABLE = 5,
  TVOP_PROFIT_MIXED = -1
} tvop_profit_kind;

typedef enum tvop_solver {
  TVOP_SOLVER_DP = 0,
  TVOP_SOLVER_COG = 1,
  TVOP_SOLVER_ORACLE_DISCRETE = 2,
  TVOP_SOLVER_ORACLE_CONTINUOUS = 3
} tvop_solver;

typedef enum tvop_weight_skew {
  TVOP_SKEW_NONE = 0,
  TVOP_SKEW_UPPER_RIGHT = 1
} tvop_weight_skew;

/* Destination selectors for tvop_solve_options.destination. */
#define TVOP_DESTINATION_FROM_INSTANCE (-1)
#define TVOP_DESTINATION_FREE (-2)

typedef struct tvop_instance tvop_instance;
typedef struct tvop_route tvop_route;
typedef struct tvop_events tvop_events;
typedef struct tvop_region_model tvop_region_model;

typedef struct tvop_generate_params {
  int n;
  double xmin, xmax, ymin, ymax;
  int profit_kind;          /* tvop_profit_kind */
  double T;
  double dt;
  uint64_t seed;
  double start_x, start_y;
  double weight_min, weight_max;
  int skew;                 /* tvop_weight_skew */
  double min_separation;
  double horizon;           /* <= 0 means "use T" */
} tvop_generate_params;

typedef struct tvop_instance_summary {
  int n;                    /* non-start vertices */
  double T;
  double dt;
  int layers;               /* n_T */
  int profit_kind;          /* tvop_profit_kind, TVOP_PROFIT_MIXED if they differ */
  int destination;          /* -1 when none */
  int euclidean;
  int budget_adjusted;
} tvop_instance_summary;

typedef struct tvop_solve_options {
  int destination;          /* vertex id, TVOP_DESTINATION_FROM_INSTANCE or TVOP_DESTINATION_FREE */
  int oracle_cap;           /* oracle solvers refuse n above this; <= 0 means default (10) */
} tvop_solve_options;

typedef struct tvop_route_summary {
  size_t stop_count;
  double total_profit;
  double finish_time;
  int finish_layer;
  int continuous;           /* 1 when times are exact rather than layered */
  int has_static_profit;
  double static_profit;
} tvop_route_summary;

typedef struct tvop_oracle_report {
  int n;
  double z_continuous;
  double z_discrete;
  double dp_value;
  double lipschitz;
  double bound;
  int bound_holds;
} tvop_oracle_report;

TVOP_API const char* tvop_version(void);
TVOP_API const char* tvop_last_error(void);
TVOP_API const char* tvop_status_name(tvop_status status);
TVOP_API void tvop_string_free(char* s);

TVOP_API int tvop_profit_kind_from_name(const char* name); /* -1 if unknown */
TVOP_API const char* tvop_profit_kind_name(int kind);
TVOP_API int tvop_solver_from_name(const char* name);      /* -1 if unknown */

/* Instances */
TVOP_API void tvop_generate_params_init(tvop_generate_params* params);
TVOP_API tvop_status tvop_instance_generate(const tvop_generate_params* params, tvop_instance** out);
TVOP_API tvop_status tvop_instance_from_json(const char* text, tvop_instance** out);
TVOP_API tvop_status tvop_instance_to_json(const tvop_instance* instance, char** out);
TVOP_API tvop_status tvop_instance_read_file(const char* path, tvop_instance** out);
TVOP_API tvop_status tvop_instance_write_file(const tvop_instance* instance, const char* path);
TVOP_API tvop_status tvop_instance_clone_with_budget(const tvop_instance* instance, double T, tvop_instance** out);
TVOP_API tvop_status tvop_instance_clone_with_dt(const tvop_instance* instance, double dt, tvop_instance** out);
TVOP_API tvop_status tvop_instance_summary_get(const tvop_instance* instance, tvop_instance_summary* out);
TVOP_API tvop_status tvop_instance_vertex(const tvop_instance* instance, int id, double* x, double* y, double* weight);
TVOP_API tvop_status tvop_evaluate_profit(const tvop_instance* instance, int vertex, double t, double* out);
TVOP_API tvop_status tvop_travel_time(const tvop_instance* instance, int i, int j, double* out);
TVOP_API void tvop_instance_destroy(tvop_instance* instance);

/* Spatio-temporal graph */
TVOP_API tvop_status tvop_st_graph_stats(const tvop_instance* instance, size_t* vertices, size_t* edges);
TVOP_API tvop_status tvop_st_graph_edge_dump(const tvop_instance* instance, char** out);

/* Solving. options may be NULL (instance destination, default cap). */
TVOP_API tvop_status tvop_solve(const tvop_instance* instance, tvop_solver solver,
                                const tvop_solve_options* options, tvop_route** out);

/* Routes */
TVOP_API tvop_status tvop_route_summary_get(const tvop_route* route, tvop_route_summary* out);
TVOP_API tvop_status tvop_route_stop(const tvop_route* route, size_t index, int* vertex, int* layer, double* time);
TVOP_API tvop_status tvop_route_solver(const tvop_route* route, char** out);
TVOP_API tvop_status tvop_route_to_json(const tvop_route* route, double dt, char** out);
TVOP_API tvop_status tvop_route_from_json(const char* text, tvop_route** out);
TVOP_API tvop_status tvop_route_read_file(const char* path, tvop_route** out);
TVOP_API tvop_status tvop_route_write_file(const tvop_route* route, double dt, const char* path);
TVOP_API void tvop_route_destroy(tvop_route* route);

/* Feasibility: *violations receives the count, *report one "CODE: detail"
 * line per violation (empty string when feasible). report may be NULL. */
TVOP_API tvop_status tvop_check_feasible(const tvop_route* route, const tvop_instance* instance,
                                         size_t* violations, char** report);

/* Oracles. cap <= 0 means the default. json may be NULL. */
TVOP_API tvop_status tvop_lipschitz_constant(const tvop_instance* instance, double* out);
TVOP_API tvop_status tvop_oracle_check(const tvop_instance* instance, int cap, tvop_oracle_report* out,
                                       char** json);

/* MIP emission. variable_cap 0 means the default (1e6). */
TVOP_API tvop_status tvop_emit_mip(const tvop_instance* instance, size_t variable_cap, char** out);
TVOP_API tvop_status tvop_lp_check(const char* text, size_t* rows, size_t* binaries);

/* Plot data: CSV "id,x,y,weight,order,t" with one row per vertex. Fails with
 * TVOP_ERR_VALIDATION (details in tvop_last_error) when the route does not
 * match the instance or is infeasible. */
TVOP_API tvop_status tvop_plot_data(const tvop_instance* instance, const tvop_route* route, char** csv);

/* Event ingestion */
TVOP_API tvop_status tvop_events_from_csv(const char* text, tvop_events** out);
TVOP_API tvop_status tvop_events_read_file(const char* path, tvop_events** out);
TVOP_API size_t tvop_events_count(const tvop_events* events);
TVOP_API void tvop_events_destroy(tvop_events* events);

TVOP_API tvop_status tvop_region_model_build(const tvop_events* events, int k, uint64_t seed, int max_iters,
                                             double bin_width, tvop_region_model** out);
TVOP_API tvop_status tvop_region_model_to_json(const tvop_region_model* model, char** out);
TVOP_API tvop_status tvop_region_instance(const tvop_region_model* model, double T, double dt, double start_x,
                                          double start_y, tvop_instance** out);
TVOP_API void tvop_region_model_destroy(tvop_region_model* model);

#ifdef __cplusplus
}
#endif

#endif /* TVOP_H */

/* C interface of the penalfd library. */
#ifndef PENALFD_PENALFD_H
#define PENALFD_PENALFD_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PENALFD_BUILDING)
#    define PENALFD_API __declspec(dllexport)
#  else
#    define PENALFD_API __declspec(dllimport)
#  endif
#else
#  define PENALFD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum penalfd_status {
    PENALFD_OK = 0,
    PENALFD_ERR_INVALID_ARGUMENT = 1,
    PENALFD_ERR_VALIDATION = 2,
    PENALFD_ERR_PARSE = 3,
    PENALFD_ERR_SOLVER = 4,
    PENALFD_ERR_DOMAIN = 5,
    PENALFD_ERR_IO = 6,
    PENALFD_ERR_INTERNAL = 7
} penalfd_status;

typedef struct penalfd_config penalfd_config;
typedef struct penalfd_solution penalfd_solution;

typedef struct penalfd_error_report {
    double l_inf;
    double l2_sum;
    double l2;
    double h1_sum;
    double h1;
    size_t nodes;
} penalfd_error_report;

typedef struct penalfd_supersol_report {
    double eps;
    size_t grid_pts;
    double beta;
    double min_p;
    double min_q;
    double min_residual_p;
    double min_residual_q;
    double gap_value;
    double gap_derivative;
    double linf_near;
    double linf_far;
    double p_prime_origin;
    double value_interface;
    double value_end;
    int pass;
} penalfd_supersol_report;

/* Called once per summary line of a run. */
typedef void (*penalfd_line_fn)(const char* line, void* user);

PENALFD_API const char* penalfd_version(void);

/* Message of the last failed call on this thread, "" if none. */
PENALFD_API const char* penalfd_last_error(void);
/* Line and column of the last PENALFD_ERR_PARSE, 0 otherwise. */
PENALFD_API void penalfd_last_error_location(int* line, int* column);

PENALFD_API penalfd_status penalfd_config_load(const char* path, penalfd_config** out);
PENALFD_API penalfd_status penalfd_config_parse(const char* text, penalfd_config** out);
PENALFD_API void penalfd_config_free(penalfd_config* cfg);
PENALFD_API penalfd_status penalfd_config_set_allow_upwind2_disk(penalfd_config* cfg, int allow);

/* Checks cfg against a command ("solve", "sweep-eps", "sweep-h", "blayer",
 * "condnum", "supersol"). *count receives the number of violations, which
 * stay readable through penalfd_config_violation until the next call. */
PENALFD_API penalfd_status penalfd_config_validate(penalfd_config* cfg, const char* command, size_t* count);
PENALFD_API const char* penalfd_config_violation(const penalfd_config* cfg, size_t index);

/* Solves the configured problem; eps <= 0 and n <= 0 keep the config values. */
PENALFD_API penalfd_status penalfd_solve(const penalfd_config* cfg, double eps, int n, penalfd_solution** out);
PENALFD_API void penalfd_solution_free(penalfd_solution* sol);
PENALFD_API int penalfd_solution_grid_n(const penalfd_solution* sol);
PENALFD_API size_t penalfd_solution_size(const penalfd_solution* sol);
/* Node values in flat order n = (N+1) i + j. */
PENALFD_API const double* penalfd_solution_values(const penalfd_solution* sol);
PENALFD_API double penalfd_solution_residual(const penalfd_solution* sol);
PENALFD_API size_t penalfd_solution_iterations(const penalfd_solution* sol);

/* mask: "full", "noboundary", "interior:<S>" or "strip:<xlo>:<xhi>:<ylo>:<yhi>". */
PENALFD_API penalfd_status penalfd_solution_errors(const penalfd_config* cfg, const penalfd_solution* sol,
                                                   const char* mask, penalfd_error_report* out);

/* Runs a command and writes its CSV files into out_dir. */
PENALFD_API penalfd_status penalfd_run(const char* command, const penalfd_config* cfg, const char* out_dir,
                                       unsigned jobs, penalfd_line_fn on_line, void* user);

/* Recomputes the errors table of a solve run from its solution.csv. */
PENALFD_API penalfd_status penalfd_errors_from_solution(const penalfd_config* cfg, const char* solution_csv,
                                                        const char* errors_csv);

PENALFD_API penalfd_status penalfd_check_1d(double eps, size_t m, penalfd_supersol_report* out);
PENALFD_API penalfd_status penalfd_check_spherical(double eps, size_t m, penalfd_supersol_report* out);
PENALFD_API penalfd_status penalfd_bessel_i(int nu, double x, double* out);

#ifdef __cplusplus
}
#endif

#endif

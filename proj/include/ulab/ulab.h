/* C interface to the univalence-lab numerical core. */
#ifndef ULAB_ULAB_H
#define ULAB_ULAB_H

#include <stddef.h>

#if defined(_WIN32)
#define ULAB_API __declspec(dllexport)
#else
#define ULAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ulab_status {
    ULAB_OK = 0,
    ULAB_E_INVALID_ARGUMENT = 1,
    ULAB_E_DOMAIN = 2,
    ULAB_E_HYPOTHESIS = 3,
    ULAB_E_DERIVATIVE_VANISHES = 4,
    ULAB_E_SINGULAR_POWER = 5,
    ULAB_E_SINGULAR_PATH = 6,
    ULAB_E_UNDERSAMPLED_PATH = 7,
    ULAB_E_NO_CONVERGENCE = 8,
    ULAB_E_TRANSFER_POLE = 9,
    ULAB_E_DEGENERATE = 10,
    ULAB_E_INCONCLUSIVE = 11,
    ULAB_E_IO = 12,
    ULAB_E_CONFIG = 13,
    ULAB_E_INTERNAL = 14
} ulab_status;

typedef struct ulab_complex {
    double re;
    double im;
} ulab_complex;

/* A parsed problem: functions f, g, phi, parameters, grid, quadrature and variant. */
typedef struct ulab_problem ulab_problem;

/* Polar sample grid: n_radii radii spaced evenly on [r_min, r_max] (just r_max
 * when n_radii is 1) times n_angles angles 2 pi j / n_angles. */
typedef struct ulab_polar_grid {
    double r_min;
    double r_max;
    size_t n_radii;
    size_t n_angles;
} ulab_polar_grid;

typedef struct ulab_constants {
    double k, a, L1, L2, curlyL1, curlyL2, l; /* undefined roots are -inf */
} ulab_constants;

/* Message of the last failure on the calling thread ("" after success). */
ULAB_API const char* ulab_last_error(void);
ULAB_API const char* ulab_status_name(ulab_status status);
/* Strings returned through char** out-parameters are released with this. */
ULAB_API void ulab_string_free(char* s);

ULAB_API ulab_status ulab_problem_parse(const char* json_text, ulab_problem** out);
ULAB_API ulab_status ulab_problem_load(const char* path, ulab_problem** out);
ULAB_API void ulab_problem_free(ulab_problem* problem);
ULAB_API ulab_status ulab_problem_serialize(const ulab_problem* problem, char** json_out);
ULAB_API ulab_status ulab_problem_set_k(ulab_problem* problem, double k);
ULAB_API ulab_status ulab_problem_set_a(ulab_problem* problem, double a);

/* Parses "0.5+0.3i", "-2i", "1.5", "(0.5,0.3)". Formats as "re+imi" with 17 digits. */
ULAB_API ulab_status ulab_parse_complex(const char* text, ulab_complex* out);
ULAB_API ulab_status ulab_format_complex(ulab_complex z, char** out);

/* Runs the configured criterion. passed is 1 or 0; report_json may be NULL. */
ULAB_API ulab_status ulab_check(const ulab_problem* problem, int* passed, char** report_json);

/* flagged (may be NULL) is set to 1 when a power crossed its principal branch cut. */
ULAB_API ulab_status ulab_eval(const ulab_problem* problem, ulab_complex z, ulab_complex* value, int* flagged);
ULAB_API ulab_status ulab_chain_eval(const ulab_problem* problem, ulab_complex z, double t, ulab_complex* value,
                                     int* flagged);
ULAB_API ulab_status ulab_extend_eval(const ulab_problem* problem, ulab_complex z, ulab_complex* value,
                                      int* flagged);
ULAB_API ulab_status ulab_transfer(const ulab_problem* problem, ulab_complex z, double t, ulab_complex* G,
                                   ulab_complex* w, ulab_complex* p);
ULAB_API ulab_status ulab_pde_residual(const ulab_problem* problem, ulab_complex z, double t, double* residual);
ULAB_API ulab_status ulab_beltrami(const ulab_problem* problem, ulab_complex z, ulab_complex* mu, double* modulus);

ULAB_API ulab_status ulab_extension_constants(double k, double a, ulab_constants* out);
ULAB_API ulab_status ulab_constants_json(double k, double a, char** json_out);

/* CSV grids. Chain rows carry t and |w(z,t)|; extension rows carry |mu| for
 * |z| > 1 (empty cells are not allowed, so |z| <= 1 rows report 0).
 * n_flagged (may be NULL) counts branch-flagged values. */
ULAB_API ulab_status ulab_chain_csv(const ulab_problem* problem, ulab_polar_grid grid, const double* times,
                                    size_t n_times, const char* path, size_t* n_flagged);
ULAB_API ulab_status ulab_extend_csv(const ulab_problem* problem, ulab_polar_grid grid, const char* path,
                                     size_t* n_flagged);

/* Injectivity scan of F on n_radii x n_angles samples of |z| <= r_max, then the
 * argument principle on |z| = r_max for n_targets seeded targets inside.
 * collision is 1 when two distinct points share a value. */
ULAB_API ulab_status ulab_oracle(const ulab_problem* problem, size_t n_radii, size_t n_angles, double r_max,
                                 size_t n_targets, unsigned long long seed, int* collision, char** report_json);

ULAB_API ulab_status ulab_plot(const char* csv_path, const char* svg_path);

#ifdef __cplusplus
}
#endif

#endif

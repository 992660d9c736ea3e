#ifndef VEX_VEX_H
#define VEX_VEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VEX_API __declspec(dllexport)
#else
#define VEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a vex_status. On failure the message is kept
 * per thread and read with vex_last_error(). */
typedef enum vex_status {
    VEX_OK = 0,
    VEX_ERR_INVALID_ARGUMENT = 1,
    VEX_ERR_GRID_TOO_SMALL = 2,
    VEX_ERR_GRID_MISMATCH = 3,
    VEX_ERR_OUT_OF_DOMAIN = 4,
    VEX_ERR_SOLVER_FAILURE = 5,
    VEX_ERR_ORDER_VIOLATION = 6,
    VEX_ERR_DOMAIN = 7,
    VEX_ERR_SUPPORT_VIOLATION = 8,
    VEX_ERR_HYPOTHESIS_VIOLATION = 9,
    VEX_ERR_EMPTY_CORPUS = 10,
    VEX_ERR_NO_VALID_PAIRS = 11,
    VEX_ERR_SYNTAX = 12,
    VEX_ERR_UNKNOWN_IDENTIFIER = 13,
    VEX_ERR_DIMENSION = 14,
    VEX_ERR_EVAL = 15,
    VEX_ERR_FORMAT = 16,
    VEX_ERR_IO = 17,
    VEX_ERR_INTERNAL = 99
} vex_status;

typedef struct vex_grid vex_grid;
typedef struct vex_field vex_field;
typedef struct vex_expr vex_expr;
typedef struct vex_report vex_report;

VEX_API const char* vex_last_error(void);
VEX_API const char* vex_status_name(vex_status status);

/* Caps internal parallelism; 0 restores the hardware default. */
VEX_API void vex_set_threads(unsigned threads);

/* ---- grids ---- */

VEX_API vex_status vex_grid_create(int dim, const double* origin, const double* spacing, const size_t* shape,
                                   vex_grid** out);
/* nodes[d] nodes spanning [lo[d], hi[d]] inclusive. */
VEX_API vex_status vex_grid_box(int dim, const double* lo, const double* hi, const size_t* nodes, vex_grid** out);
VEX_API void vex_grid_free(vex_grid* grid);

VEX_API int vex_grid_dim(const vex_grid* grid);
VEX_API size_t vex_grid_size(const vex_grid* grid);
/* Arrays receive dim entries; any pointer may be NULL. */
VEX_API void vex_grid_geometry(const vex_grid* grid, double* origin, double* spacing, size_t* shape);
/* Coordinates of node `index` (dim entries). */
VEX_API vex_status vex_grid_node(const vex_grid* grid, size_t index, double* x);

/* ---- fields ---- */

VEX_API vex_status vex_field_create(const vex_grid* grid, const double* values, size_t count, vex_field** out);
VEX_API vex_status vex_field_load(const char* path, vex_field** out);
VEX_API vex_status vex_field_save(const vex_field* field, const char* path);
VEX_API void vex_field_free(vex_field* field);

VEX_API size_t vex_field_size(const vex_field* field);
/* Borrowed pointer, valid while the field lives. */
VEX_API const double* vex_field_values(const vex_field* field);
/* New grid handle describing the field's grid. */
VEX_API vex_status vex_field_grid(const vex_field* field, vex_grid** out);

VEX_API vex_status vex_integrate(const vex_field* f, double* out);
/* out receives dim new fields. */
VEX_API vex_status vex_gradient(const vex_field* f, vex_field** out);
VEX_API vex_status vex_resample(const vex_field* f, const vex_grid* target, vex_field** out);

/* ---- expressions ---- */

VEX_API vex_status vex_expr_parse(const char* source, int dim, vex_expr** out);
VEX_API void vex_expr_free(vex_expr* expr);
/* x holds dim coordinates. */
VEX_API vex_status vex_expr_eval(const vex_expr* expr, const double* x, double* out);
/* Fully parenthesized form; borrowed, valid while the expression lives. */
VEX_API const char* vex_expr_print(const vex_expr* expr);
VEX_API vex_status vex_expr_sample(const vex_expr* expr, const vex_grid* grid, vex_field** out);

/* ---- variable exponent norms ---- */

typedef struct vex_norm_result {
    double norm;
    double modular_at_norm;
    int iterations;
    double bracket_lo;
    double bracket_hi;
} vex_norm_result;

/* *infinite is set to 1 when a power overflowed; *value is then +inf. */
VEX_API vex_status vex_modular(const vex_field* f, const vex_field* p, double* value, int* infinite);
VEX_API vex_status vex_luxemburg_norm(const vex_field* f, const vex_field* p, vex_norm_result* out);
VEX_API vex_status vex_sobolev_norm(const vex_field* f, const vex_field* p, double* out);
/* Rows for f and each grid derivative D_i f (when every axis has 3 or more
 * nodes); scalar sobolev_norm. */
VEX_API vex_status vex_norm_report(const vex_field* f, const vex_field* p, vex_report** out);

typedef struct vex_embedding_result {
    double modular_p;
    double modular_q;
    double modular_r;
    int nodewise;
    int integrated;
    size_t first_failing_node;
} vex_embedding_result;

VEX_API vex_status vex_embedding_check(const vex_field* f, const vex_field* p, const vex_field* q, const vex_field* r,
                                       vex_embedding_result* out);

/* ---- Riesz potentials ---- */

typedef enum vex_riesz_path { VEX_RIESZ_DIRECT = 0, VEX_RIESZ_GRID_CONV = 1, VEX_RIESZ_SPECTRAL = 2 } vex_riesz_path;

VEX_API vex_status vex_gamma_alpha(double alpha, int n, double* out);
VEX_API vex_status vex_riesz(const vex_field* f, double alpha, vex_riesz_path path, vex_field** out);
VEX_API vex_status vex_lemma1(const vex_field* f, const double* alphas, size_t count, vex_report** out);

/* ---- maximal function and log-Hoelder modulus ---- */

VEX_API vex_status vex_maximal_function(const vex_field* f, vex_field** out);
/* Probe over caller fields; ids may be NULL (fields are then named field_<k>). */
VEX_API vex_status vex_probe(const vex_field* p, const vex_field* const* corpus, const char* const* ids, size_t count,
                             vex_report** out);
VEX_API vex_status vex_probe_standard(const vex_field* p, uint64_t seed, vex_report** out);
/* Indicators of [jump - w, jump) along axis 0 for w = h, 2h, ... up to max_width. */
VEX_API vex_status vex_probe_shrinking(const vex_field* p, double jump, double max_width, vex_report** out);

typedef struct vex_log_holder_result {
    double c0_hat;
    size_t pair_count;
    size_t worst_i;
    size_t worst_j;
    int exhaustive;
} vex_log_holder_result;

VEX_API vex_status vex_log_holder(const vex_field* p, uint64_t seed, vex_log_holder_result* out);
/* One row per exponent field, labelled by its largest grid spacing. */
VEX_API vex_status vex_log_holder_report(const vex_field* const* exponents, size_t count, uint64_t seed,
                                         vex_report** out);

/* ---- cutoffs, representation and approximation ---- */

VEX_API double vex_psi(double x);
VEX_API vex_status vex_cutoff_g(const double* x, int dim, double lambda, double* out);

typedef struct vex_derivative_bound {
    double c1;
    double argmax_radius;
    double plateau_max_gradient;
} vex_derivative_bound;

VEX_API vex_status vex_derivative_bound_check(double lambda, size_t probes, vex_derivative_bound* out);

/* Reconstructs f from its grid gradient through the integral representation. */
VEX_API vex_status vex_integral_representation(const vex_field* f, vex_field** out);
VEX_API vex_status vex_omega_lambda(const vex_field* f, double lambda, int axis, vex_field** out);

typedef struct vex_domination {
    int holds;
    double max_ratio;
    size_t worst_node;
} vex_domination;

VEX_API vex_status vex_omega_domination(const vex_field* f, double lambda, int axis, vex_domination* out);
VEX_API vex_status vex_derivative_chain(const vex_field* f, double lambda, int axis, vex_domination* out);
VEX_API vex_status vex_approximate(const vex_field* f, const vex_field* p, const double* lambdas, size_t count,
                                   vex_report** out);

typedef enum vex_density_verdict {
    VEX_DENSE_BY_DIMENSION = 0,
    VEX_DENSE_BY_RANGE = 1,
    VEX_DENSE_BY_MAXIMAL = 2,
    VEX_DENSE_BY_LOG_HOLDER = 3,
    VEX_UNDECIDED = 4
} vex_density_verdict;

VEX_API const char* vex_density_verdict_name(vex_density_verdict verdict);
/* reason (may be NULL) receives a borrowed, thread-local string valid until the next call. */
VEX_API vex_status vex_density_condition(double p_minus, double p_plus, int n, int maximal_bounded, int log_holder,
                                         vex_density_verdict* verdict, const char** reason);

/* ---- reports ---- */

VEX_API void vex_report_free(vex_report* report);
VEX_API size_t vex_report_rows(const vex_report* report);
VEX_API size_t vex_report_columns(const vex_report* report);
VEX_API const char* vex_report_column_name(const vex_report* report, size_t column);
/* Cell text exactly as written to CSV. */
VEX_API const char* vex_report_cell(const vex_report* report, size_t row, size_t column);
/* Numeric value of a cell; VEX_ERR_INVALID_ARGUMENT for text cells. */
VEX_API vex_status vex_report_value(const vex_report* report, size_t row, size_t column, double* out);
/* Overall verdict: 1 pass, 0 fail. */
VEX_API int vex_report_verdict(const vex_report* report);
/* Named summary values such as f_l2_norm, error_ratio or sup_ratio. */
VEX_API vex_status vex_report_scalar(const vex_report* report, const char* name, double* out);
/* Full CSV text; borrowed, valid while the report lives. */
VEX_API const char* vex_report_csv(const vex_report* report);
VEX_API vex_status vex_report_write(const vex_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif

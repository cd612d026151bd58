/*
 * difflab - ergodic diffusion simulation and verification laboratory.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns a
 * difflab_status, with a human-readable message available from
 * difflab_last_error() on the calling thread.
 */
#ifndef DIFFLAB_H
#define DIFFLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum difflab_status {
  DIFFLAB_OK = 0,
  DIFFLAB_ERROR_INVALID_ARGUMENT = 1,
  DIFFLAB_ERROR_PRECONDITION = 2,
  DIFFLAB_ERROR_NUMERIC = 3,
  DIFFLAB_ERROR_IO = 4,
  DIFFLAB_ERROR_INTERNAL = 5,
} difflab_status;

typedef struct difflab_model difflab_model;
typedef struct difflab_path difflab_path;
typedef struct difflab_kernel difflab_kernel;

const char* difflab_version(void);

/* Message for the last failing call on this thread; valid until the next
 * failing call. Never NULL. */
const char* difflab_last_error(void);

/* ------------------------------- models -------------------------------- */

difflab_status difflab_model_ou(int dim, double sigma, difflab_model** out);
difflab_status difflab_model_quartic(int dim, double sigma, double box_halfwidth,
                                     difflab_model** out);
/* Reflecting diffusion on [0,1] with drift b(x) = -pull * (x - 1/2). */
difflab_status difflab_model_reflected(double pull, double sigma, difflab_model** out);
void difflab_model_free(difflab_model* model);
int difflab_model_dim(const difflab_model* model);

/* -------------------------------- paths -------------------------------- */

/* init_fixed = 0: stationary initialization; 1: start at x0 (dim doubles). */
difflab_status difflab_simulate(const difflab_model* model, double dt, double t_max,
                                uint64_t seed, int init_fixed, const double* x0,
                                difflab_path** out);
difflab_status difflab_simulate_planar_bm(double dt, double t_max, uint64_t seed,
                                          const double* x0, difflab_path** out);
void difflab_path_free(difflab_path* path);
int difflab_path_dim(const difflab_path* path);
size_t difflab_path_length(const difflab_path* path);
/* Flat state array, length * dim doubles, row per time point. */
const double* difflab_path_states(const difflab_path* path);
/* Binary dump: "DLPATH01", u64 dim, f64 dt, f64 t_max, u64 seed, u64 length,
 * then length*dim little-endian doubles. */
difflab_status difflab_path_write(const difflab_path* path, const char* filename);

/* ------------------------------- kernels ------------------------------- */

difflab_status difflab_kernel_create(int dim, int order, difflab_kernel** out);
void difflab_kernel_free(difflab_kernel* kernel);
/* h^-d Ktilde(|x-z|/h); x and z are dim doubles. */
double difflab_kernel_eval_scaled(const difflab_kernel* kernel, double h, const double* x,
                                  const double* z);
/* Copies the polynomial profile coefficients; *n_out receives the count. */
difflab_status difflab_kernel_profile(const difflab_kernel* kernel, double* coeffs, size_t cap,
                                      size_t* n_out);

/* ----------------------------- experiments ----------------------------- */

/* Runs one experiment from a plain-text config (see README for the schema).
 * Writes {experiment}_{seed}.json/.csv into out_dir unless out_dir is NULL or
 * empty. *all_criteria_passed receives 1/0. If summary_json is non-NULL it
 * receives a malloc'd JSON summary to be released with difflab_string_free. */
difflab_status difflab_run_experiment(const char* experiment, const char* config_text,
                                      const char* out_dir, int* all_criteria_passed,
                                      char** summary_json);
void difflab_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DIFFLAB_H */

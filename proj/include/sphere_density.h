/* sphere_density: density estimation on the circle and the 2-sphere with a
 * greedy sparse kernel expansion, acceptance-rejection sampling, and fiber
 * simulation.
 *
 * All functions return SPHD_OK (0) on success or a nonzero error code;
 * sphd_last_error() describes the most recent failure on the calling
 * thread. Objects are handled through opaque pointers and released with the
 * matching *_free function. Coordinate buffers are flat row-major arrays of
 * doubles, `dim` (2 or 3) values per point.
 */

#ifndef SPHERE_DENSITY_H
#define SPHERE_DENSITY_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPHD_VERSION_STRING "0.1.0"

enum {
  SPHD_OK = 0,
  SPHD_ERR_INVALID_ARGUMENT = 1, /* bad parameter or malformed input */
  SPHD_ERR_DOMAIN = 2,           /* argument outside the mathematical domain */
  SPHD_ERR_IO = 3,               /* file could not be read or written */
  SPHD_ERR_INTERNAL = 4
};

typedef struct sphd_model sphd_model; /* a density estimate (KDE or sparse) */
typedef struct sphd_trace sphd_trace; /* per-iteration record of a greedy fit */

const char* sphd_version(void);
/* Thread-local message for the last failing call on this thread. */
const char* sphd_last_error(void);

/* Caps the worker threads used by bulk operations (0 = hardware default).
 * Results never depend on this setting. */
int sphd_set_max_threads(int n);

/* Frees buffers allocated by this library (points loaded from CSV). */
void sphd_free(void* p);

/* ---- sphere geometry -------------------------------------------------- */

/* Surface measure of S^{d-1}; d >= 2. */
int sphd_surface_measure(int dim, double* out);

/* `count` points uniform on S^{dim-1} into out[count*dim]; deterministic in
 * the seed. */
int sphd_sample_uniform(int dim, int64_t count, uint64_t seed, double* out);

/* ---- models ----------------------------------------------------------- */

/* Kernel density estimate over `n` data points (copied). 0 < h < 1. */
int sphd_kde_create(int dim, double h, const double* points, int64_t n, sphd_model** out);

/* Sparse expansion with `k` (center, coefficient) terms plus an optional
 * multiple of the uniform density. With `normalized_dictionary` != 0 the
 * coefficients apply to unit-L2-norm kernels. */
int sphd_sparse_create(int dim, double h, int normalized_dictionary, const double* centers,
                       const double* coefficients, int64_t k, double uniform_coefficient,
                       sphd_model** out);

void sphd_model_free(sphd_model* model);

int sphd_model_dim(const sphd_model* model, int* out);
int sphd_model_h(const sphd_model* model, double* out);
/* Number of expansion terms; a KDE reports its data size. */
int sphd_model_terms(const sphd_model* model, int64_t* out);
/* 1 for a sparse model, 0 for a KDE. */
int sphd_model_is_sparse(const sphd_model* model, int* out);

/* Density value at one point xi[dim]. */
int sphd_model_eval(const sphd_model* model, const double* xi, double* out);
/* Total mass of a sparse model (signed). */
int sphd_sparse_integral(const sphd_model* model, double* out);
/* Exact L2 inner product of two sparse models of equal dimension. */
int sphd_sparse_l2_inner(const sphd_model* a, const sphd_model* b, double* out);
/* ||truth - model|| / ||truth||, exact. Both must be sparse. */
int sphd_relative_l2_error(const sphd_model* model, const sphd_model* truth, double* out);

/* Sparse model JSON round trip (see README for the schema). */
int sphd_model_save_json(const sphd_model* model, const char* path);
int sphd_model_load_json(const char* path, sphd_model** out);

/* ---- upper bounds ------------------------------------------------------ */

/* Triangle-inequality bound: sum of the expansion terms' suprema. */
int sphd_bound_triangle(const sphd_model* model, double* out);
/* Safety * maximum over an equiangular grid; errors if the grid maximum is
 * not positive. */
int sphd_bound_grid(const sphd_model* model, int64_t grid_resolution, double safety, double* out);

/* ---- greedy fit --------------------------------------------------------- */

typedef struct {
  double h;                   /* dictionary concentration, in (0, 1) */
  int64_t iterations;         /* >= 1 */
  int normalized_dictionary;  /* nonzero: unit-L2-norm dictionary */
  int start_uniform;          /* nonzero: f_0 = uniform density, else f_0 = 0 */
  double alpha_stop;          /* early stop on |alpha| below this; 0 = off */
  int64_t heartbeat_every;    /* progress callback period; 0 = off */
  void (*heartbeat)(int64_t iteration, double alpha, void* user);
  void* user;
} sphd_fit_options;

/* Fills `opts` with the defaults (h = 0.9, 10000 iterations, normalized
 * dictionary, zero start). */
int sphd_fit_options_init(sphd_fit_options* opts);

/* Greedy sparse estimation from `n` data points. `truth` (may be NULL) adds
 * exact relative L2 error tracking to the trace. Either output pointer may
 * be NULL when not wanted. */
int sphd_fit(int dim, const double* points, int64_t n, const sphd_fit_options* opts,
             const sphd_model* truth, sphd_model** out_model, sphd_trace** out_trace);

void sphd_trace_free(sphd_trace* trace);
int sphd_trace_size(const sphd_trace* trace, int64_t* out);
/* rel_l2_error is NaN when no truth model was supplied. */
int sphd_trace_row(const sphd_trace* trace, int64_t i, int64_t* k, int64_t* center_index,
                   double* alpha, double* rel_l2_error, double* cumulative_seconds);
int sphd_trace_save_csv(const sphd_trace* trace, const char* path);

/* ---- acceptance-rejection sampling -------------------------------------- */

typedef struct {
  int64_t samples;
  int64_t proposals;
  int64_t evaluations; /* one per proposal */
  int64_t bound_violations;
  double wall_seconds;
} sphd_sampler_stats;

/* `count` samples into out[count*dim] under upper bound `bound_value`;
 * deterministic in the seed. `stats` may be NULL. */
int sphd_sample(const sphd_model* model, double bound_value, int64_t count, uint64_t seed,
                double* out, sphd_sampler_stats* stats);

int sphd_stats_save_json(const sphd_sampler_stats* stats, const char* path);

/* One measured sampling scenario for the benchmark table. CPU time is
 * process CPU time; the per-nonwoven extrapolation multiplies the CPU time
 * per sample by 100 fibers * 100000 segments. */
typedef struct {
  double bound_value;
  int64_t samples;
  int64_t evaluations;
  double cpu_seconds;
  double eval_per_sample;
  double cpu_seconds_per_sample;
  double cpu_hours_per_nonwoven;
} sphd_bench_row;

int sphd_bench_scenario(const sphd_model* model, int use_triangle_bound, int64_t grid_resolution,
                        double safety, int64_t samples, uint64_t seed, sphd_bench_row* out);

/* ---- fiber simulation ---------------------------------------------------- */

/* One polyline of `segments` steps from start[dim]; writes (segments+1)*dim
 * values. Directions are drawn from the model by acceptance-rejection. */
int sphd_simulate_fiber(const sphd_model* model, double bound_value, const double* start,
                        double step, int64_t segments, uint64_t seed, double* out_points,
                        sphd_sampler_stats* stats);

/* `fiber_count` independent fibers; fiber i uses the stream split from
 * (seed, i). `starts` may be NULL (all fibers at the origin) or hold
 * fiber_count*dim start points. Writes fiber_count*(segments+1)*dim values.
 */
int sphd_simulate_web(const sphd_model* model, double bound_value, int64_t fiber_count,
                      int64_t segments, const double* starts, double step, uint64_t seed,
                      double* out_points, sphd_sampler_stats* stats);

int sphd_web_save_csv(const double* points, int64_t fiber_count, int64_t segments, int dim,
                      const char* path);

/* ---- validation pipeline ------------------------------------------------- */

/* Projects S^2 data onto S^1 by dropping the third component and
 * renormalizing; points with planar norm below drop_threshold are skipped.
 * out2d needs room for n*2 values; *out_count receives the number kept. */
int sphd_project_to_circle(const double* points3d, int64_t n, double drop_threshold,
                           double* out2d, int64_t* out_count);

/* Antipodal doubling: out[2*n*dim] = originals then negations. */
int sphd_symmetrize(const double* points, int64_t n, int dim, double* out);

/* Relative L2 discrepancy ||A-B||/||A|| of two circle models; optionally
 * writes the plot table (theta, value_a, value_b) to table_csv_path.
 * out_extrema (may be NULL) receives 8 values: theta and value of the
 * maximum and minimum of curve A, then those of curve B. */
int sphd_compare_densities(const sphd_model* a, const sphd_model* b, int64_t grid_resolution,
                           const char* table_csv_path, double* out_discrepancy,
                           double* out_extrema);

/* ---- shared point CSV ----------------------------------------------------- */

/* Loads the shared point-set format (one row per point, dim columns).
 * expect_dim = 0 infers the dimension from the first row; header != 0 skips
 * the first line; normalize != 0 rescales rows onto the sphere instead of
 * rejecting non-unit rows. The buffer is allocated by the library; release
 * it with sphd_free. */
int sphd_points_load_csv(const char* path, int expect_dim, int header, int normalize,
                         double** out, int64_t* out_n, int* out_dim);
int sphd_points_save_csv(const char* path, const double* points, int64_t n, int dim, int header);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPHERE_DENSITY_H */

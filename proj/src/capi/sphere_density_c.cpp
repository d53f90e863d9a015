#include "sphere_density.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "core/bench.hpp"
#include "core/estimators.hpp"
#include "core/fiber_sim.hpp"
#include "core/greedy_fit.hpp"
#include "core/model_io.hpp"
#include "core/parallel.hpp"
#include "core/rejection_sampler.hpp"
#include "core/sphere_geom.hpp"
#include "core/validation.hpp"

struct sphd_model {
  std::unique_ptr<sphd::Density> density;
  sphd::DenseKde* kde = nullptr;         // set when the model is a KDE
  sphd::SparseDensity* sparse = nullptr; // set when the model is sparse
};

struct sphd_trace {
  sphd::GreedyTrace trace;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const char* what) {
  t_last_error = what;
  return code;
}

// Runs `fn`, translating exceptions into error codes.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return SPHD_OK;
  } catch (const sphd::IoError& e) {
    return fail(SPHD_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(SPHD_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SPHD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPHD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPHD_ERR_INTERNAL, e.what());
  }
}

int require(bool ok, const char* what) {
  return ok ? SPHD_OK : fail(SPHD_ERR_INVALID_ARGUMENT, what);
}

const sphd::SparseDensity* as_sparse(const sphd_model* m) { return m ? m->sparse : nullptr; }

sphd::PointSet copy_points(int dim, const double* points, int64_t n) {
  std::vector<double> coords(points, points + n * dim);
  return sphd::PointSet(dim, std::move(coords));
}

sphd_sampler_stats to_c(const sphd::SamplerStats& s) {
  return sphd_sampler_stats{s.samples, s.proposals, s.evaluations, s.bound_violations,
                            s.wall_seconds};
}

sphd::SamplerStats from_c(const sphd_sampler_stats& s) {
  sphd::SamplerStats out;
  out.samples = s.samples;
  out.proposals = s.proposals;
  out.evaluations = s.evaluations;
  out.bound_violations = s.bound_violations;
  out.wall_seconds = s.wall_seconds;
  return out;
}

}  // namespace

extern "C" {

const char* sphd_version(void) { return SPHD_VERSION_STRING; }

const char* sphd_last_error(void) { return t_last_error.c_str(); }

int sphd_set_max_threads(int n) {
  return guarded([&] { sphd::set_max_threads(n); });
}

void sphd_free(void* p) { std::free(p); }

int sphd_surface_measure(int dim, double* out) {
  if (int rc = require(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = sphd::surface_measure(dim); });
}

int sphd_sample_uniform(int dim, int64_t count, uint64_t seed, double* out) {
  if (int rc = require(out != nullptr || count == 0, "out is null")) return rc;
  return guarded([&] {
    const sphd::PointSet ps = sphd::sample_uniform(dim, count, seed);
    std::memcpy(out, ps.data(), ps.flat().size() * sizeof(double));
  });
}

int sphd_kde_create(int dim, double h, const double* points, int64_t n, sphd_model** out) {
  if (int rc = require(out && points, "null argument")) return rc;
  return guarded([&] {
    auto kde = std::make_unique<sphd::DenseKde>(sphd::KernelParams{dim, h},
                                                copy_points(dim, points, n));
    auto* m = new sphd_model;
    m->kde = kde.get();
    m->density = std::move(kde);
    *out = m;
  });
}

int sphd_sparse_create(int dim, double h, int normalized_dictionary, const double* centers,
                       const double* coefficients, int64_t k, double uniform_coefficient,
                       sphd_model** out) {
  if (int rc = require(out != nullptr, "out is null")) return rc;
  if (int rc = require(k == 0 || (centers && coefficients), "null terms")) return rc;
  return guarded([&] {
    sphd::PointSet cs = k > 0 ? copy_points(dim, centers, k) : sphd::PointSet(dim);
    std::vector<double> coeffs(coefficients, coefficients + k);
    auto sparse = std::make_unique<sphd::SparseDensity>(sphd::KernelParams{dim, h},
                                                        normalized_dictionary != 0, std::move(cs),
                                                        std::move(coeffs), uniform_coefficient);
    auto* m = new sphd_model;
    m->sparse = sparse.get();
    m->density = std::move(sparse);
    *out = m;
  });
}

void sphd_model_free(sphd_model* model) { delete model; }

int sphd_model_dim(const sphd_model* model, int* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  *out = model->density->dim();
  return SPHD_OK;
}

int sphd_model_h(const sphd_model* model, double* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  *out = model->kde ? model->kde->params().h : model->sparse->params().h;
  return SPHD_OK;
}

int sphd_model_terms(const sphd_model* model, int64_t* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  *out = model->kde ? model->kde->size() : model->sparse->terms();
  return SPHD_OK;
}

int sphd_model_is_sparse(const sphd_model* model, int* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  *out = model->sparse != nullptr;
  return SPHD_OK;
}

int sphd_model_eval(const sphd_model* model, const double* xi, double* out) {
  if (int rc = require(model && xi && out, "null argument")) return rc;
  return guarded([&] {
    *out = model->density->eval(
        sphd::UnitVector::checked({xi, static_cast<std::size_t>(model->density->dim())}));
  });
}

int sphd_sparse_integral(const sphd_model* model, double* out) {
  if (int rc = require(as_sparse(model) && out, "model is not sparse")) return rc;
  return guarded([&] { *out = sphd::sparse_integral(*model->sparse); });
}

int sphd_sparse_l2_inner(const sphd_model* a, const sphd_model* b, double* out) {
  if (int rc = require(as_sparse(a) && as_sparse(b) && out, "models must be sparse")) return rc;
  return guarded([&] { *out = sphd::sparse_l2_inner(*a->sparse, *b->sparse); });
}

int sphd_relative_l2_error(const sphd_model* model, const sphd_model* truth, double* out) {
  if (int rc = require(as_sparse(model) && as_sparse(truth) && out, "models must be sparse")) {
    return rc;
  }
  return guarded([&] { *out = sphd::exact_relative_l2_error(*model->sparse, *truth->sparse); });
}

int sphd_model_save_json(const sphd_model* model, const char* path) {
  if (int rc = require(as_sparse(model) && path, "model is not sparse or path is null")) return rc;
  return guarded([&] { sphd::save_model_json(path, *model->sparse); });
}

int sphd_model_load_json(const char* path, sphd_model** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] {
    auto sparse = std::make_unique<sphd::SparseDensity>(sphd::load_model_json(path));
    auto* m = new sphd_model;
    m->sparse = sparse.get();
    m->density = std::move(sparse);
    *out = m;
  });
}

int sphd_bound_triangle(const sphd_model* model, double* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  return guarded(
      [&] { *out = sphd::upper_bound(*model->density, sphd::BoundMethod::Triangle).value; });
}

int sphd_bound_grid(const sphd_model* model, int64_t grid_resolution, double safety, double* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  return guarded([&] {
    *out = sphd::upper_bound(*model->density, sphd::BoundMethod::Grid, grid_resolution, safety)
               .value;
  });
}

int sphd_fit_options_init(sphd_fit_options* opts) {
  if (int rc = require(opts != nullptr, "opts is null")) return rc;
  *opts = sphd_fit_options{};
  opts->h = 0.9;
  opts->iterations = 10000;
  opts->normalized_dictionary = 1;
  return SPHD_OK;
}

int sphd_fit(int dim, const double* points, int64_t n, const sphd_fit_options* opts,
             const sphd_model* truth, sphd_model** out_model, sphd_trace** out_trace) {
  if (int rc = require(points && opts, "null argument")) return rc;
  if (int rc = require(truth == nullptr || truth->sparse != nullptr, "truth must be sparse")) {
    return rc;
  }
  return guarded([&] {
    sphd::GreedyConfig config;
    config.params = sphd::KernelParams{dim, opts->h};
    config.iterations = opts->iterations;
    config.normalized_dictionary = opts->normalized_dictionary != 0;
    config.initial = opts->start_uniform ? sphd::GreedyConfig::Initial::UniformDensity
                                         : sphd::GreedyConfig::Initial::Zero;
    config.alpha_stop = opts->alpha_stop;
    config.heartbeat_every = opts->heartbeat_every;
    if (opts->heartbeat != nullptr) {
      auto cb = opts->heartbeat;
      void* user = opts->user;
      config.heartbeat = [cb, user](std::int64_t k, double alpha) { cb(k, alpha, user); };
    }
    auto [model, trace] = sphd::fit(copy_points(dim, points, n), config,
                                    truth ? truth->sparse : nullptr);
    if (out_model) {
      auto sparse = std::make_unique<sphd::SparseDensity>(std::move(model));
      auto* m = new sphd_model;
      m->sparse = sparse.get();
      m->density = std::move(sparse);
      *out_model = m;
    }
    if (out_trace) *out_trace = new sphd_trace{std::move(trace)};
  });
}

void sphd_trace_free(sphd_trace* trace) { delete trace; }

int sphd_trace_size(const sphd_trace* trace, int64_t* out) {
  if (int rc = require(trace && out, "null argument")) return rc;
  *out = static_cast<int64_t>(trace->trace.rows.size());
  return SPHD_OK;
}

int sphd_trace_row(const sphd_trace* trace, int64_t i, int64_t* k, int64_t* center_index,
                   double* alpha, double* rel_l2_error, double* cumulative_seconds) {
  if (int rc = require(trace != nullptr, "trace is null")) return rc;
  if (int rc = require(i >= 0 && i < static_cast<int64_t>(trace->trace.rows.size()),
                       "row index out of range")) {
    return rc;
  }
  const auto& r = trace->trace.rows[static_cast<std::size_t>(i)];
  if (k) *k = r.k;
  if (center_index) *center_index = r.center_index;
  if (alpha) *alpha = r.alpha;
  if (rel_l2_error) {
    *rel_l2_error = r.rel_l2_error ? *r.rel_l2_error : std::numeric_limits<double>::quiet_NaN();
  }
  if (cumulative_seconds) *cumulative_seconds = r.cumulative_seconds;
  return SPHD_OK;
}

int sphd_trace_save_csv(const sphd_trace* trace, const char* path) {
  if (int rc = require(trace && path, "null argument")) return rc;
  return guarded([&] { sphd::save_trace_csv(path, trace->trace); });
}

int sphd_sample(const sphd_model* model, double bound_value, int64_t count, uint64_t seed,
                double* out, sphd_sampler_stats* stats) {
  if (int rc = require(model && (out || count == 0), "null argument")) return rc;
  return guarded([&] {
    const sphd::DensityBound bound{bound_value, sphd::BoundMethod::Grid, std::nullopt,
                                   std::nullopt};
    auto [points, s] = sphd::sample(*model->density, bound, count, seed);
    std::memcpy(out, points.data(), points.flat().size() * sizeof(double));
    if (stats) *stats = to_c(s);
  });
}

int sphd_stats_save_json(const sphd_sampler_stats* stats, const char* path) {
  if (int rc = require(stats && path, "null argument")) return rc;
  return guarded([&] { sphd::save_stats_json(path, from_c(*stats)); });
}

int sphd_simulate_fiber(const sphd_model* model, double bound_value, const double* start,
                        double step, int64_t segments, uint64_t seed, double* out_points,
                        sphd_sampler_stats* stats) {
  if (int rc = require(model && start && out_points, "null argument")) return rc;
  return guarded([&] {
    const sphd::DensityBound bound{bound_value, sphd::BoundMethod::Grid, std::nullopt,
                                   std::nullopt};
    const int dim = model->density->dim();
    auto [fiber, s] = sphd::simulate_fiber(*model->density, bound,
                                           {start, static_cast<std::size_t>(dim)}, step, segments,
                                           seed);
    std::memcpy(out_points, fiber.points.data(), fiber.points.size() * sizeof(double));
    if (stats) *stats = to_c(s);
  });
}

int sphd_simulate_web(const sphd_model* model, double bound_value, int64_t fiber_count,
                      int64_t segments, const double* starts, double step, uint64_t seed,
                      double* out_points, sphd_sampler_stats* stats) {
  if (int rc = require(model && out_points, "null argument")) return rc;
  return guarded([&] {
    const sphd::DensityBound bound{bound_value, sphd::BoundMethod::Grid, std::nullopt,
                                   std::nullopt};
    const int dim = model->density->dim();
    sphd::StartLayout layout;
    if (starts != nullptr) {
      layout.kind = sphd::StartLayout::Kind::FixedPoints;
      layout.points.assign(starts, starts + fiber_count * dim);
    }
    auto [fibers, s] =
        sphd::simulate_web(*model->density, bound, fiber_count, segments, layout, step, seed);
    double* dst = out_points;
    for (const auto& fiber : fibers) {
      std::memcpy(dst, fiber.points.data(), fiber.points.size() * sizeof(double));
      dst += fiber.points.size();
    }
    if (stats) *stats = to_c(s);
  });
}

int sphd_web_save_csv(const double* points, int64_t fiber_count, int64_t segments, int dim,
                      const char* path) {
  if (int rc = require(points && path, "null argument")) return rc;
  return guarded([&] {
    std::vector<sphd::FiberPolyline> fibers;
    fibers.reserve(static_cast<std::size_t>(fiber_count));
    const int64_t stride = (segments + 1) * dim;
    for (int64_t f = 0; f < fiber_count; ++f) {
      sphd::FiberPolyline fiber{dim, 1.0, std::vector<double>(points + f * stride,
                                                              points + (f + 1) * stride)};
      fibers.push_back(std::move(fiber));
    }
    sphd::save_fibers_csv(path, fibers);
  });
}

int sphd_project_to_circle(const double* points3d, int64_t n, double drop_threshold,
                           double* out2d, int64_t* out_count) {
  if (int rc = require(points3d && out2d && out_count, "null argument")) return rc;
  return guarded([&] {
    auto [projected, report] =
        sphd::project_to_circle(copy_points(3, points3d, n), drop_threshold);
    std::memcpy(out2d, projected.data(), projected.flat().size() * sizeof(double));
    *out_count = report.projected_count;
  });
}

int sphd_symmetrize(const double* points, int64_t n, int dim, double* out) {
  if (int rc = require(points != nullptr || n == 0, "points is null")) return rc;
  if (int rc = require(out != nullptr || n == 0, "out is null")) return rc;
  return guarded([&] {
    const sphd::PointSet sym = sphd::symmetrize(
        n > 0 ? copy_points(dim, points, n) : sphd::PointSet(dim));
    std::memcpy(out, sym.data(), sym.flat().size() * sizeof(double));
  });
}

int sphd_compare_densities(const sphd_model* a, const sphd_model* b, int64_t grid_resolution,
                           const char* table_csv_path, double* out_discrepancy,
                           double* out_extrema) {
  if (int rc = require(as_sparse(a) && as_sparse(b), "models must be sparse")) return rc;
  return guarded([&] {
    const sphd::CompareReport report =
        sphd::compare_densities(*a->sparse, *b->sparse, grid_resolution);
    if (table_csv_path) sphd::save_compare_csv(table_csv_path, report);
    if (out_discrepancy) *out_discrepancy = report.rel_l2_discrepancy;
    if (out_extrema) {
      out_extrema[0] = report.max_a.theta;
      out_extrema[1] = report.max_a.value;
      out_extrema[2] = report.min_a.theta;
      out_extrema[3] = report.min_a.value;
      out_extrema[4] = report.max_b.theta;
      out_extrema[5] = report.max_b.value;
      out_extrema[6] = report.min_b.theta;
      out_extrema[7] = report.min_b.value;
    }
  });
}

int sphd_bench_scenario(const sphd_model* model, int use_triangle_bound, int64_t grid_resolution,
                        double safety, int64_t samples, uint64_t seed, sphd_bench_row* out) {
  if (int rc = require(model && out, "null argument")) return rc;
  return guarded([&] {
    const sphd::DensityBound bound =
        sphd::upper_bound(*model->density,
                          use_triangle_bound ? sphd::BoundMethod::Triangle : sphd::BoundMethod::Grid,
                          grid_resolution, safety);
    const sphd::BenchRow row = sphd::bench_scenario("", *model->density, bound, samples, seed);
    out->bound_value = row.bound_value;
    out->samples = row.samples;
    out->evaluations = row.evaluations;
    out->cpu_seconds = row.cpu_seconds;
    out->eval_per_sample = row.eval_per_sample;
    out->cpu_seconds_per_sample = row.cpu_seconds_per_sample;
    out->cpu_hours_per_nonwoven = row.cpu_hours_per_nonwoven;
  });
}

int sphd_points_load_csv(const char* path, int expect_dim, int header, int normalize, double** out,
                         int64_t* out_n, int* out_dim) {
  if (int rc = require(path && out && out_n && out_dim, "null argument")) return rc;
  return guarded([&] {
    const sphd::PointSet ps = sphd::load_points_csv(
        path, expect_dim, header != 0,
        normalize ? sphd::PointSet::Normalize::Rescale : sphd::PointSet::Normalize::Reject);
    const std::size_t bytes = ps.flat().size() * sizeof(double);
    double* buf = static_cast<double*>(std::malloc(bytes == 0 ? sizeof(double) : bytes));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, ps.data(), bytes);
    *out = buf;
    *out_n = ps.size();
    *out_dim = ps.dim();
  });
}

int sphd_points_save_csv(const char* path, const double* points, int64_t n, int dim, int header) {
  if (int rc = require(path && (points || n == 0), "null argument")) return rc;
  return guarded([&] {
    const sphd::PointSet ps = n > 0 ? copy_points(dim, points, n) : sphd::PointSet(dim);
    sphd::save_points_csv(path, ps, header != 0);
  });
}

}  // extern "C"

#include "core/greedy_fit.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "core/parallel.hpp"

namespace sphd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_fit_inputs(const PointSet& data, const GreedyConfig& config,
                      const SparseDensity* truth) {
  validate(config.params);
  if (data.empty()) throw std::invalid_argument("fit: data set is empty");
  if (data.dim() != config.params.dim) throw std::invalid_argument("fit: dimension mismatch");
  if (config.iterations < 1) throw std::invalid_argument("fit: iterations must be >= 1");
  if (config.oracle_expectations && truth == nullptr) {
    throw std::invalid_argument("fit: oracle_expectations requires a truth model");
  }
  if (truth != nullptr && truth->dim() != data.dim()) {
    throw std::invalid_argument("fit: truth dimension mismatch");
  }
}

}  // namespace

std::vector<double> precompute_expectations(const PointSet& data, const GreedyConfig& config) {
  validate(config.params);
  if (data.empty()) throw std::invalid_argument("precompute_expectations: data set is empty");
  if (data.dim() != config.params.dim) {
    throw std::invalid_argument("precompute_expectations: dimension mismatch");
  }
  const std::int64_t n = data.size();
  const double h = config.params.h;
  const double dict_scale =
      config.normalized_dictionary ? 1.0 / kernel_l2_norm(config.params) : 1.0;
  const double scale = dict_scale / static_cast<double>(n);

  std::vector<double> e(static_cast<std::size_t>(n));
  parallel_range(
      n,
      [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
          e[static_cast<std::size_t>(i)] =
              scale * kernel_dot_sum(data.data(), data.dim(), 0, n, data.coords(i).data(), h);
        }
      },
      64);

  for (double v : e) {
    if (!std::isfinite(v)) throw std::runtime_error("precompute_expectations: non-finite value");
  }
  return e;
}

std::pair<SparseDensity, GreedyTrace> fit(const PointSet& data, const GreedyConfig& config,
                                          const SparseDensity* truth) {
  check_fit_inputs(data, config, truth);
  const auto t0 = Clock::now();

  const std::int64_t n = data.size();
  const KernelParams params = config.params;
  const double dict_scale = config.normalized_dictionary ? 1.0 / kernel_l2_norm(params) : 1.0;
  // <d_i, d_j> = Q_{h^2}(X_i . X_j) * dict_scale^2; with a normalized
  // dictionary <d, d> is exactly 1.
  const double hh = params.h * params.h;
  const double self_inner = config.normalized_dictionary
                                ? 1.0
                                : kernel_eval(KernelParams{params.dim, hh}, 1.0);

  // e_n: empirical expectations, or exact <truth, d_n> in oracle mode.
  std::vector<double> e;
  if (config.oracle_expectations) {
    e.resize(static_cast<std::size_t>(n));
    parallel_range(
        n,
        [&](std::int64_t lo, std::int64_t hi) {
          for (std::int64_t i = lo; i < hi; ++i) {
            e[static_cast<std::size_t>(i)] =
                dict_scale * truth->inner_with_kernel(params, data[i]);
          }
        },
        256);
  } else {
    e = precompute_expectations(data, config);
  }

  GreedyTrace trace;
  trace.precompute_seconds = seconds_since(t0);
  trace.rows.reserve(static_cast<std::size_t>(config.iterations));

  SparseDensity model(params, config.normalized_dictionary);
  // g_n = <f_k, d_n>, maintained incrementally across iterations.
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  if (config.initial == GreedyConfig::Initial::UniformDensity) {
    model.set_uniform_coefficient(1.0);
    const double g0 = dict_scale / surface_measure(params.dim);
    std::fill(g.begin(), g.end(), g0);
  }

  // Error telemetry: ||f - f_k||^2 = tt - 2*tf + ff, updated per step.
  const bool track_error = truth != nullptr;
  double tt = 0.0, tf = 0.0, ff = 0.0;
  if (track_error) {
    tt = sparse_l2_inner(*truth, *truth);
    if (!(tt > 0.0)) throw std::invalid_argument("fit: truth model has zero norm");
    tf = sparse_l2_inner(*truth, model);
    ff = sparse_l2_inner(model, model);
  }

  const double* pts = data.data();
  const int dim = params.dim;
  const double b = 1.0 + hh;
  const double two_hh = 2.0 * hh;
  const double pair_scale = (1.0 - hh) / surface_measure(dim) * dict_scale * dict_scale;

  const auto iter_start = Clock::now();
  std::int64_t chosen = 0;
  bool have_choice = false;

  for (std::int64_t k = 1; k <= config.iterations; ++k) {
    double alpha = 0.0;

    if (!have_choice) {
      // First selection scans e - g directly.
      const auto [best, best_i] = parallel_argmax(
          n,
          [&](std::int64_t lo, std::int64_t hi) {
            double best_v = -1.0;
            std::int64_t bi = lo;
            for (std::int64_t i = lo; i < hi; ++i) {
              const double v = std::abs(e[static_cast<std::size_t>(i)] -
                                        g[static_cast<std::size_t>(i)]);
              if (v > best_v) {
                best_v = v;
                bi = i;
              }
            }
            return std::make_pair(best_v, bi);
          },
          8192);
      (void)best;
      chosen = best_i;
      have_choice = true;
    }

    const std::int64_t chosen_this = chosen;
    alpha = e[static_cast<std::size_t>(chosen_this)] - g[static_cast<std::size_t>(chosen_this)];
    const double g_chosen = g[static_cast<std::size_t>(chosen_this)];
    const UnitVector center = data[chosen_this];
    model.add_term(center, alpha);

    if (track_error) {
      // <f, d_chosen>: exact in oracle mode (it is e), closed form otherwise.
      const double truth_inner = config.oracle_expectations
                                     ? e[static_cast<std::size_t>(chosen)]
                                     : dict_scale * truth->inner_with_kernel(params, center);
      ff += 2.0 * alpha * g_chosen + alpha * alpha * self_inner;
      tf += alpha * truth_inner;
    }

    // Fused update of g and scan for the next argmax: g_n += alpha *
    // <d_chosen, d_n>, then the |e - g| maximum over the same chunk.
    const double cx = center[0], cy = center[1], cz = dim == 3 ? center[2] : 0.0;
    const double a = alpha * pair_scale;
    const auto [next_best, next_i] = parallel_argmax(
        n,
        [&](std::int64_t lo, std::int64_t hi) {
          for (std::int64_t i = lo; i < hi; ++i) {
            const double* p = pts + i * dim;
            double t = dim == 2 ? p[0] * cx + p[1] * cy : p[0] * cx + p[1] * cy + p[2] * cz;
            t = t > 1.0 ? 1.0 : (t < -1.0 ? -1.0 : t);
            const double base = b - two_hh * t;
            const double q = dim == 2 ? 1.0 / base : 1.0 / (base * std::sqrt(base));
            g[static_cast<std::size_t>(i)] += a * q;
          }
          double best_v = -1.0;
          std::int64_t bi = lo;
          for (std::int64_t i = lo; i < hi; ++i) {
            const double v =
                std::abs(e[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i)]);
            if (v > best_v) {
              best_v = v;
              bi = i;
            }
          }
          return std::make_pair(best_v, bi);
        },
        8192);
    (void)next_best;
    chosen = next_i;

    TraceRow r;
    r.k = k;
    r.center_index = chosen_this;
    r.alpha = alpha;
    r.abs_alpha = std::abs(alpha);
    r.cumulative_seconds = seconds_since(t0);
    if (track_error) {
      const double num = tt - 2.0 * tf + ff;
      r.rel_l2_error = std::sqrt(std::max(0.0, num)) / std::sqrt(tt);
    }
    trace.rows.push_back(std::move(r));

    if (config.gram_inspector) config.gram_inspector(k, g);
    if (config.heartbeat_every > 0 && config.heartbeat && k % config.heartbeat_every == 0) {
      config.heartbeat(k, alpha);
    }
    if (config.alpha_stop > 0.0 && std::abs(alpha) < config.alpha_stop) break;
  }

  trace.iteration_seconds = seconds_since(iter_start);
  return {model.merged(), std::move(trace)};
}

double exact_relative_l2_error(const SparseDensity& model, const SparseDensity& truth) {
  const double tt = sparse_l2_inner(truth, truth);
  if (!(tt > 0.0)) throw std::invalid_argument("exact_relative_l2_error: truth has zero norm");
  const double tf = sparse_l2_inner(truth, model);
  const double ff = sparse_l2_inner(model, model);
  return std::sqrt(std::max(0.0, tt - 2.0 * tf + ff)) / std::sqrt(tt);
}

}  // namespace sphd

#include "core/abel_poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/parallel.hpp"

namespace sphd {

namespace {

constexpr double kClampTol = 1e-12;

double clamp_cosine(double t) {
  if (t > 1.0) {
    if (t > 1.0 + kClampTol) throw std::domain_error("kernel_eval: cosine argument > 1");
    return 1.0;
  }
  if (t < -1.0) {
    if (t < -1.0 - kClampTol) throw std::domain_error("kernel_eval: cosine argument < -1");
    return -1.0;
  }
  return t;
}

}  // namespace

void validate(const KernelParams& params) {
  if (params.dim != 2 && params.dim != 3) {
    throw std::invalid_argument("KernelParams: dim must be 2 or 3");
  }
  if (!(params.h > 0.0) || !(params.h < 1.0)) {
    throw std::invalid_argument("KernelParams: h must lie strictly in (0, 1), got " +
                                std::to_string(params.h));
  }
}

double kernel_eval(const KernelParams& params, double t) {
  validate(params);
  t = clamp_cosine(t);
  const double h = params.h;
  const double num = (1.0 - h * h) / surface_measure(params.dim);
  const double base = 1.0 + h * h - 2.0 * h * t;
  if (params.dim == 2) return num / base;
  return num / (base * std::sqrt(base));
}

double kernel_sphere_integral(const KernelParams& params) {
  validate(params);
  return 1.0;
}

double kernel_l2_inner(const KernelParams& params, double h2, double gamma) {
  validate(params);
  validate(KernelParams{params.dim, h2});
  return kernel_eval(KernelParams{params.dim, params.h * h2}, gamma);
}

double kernel_l2_norm(const KernelParams& params) {
  validate(params);
  return std::sqrt(kernel_eval(KernelParams{params.dim, params.h * params.h}, 1.0));
}

double legendre_moment(const KernelParams& params, int n) {
  validate(params);
  if (n < 0) throw std::invalid_argument("legendre_moment: n must be >= 0");
  return std::pow(params.h, n);
}

namespace {

// Base-block kernel sums in four interleaved lanes; mirrors pairwise_sum's
// accumulation tree so bulk evaluations stay deterministic and vectorizable.
template <int Dim, bool Weighted>
double block_sum(const double* pts, const double* wts, std::int64_t lo, std::int64_t hi,
                 const double* c, double b, double twoh) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  auto term = [&](std::int64_t i) {
    const double* p = pts + i * Dim;
    double t;
    if constexpr (Dim == 2) {
      t = p[0] * c[0] + p[1] * c[1];
    } else {
      t = p[0] * c[0] + p[1] * c[1] + p[2] * c[2];
    }
    t = t > 1.0 ? 1.0 : (t < -1.0 ? -1.0 : t);
    const double base = b - twoh * t;
    double v;
    if constexpr (Dim == 2) {
      v = 1.0 / base;
    } else {
      v = 1.0 / (base * std::sqrt(base));
    }
    if constexpr (Weighted) v *= wts[i];
    return v;
  };
  std::int64_t j = lo;
  for (; j + 4 <= hi; j += 4) {
    acc[0] += term(j);
    acc[1] += term(j + 1);
    acc[2] += term(j + 2);
    acc[3] += term(j + 3);
  }
  for (; j < hi; ++j) acc[0] += term(j);
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

template <int Dim, bool Weighted>
double tree_sum(const double* pts, const double* wts, std::int64_t lo, std::int64_t hi,
                const double* c, double b, double twoh) {
  const std::int64_t n = hi - lo;
  if (n <= 256) return block_sum<Dim, Weighted>(pts, wts, lo, hi, c, b, twoh);
  const std::int64_t mid = lo + n / 2;
  return tree_sum<Dim, Weighted>(pts, wts, lo, mid, c, b, twoh) +
         tree_sum<Dim, Weighted>(pts, wts, mid, hi, c, b, twoh);
}

}  // namespace

double kernel_dot_sum(const double* points, int dim, std::int64_t lo, std::int64_t hi,
                      const double* c, double h) {
  const double b = 1.0 + h * h;
  const double twoh = 2.0 * h;
  const double scale = (1.0 - h * h) / surface_measure(dim);
  const double s = dim == 2 ? tree_sum<2, false>(points, nullptr, lo, hi, c, b, twoh)
                            : tree_sum<3, false>(points, nullptr, lo, hi, c, b, twoh);
  return scale * s;
}

double kernel_dot_wsum(const double* points, const double* weights, int dim, std::int64_t lo,
                       std::int64_t hi, const double* c, double h) {
  const double b = 1.0 + h * h;
  const double twoh = 2.0 * h;
  const double scale = (1.0 - h * h) / surface_measure(dim);
  const double s = dim == 2 ? tree_sum<2, true>(points, weights, lo, hi, c, b, twoh)
                            : tree_sum<3, true>(points, weights, lo, hi, c, b, twoh);
  return scale * s;
}

}  // namespace sphd

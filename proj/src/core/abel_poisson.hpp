#pragma once

#include <cstdint>

#include "core/sphere_geom.hpp"

namespace sphd {

// One member of the Abel-Poisson family on S^{d-1}:
//   Q_h(t) = (1 / omega(S^{d-1})) * (1 - h^2) / (1 + h^2 - 2 h t)^{d/2}.
// h in (0,1) strictly; h -> 0 approaches the uniform density, h -> 1 the
// point concentration.
struct KernelParams {
  int dim;
  double h;
};

// Throws std::invalid_argument on dim not in {2,3} or h outside (0,1).
void validate(const KernelParams& params);

// Kernel value at cosine t. Inputs within 1e-12 of [-1, 1] are clamped;
// anything farther is a domain error.
double kernel_eval(const KernelParams& params, double t);

// Integral of the kernel over the sphere. Closed form: exactly 1.
double kernel_sphere_integral(const KernelParams& params);

// L2(S^{d-1}) inner product of two kernels with concentrations h1 (from
// `params`) and h2, centers gamma = xi . eta apart. The family is closed
// under this pairing: the value is Q_{h1*h2}(gamma).
double kernel_l2_inner(const KernelParams& params, double h2, double gamma);

// L2 norm of one kernel: sqrt(Q_{h^2}(1)).
double kernel_l2_norm(const KernelParams& params);

// n-th moment of a kernel-distributed direction against its center:
// E[P_n(X.c)] on S^2 and E[cos(n theta)] on S^1 are both h^n.
double legendre_moment(const KernelParams& params, int n);

// Hot-loop primitives shared by the estimators: block-wise sums of kernel
// values against a flat point array, accumulated in the fixed tree order of
// pairwise_sum (deterministic under any thread count).
//
// Sum over i in [lo, hi) of Q_h(points[i] . c).
double kernel_dot_sum(const double* points, int dim, std::int64_t lo, std::int64_t hi,
                      const double* c, double h);
// Same with per-point weights.
double kernel_dot_wsum(const double* points, const double* weights, int dim, std::int64_t lo,
                       std::int64_t hi, const double* c, double h);

}  // namespace sphd

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/abel_poisson.hpp"
#include "core/sphere_geom.hpp"

namespace sphd {

// Anything the sampler can draw from: a nonnegative-up-to-clamping density
// estimate on S^{d-1}.
class Density {
 public:
  virtual ~Density() = default;
  virtual int dim() const = 0;
  // Raw-pointer overload for bulk loops; `xi` holds dim() coordinates.
  virtual double eval_raw(const double* xi) const = 0;
  // Supremum bound from the triangle inequality over the expansion terms.
  virtual double triangle_bound() const = 0;

  double eval(const UnitVector& xi) const;
};

// Classical kernel density estimate: one kernel per data point, uniform
// weights 1/N kept implicit.
class DenseKde final : public Density {
 public:
  DenseKde(KernelParams params, PointSet centers);

  int dim() const override { return params_.dim; }
  double eval_raw(const double* xi) const override;
  double triangle_bound() const override;

  const KernelParams& params() const { return params_; }
  const PointSet& centers() const { return centers_; }
  std::int64_t size() const { return centers_.size(); }

 private:
  KernelParams params_;
  PointSet centers_;
};

// Sparse expansion sum_k alpha_k d_k plus an optional multiple of the
// uniform density (the greedy fit's nonzero starting approximation lands
// there). With normalized_dictionary, each d_k is the kernel divided by its
// L2 norm. Values may be negative; clamping is the sampler's concern.
class SparseDensity final : public Density {
 public:
  SparseDensity(KernelParams params, bool normalized_dictionary);
  SparseDensity(KernelParams params, bool normalized_dictionary, PointSet centers,
                std::vector<double> coefficients, double uniform_coefficient = 0.0);

  int dim() const override { return params_.dim; }
  double eval_raw(const double* xi) const override;
  double triangle_bound() const override;

  const KernelParams& params() const { return params_; }
  bool normalized_dictionary() const { return normalized_; }
  std::int64_t terms() const { return centers_.size(); }
  const PointSet& centers() const { return centers_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double uniform_coefficient() const { return uniform_coeff_; }

  // 1 / (L2 norm of the kernel) when normalized, else 1.
  double dictionary_scale() const { return dict_scale_; }

  void add_term(const UnitVector& center, double coefficient);
  void set_uniform_coefficient(double c) { uniform_coeff_ = c; }

  // Copy with duplicate centers merged (coefficients summed, first-seen
  // order kept) and zero-coefficient terms dropped.
  SparseDensity merged() const;

  // <this, Q_kp(center . )> in L2, raw (un-normalized) kernel on the right.
  double inner_with_kernel(const KernelParams& kp, const UnitVector& center) const;

 private:
  KernelParams params_;
  bool normalized_;
  double dict_scale_;
  PointSet centers_;
  std::vector<double> coefficients_;
  double uniform_coeff_ = 0.0;
};

// Total mass: sum_k alpha_k * integral(d_k) + uniform coefficient.
double sparse_integral(const SparseDensity& model);

// Exact L2 inner product of two sparse models (dimensions must match;
// concentrations may differ). O(K_a * K_b) closed-form pair sums.
double sparse_l2_inner(const SparseDensity& a, const SparseDensity& b);

enum class BoundMethod { Triangle, Grid };

// Upper bound C for acceptance-rejection; value dominates the estimator's
// grid maximum by construction.
struct DensityBound {
  double value;
  BoundMethod method;
  std::optional<std::int64_t> grid_resolution;
  std::optional<double> safety_factor;
};

DensityBound upper_bound(const Density& estimator, BoundMethod method,
                         std::int64_t grid_resolution = 10000, double safety = 1.1);

}  // namespace sphd

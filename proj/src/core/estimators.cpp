#include "core/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "core/parallel.hpp"

namespace sphd {

double Density::eval(const UnitVector& xi) const {
  if (xi.dim() != dim()) throw std::invalid_argument("Density::eval: dimension mismatch");
  return eval_raw(xi.coords().data());
}

DenseKde::DenseKde(KernelParams params, PointSet centers)
    : params_(params), centers_(std::move(centers)) {
  validate(params_);
  if (centers_.empty()) throw std::invalid_argument("DenseKde: needs at least one center");
  if (centers_.dim() != params_.dim) throw std::invalid_argument("DenseKde: dimension mismatch");
}

double DenseKde::eval_raw(const double* xi) const {
  const std::int64_t n = centers_.size();
  return kernel_dot_sum(centers_.data(), params_.dim, 0, n, xi, params_.h) /
         static_cast<double>(n);
}

double DenseKde::triangle_bound() const { return kernel_eval(params_, 1.0); }

SparseDensity::SparseDensity(KernelParams params, bool normalized_dictionary)
    : params_(params),
      normalized_(normalized_dictionary),
      dict_scale_(normalized_dictionary ? 1.0 / kernel_l2_norm(params) : 1.0),
      centers_(params.dim) {
  validate(params_);
}

SparseDensity::SparseDensity(KernelParams params, bool normalized_dictionary, PointSet centers,
                             std::vector<double> coefficients, double uniform_coefficient)
    : SparseDensity(params, normalized_dictionary) {
  if (centers.dim() != params.dim) throw std::invalid_argument("SparseDensity: dimension mismatch");
  if (centers.size() != static_cast<std::int64_t>(coefficients.size())) {
    throw std::invalid_argument("SparseDensity: centers/coefficients size mismatch");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw std::invalid_argument("SparseDensity: non-finite coefficient");
  }
  centers_ = std::move(centers);
  coefficients_ = std::move(coefficients);
  uniform_coeff_ = uniform_coefficient;
}

double SparseDensity::eval_raw(const double* xi) const {
  double v = uniform_coeff_ / surface_measure(params_.dim);
  if (!centers_.empty()) {
    v += dict_scale_ * kernel_dot_wsum(centers_.data(), coefficients_.data(), params_.dim, 0,
                                       centers_.size(), xi, params_.h);
  }
  return v;
}

double SparseDensity::triangle_bound() const {
  double s = 0.0;
  for (double c : coefficients_) s += std::abs(c);
  return s * dict_scale_ * kernel_eval(params_, 1.0) +
         std::abs(uniform_coeff_) / surface_measure(params_.dim);
}

void SparseDensity::add_term(const UnitVector& center, double coefficient) {
  if (!std::isfinite(coefficient)) {
    throw std::invalid_argument("SparseDensity: non-finite coefficient");
  }
  centers_.push_back(center);
  coefficients_.push_back(coefficient);
}

SparseDensity SparseDensity::merged() const {
  SparseDensity out(params_, normalized_);
  out.uniform_coeff_ = uniform_coeff_;
  // Key on exact coordinates: duplicates come from re-selecting the same
  // dictionary element, so they are bit-identical.
  struct Key {
    double x, y, z;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      auto mix = [](std::size_t h, double v) {
        std::size_t b;
        static_assert(sizeof(b) == sizeof(v));
        __builtin_memcpy(&b, &v, sizeof(v));
        return h * 1099511628211ULL ^ b;
      };
      return mix(mix(mix(14695981039346656037ULL, k.x), k.y), k.z);
    }
  };
  std::unordered_map<Key, std::size_t, KeyHash> seen;
  std::vector<UnitVector> order;
  std::vector<double> sums;
  const std::int64_t k = terms();
  for (std::int64_t i = 0; i < k; ++i) {
    const UnitVector c = centers_[i];
    const Key key{c[0], c[1], params_.dim == 3 ? c[2] : 0.0};
    auto [it, inserted] = seen.emplace(key, order.size());
    if (inserted) {
      order.push_back(c);
      sums.push_back(0.0);
    }
    sums[it->second] += coefficients_[static_cast<std::size_t>(i)];
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (sums[i] != 0.0) out.add_term(order[i], sums[i]);
  }
  return out;
}

double SparseDensity::inner_with_kernel(const KernelParams& kp, const UnitVector& center) const {
  if (kp.dim != params_.dim) {
    throw std::invalid_argument("inner_with_kernel: dimension mismatch");
  }
  // <uniform/omega, Q> = integral(Q)/omega = 1/omega.
  double v = uniform_coeff_ / surface_measure(params_.dim);
  if (!centers_.empty()) {
    v += dict_scale_ * kernel_dot_wsum(centers_.data(), coefficients_.data(), params_.dim, 0,
                                       centers_.size(), center.coords().data(),
                                       params_.h * kp.h);
  }
  return v;
}

double sparse_integral(const SparseDensity& model) {
  double s = 0.0;
  for (double c : model.coefficients()) s += c;
  return s * model.dictionary_scale() + model.uniform_coefficient();
}

double sparse_l2_inner(const SparseDensity& a, const SparseDensity& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sparse_l2_inner: dimension mismatch");
  const double omega = surface_measure(a.dim());
  const double hh = a.params().h * b.params().h;
  const double scale = a.dictionary_scale() * b.dictionary_scale();

  const std::int64_t ka = a.terms();
  double cross = 0.0;
  if (ka > 0 && b.terms() > 0) {
    cross = parallel_pairwise_sum(
        ka,
        [&](std::int64_t lo, std::int64_t hi) {
          return pairwise_sum(lo, hi, [&](std::int64_t i) {
            return a.coefficients()[static_cast<std::size_t>(i)] *
                   kernel_dot_wsum(b.centers().data(), b.coefficients().data(), b.dim(), 0,
                                   b.terms(), a.centers().coords(i).data(), hh);
          });
        },
        256);
  }

  double sum_a = 0.0, sum_b = 0.0;
  for (double c : a.coefficients()) sum_a += c;
  for (double c : b.coefficients()) sum_b += c;

  // Uniform-term pairings: <u/omega, d> = integral(d)/omega.
  const double ua = a.uniform_coefficient();
  const double ub = b.uniform_coefficient();
  return scale * cross + (ua * sum_b * b.dictionary_scale() + ub * sum_a * a.dictionary_scale() +
                          ua * ub) / omega;
}

DensityBound upper_bound(const Density& estimator, BoundMethod method,
                         std::int64_t grid_resolution, double safety) {
  if (method == BoundMethod::Triangle) {
    return DensityBound{estimator.triangle_bound(), BoundMethod::Triangle, std::nullopt,
                        std::nullopt};
  }
  if (grid_resolution < 1) throw std::invalid_argument("upper_bound: grid_resolution must be >= 1");
  if (!(safety > 1.0)) throw std::invalid_argument("upper_bound: safety factor must exceed 1");

  const SphereGrid grid = equiangular_grid(estimator.dim(), grid_resolution);
  const std::int64_t n = grid.nodes.size();
  const double* pts = grid.nodes.data();
  const int d = estimator.dim();
  const auto [max_val, max_idx] = parallel_argmax(
      n,
      [&](std::int64_t lo, std::int64_t hi) {
        double best = -std::numeric_limits<double>::infinity();
        std::int64_t best_i = lo;
        for (std::int64_t i = lo; i < hi; ++i) {
          const double v = estimator.eval_raw(pts + i * d);
          if (v > best) {
            best = v;
            best_i = i;
          }
        }
        return std::make_pair(best, best_i);
      },
      64);
  (void)max_idx;
  if (!(max_val > 0.0)) {
    throw std::domain_error("upper_bound: grid maximum is not positive (degenerate estimator)");
  }
  return DensityBound{safety * max_val, BoundMethod::Grid, grid_resolution, safety};
}

}  // namespace sphd

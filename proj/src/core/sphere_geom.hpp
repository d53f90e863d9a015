#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core/rng.hpp"

namespace sphd {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kUnitNormTol = 1e-12;

// Surface measure of S^{d-1}: 2 pi^{d/2} / Gamma(d/2). Exact constants for
// the circle and the 2-sphere, Gamma formula beyond. d < 2 is a domain error.
double surface_measure(int d);

// A point on S^{d-1}, d in {2, 3}. The third coordinate is zero when d == 2
// so dot products can ignore the dimension.
class UnitVector {
 public:
  UnitVector(double x, double y);             // requires unit norm
  UnitVector(double x, double y, double z);   // requires unit norm

  // Construction from raw coordinates; `coords.size()` fixes the dimension.
  static UnitVector checked(std::span<const double> coords);     // |v| = 1 within 1e-12
  static UnitVector normalized(std::span<const double> coords);  // rescales, rejects ~0

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  double dot(const UnitVector& o) const {
    return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2];
  }
  UnitVector negated() const;

  bool operator==(const UnitVector&) const = default;

 private:
  UnitVector() = default;
  std::array<double, 3> c_{0.0, 0.0, 0.0};
  int dim_ = 3;
};

// Flat storage for a set of points on one sphere; no per-point overhead.
class PointSet {
 public:
  explicit PointSet(int dim);
  PointSet(int dim, std::vector<double> coords);  // takes ownership, checks norms

  enum class Normalize { Reject, Rescale };
  static PointSet from_raw(int dim, std::vector<double> coords, Normalize mode);

  int dim() const { return dim_; }
  std::int64_t size() const { return static_cast<std::int64_t>(x_.size()) / dim_; }
  bool empty() const { return x_.empty(); }

  UnitVector operator[](std::int64_t i) const;
  std::span<const double> coords(std::int64_t i) const {
    return {x_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const double* data() const { return x_.data(); }
  const std::vector<double>& flat() const { return x_; }

  void reserve(std::int64_t n) { x_.reserve(static_cast<std::size_t>(n * dim_)); }
  void push_back(const UnitVector& v);

 private:
  int dim_;
  std::vector<double> x_;
};

// `count` points uniform w.r.t. the surface measure, via normalized standard
// Gaussians. Fixed engine consumption per point, so streams are replayable.
PointSet sample_uniform(int d, std::int64_t count, std::uint64_t seed);

// Draw a single uniform point from an existing engine (same construction).
UnitVector uniform_direction(int d, Rng& rng);

enum class GridKind { Equiangular, Quadrature };

struct SphereGrid {
  int dim;
  GridKind kind;
  PointSet nodes;
  std::vector<double> weights;  // present iff kind == Quadrature; sums to surface_measure(dim)

  // Quadrature-only: sum of w_i * f(node_i).
  double integrate(const std::function<double(const UnitVector&)>& f) const;
};

// Unweighted equiangular nodes. d=2: `resolution` equally spaced angles on
// [0, 2pi). d=3: ceil(sqrt(resolution)) polar rows at half-offset angles
// (i+1/2) pi/m (no pole nodes) times ceil(resolution/m) azimuths, giving a
// node count in [resolution, (m+1)^2).
SphereGrid equiangular_grid(int d, std::int64_t resolution);

// Positive-weight quadrature. d=2: trapezoidal rule with order+1 nodes,
// exact for trigonometric degree <= order. d=3: (order+1)-point
// Gauss-Legendre in the polar cosine times order+1 uniform azimuths, exact
// for spherical polynomials of degree <= order.
SphereGrid quadrature_grid(int d, int order);

}  // namespace sphd

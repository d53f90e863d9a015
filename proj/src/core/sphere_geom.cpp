#include "core/sphere_geom.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphd {

namespace {

void require_dim(int d) {
  if (d != 2 && d != 3) {
    throw std::invalid_argument("dimension must be 2 or 3, got " + std::to_string(d));
  }
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double surface_measure(int d) {
  if (d < 2) throw std::domain_error("surface_measure: d must be >= 2");
  if (d == 2) return 2.0 * kPi;
  if (d == 3) return 4.0 * kPi;
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

UnitVector::UnitVector(double x, double y) {
  const std::array<double, 2> v{x, y};
  *this = checked(v);
}

UnitVector::UnitVector(double x, double y, double z) {
  const std::array<double, 3> v{x, y, z};
  *this = checked(v);
}

UnitVector UnitVector::checked(std::span<const double> coords) {
  require_dim(static_cast<int>(coords.size()));
  const double n = norm2(coords);
  if (std::abs(n - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("UnitVector: norm " + std::to_string(n) + " is not 1");
  }
  UnitVector u;
  u.dim_ = static_cast<int>(coords.size());
  for (int i = 0; i < u.dim_; ++i) u.c_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)];
  return u;
}

UnitVector UnitVector::normalized(std::span<const double> coords) {
  require_dim(static_cast<int>(coords.size()));
  const double n = norm2(coords);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVector: cannot normalize a zero or non-finite vector");
  }
  UnitVector u;
  u.dim_ = static_cast<int>(coords.size());
  for (int i = 0; i < u.dim_; ++i) {
    u.c_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)] / n;
  }
  return u;
}

UnitVector UnitVector::negated() const {
  UnitVector u = *this;
  for (auto& x : u.c_) x = -x;
  return u;
}

PointSet::PointSet(int dim) : dim_(dim) { require_dim(dim); }

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim) {
  require_dim(dim);
  if (coords.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("PointSet: coordinate count not divisible by dimension");
  }
  x_ = std::move(coords);
  const std::int64_t n = size();
  for (std::int64_t i = 0; i < n; ++i) UnitVector::checked(this->coords(i));
}

PointSet PointSet::from_raw(int dim, std::vector<double> coords, Normalize mode) {
  if (mode == Normalize::Reject) return PointSet(dim, std::move(coords));
  require_dim(dim);
  if (coords.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("PointSet: coordinate count not divisible by dimension");
  }
  PointSet ps(dim);
  ps.x_.resize(coords.size());
  const std::int64_t n = static_cast<std::int64_t>(coords.size()) / dim;
  for (std::int64_t i = 0; i < n; ++i) {
    const UnitVector u =
        UnitVector::normalized({coords.data() + i * dim, static_cast<std::size_t>(dim)});
    for (int k = 0; k < dim; ++k) ps.x_[static_cast<std::size_t>(i * dim + k)] = u[k];
  }
  return ps;
}

UnitVector PointSet::operator[](std::int64_t i) const { return UnitVector::checked(coords(i)); }

void PointSet::push_back(const UnitVector& v) {
  if (v.dim() != dim_) throw std::invalid_argument("PointSet: dimension mismatch");
  for (int k = 0; k < dim_; ++k) x_.push_back(v[k]);
}

UnitVector uniform_direction(int d, Rng& rng) {
  require_dim(d);
  for (;;) {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    double z0, z1;
    normal_pair(rng, z0, z1);
    g[0] = z0;
    g[1] = z1;
    if (d == 3) {
      double z2, z3;
      normal_pair(rng, z2, z3);
      g[2] = z2;  // fourth normal discarded; keeps per-point consumption fixed
    }
    const double n = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    if (n > 1e-100) {
      return UnitVector::normalized({g.data(), static_cast<std::size_t>(d)});
    }
  }
}

PointSet sample_uniform(int d, std::int64_t count, std::uint64_t seed) {
  require_dim(d);
  if (count < 0) throw std::invalid_argument("sample_uniform: count must be >= 0");
  Rng rng(seed);
  PointSet ps(d);
  ps.reserve(count);
  for (std::int64_t i = 0; i < count; ++i) ps.push_back(uniform_direction(d, rng));
  return ps;
}

double SphereGrid::integrate(const std::function<double(const UnitVector&)>& f) const {
  if (kind != GridKind::Quadrature) {
    throw std::logic_error("SphereGrid::integrate requires a quadrature grid");
  }
  const std::int64_t n = nodes.size();
  double s = 0.0;
  for (std::int64_t i = 0; i < n; ++i) s += weights[static_cast<std::size_t>(i)] * f(nodes[i]);
  return s;
}

SphereGrid equiangular_grid(int d, std::int64_t resolution) {
  require_dim(d);
  if (resolution < 1) throw std::invalid_argument("equiangular_grid: resolution must be >= 1");

  PointSet nodes(d);
  if (d == 2) {
    nodes.reserve(resolution);
    for (std::int64_t j = 0; j < resolution; ++j) {
      const double a = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(resolution);
      nodes.push_back(UnitVector::normalized(std::array<double, 2>{std::cos(a), std::sin(a)}));
    }
  } else {
    const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(resolution))));
    const std::int64_t n_az = (resolution + m - 1) / m;
    nodes.reserve(m * n_az);
    for (std::int64_t i = 0; i < m; ++i) {
      const double theta = kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(m);
      const double st = std::sin(theta), ct = std::cos(theta);
      for (std::int64_t j = 0; j < n_az; ++j) {
        const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_az);
        nodes.push_back(UnitVector::normalized(
            std::array<double, 3>{st * std::cos(phi), st * std::sin(phi), ct}));
      }
    }
  }
  return SphereGrid{d, GridKind::Equiangular, std::move(nodes), {}};
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -t;
    x[static_cast<std::size_t>(n - 1 - i)] = t;
    const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

}  // namespace

SphereGrid quadrature_grid(int d, int order) {
  require_dim(d);
  if (order < 1) throw std::invalid_argument("quadrature_grid: order must be >= 1");

  PointSet nodes(d);
  std::vector<double> weights;
  if (d == 2) {
    const int n = order + 1;
    nodes.reserve(n);
    weights.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
      nodes.push_back(UnitVector::normalized(std::array<double, 2>{std::cos(a), std::sin(a)}));
      weights.push_back(2.0 * kPi / static_cast<double>(n));
    }
  } else {
    const int nt = order + 1;
    const int np = order + 1;
    std::vector<double> gx, gw;
    gauss_legendre(nt, gx, gw);
    nodes.reserve(static_cast<std::int64_t>(nt) * np);
    weights.reserve(static_cast<std::size_t>(nt) * static_cast<std::size_t>(np));
    for (int i = 0; i < nt; ++i) {
      const double ct = gx[static_cast<std::size_t>(i)];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double wt = gw[static_cast<std::size_t>(i)] * 2.0 * kPi / static_cast<double>(np);
      for (int j = 0; j < np; ++j) {
        const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(np);
        nodes.push_back(UnitVector::normalized(
            std::array<double, 3>{st * std::cos(phi), st * std::sin(phi), ct}));
        weights.push_back(wt);
      }
    }
  }

  double wsum = 0.0;
  for (double w : weights) wsum += w;
  const double target = surface_measure(d);
  if (std::abs(wsum - target) > 1e-9 * target) {
    throw std::logic_error("quadrature_grid: weight sum off the surface measure");
  }
  return SphereGrid{d, GridKind::Quadrature, std::move(nodes), std::move(weights)};
}

}  // namespace sphd

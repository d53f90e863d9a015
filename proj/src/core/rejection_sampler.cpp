#include "core/rejection_sampler.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "core/parallel.hpp"

namespace sphd {

void SamplerStats::merge(const SamplerStats& o) {
  samples += o.samples;
  proposals += o.proposals;
  evaluations += o.evaluations;
  bound_violations += o.bound_violations;
  wall_seconds += o.wall_seconds;
}

namespace {

constexpr std::int64_t kBatch = 1024;

struct Proposal {
  double x[3];
  double u;
};

// Draws one proposal; fixed engine consumption per call.
Proposal make_proposal(int dim, double c, Rng& rng) {
  Proposal p;
  const UnitVector xi = uniform_direction(dim, rng);
  p.x[0] = xi[0];
  p.x[1] = xi[1];
  p.x[2] = dim == 3 ? xi[2] : 0.0;
  p.u = uniform01(rng) * c;
  return p;
}

// Consumes one evaluated proposal; returns true when accepted.
bool consume(double value, double u, double c, SamplerStats& stats) {
  ++stats.proposals;
  ++stats.evaluations;
  if (value > c) ++stats.bound_violations;
  return u <= std::max(value, 0.0);
}

}  // namespace

std::pair<PointSet, SamplerStats> sample(const Density& estimator, const DensityBound& bound,
                                         std::int64_t count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample: count must be >= 0");
  SamplerStats stats;
  PointSet out(estimator.dim());
  if (count == 0) return {std::move(out), stats};
  if (!(bound.value > 0.0)) throw std::invalid_argument("sample: bound must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  const int dim = estimator.dim();
  const double c = bound.value;
  out.reserve(count);

  Rng rng(seed);
  std::vector<Proposal> batch(static_cast<std::size_t>(kBatch));
  std::vector<double> values(static_cast<std::size_t>(kBatch));

  while (stats.samples < count) {
    for (auto& p : batch) p = make_proposal(dim, c, rng);
    parallel_range(
        kBatch,
        [&](std::int64_t lo, std::int64_t hi) {
          for (std::int64_t i = lo; i < hi; ++i) {
            values[static_cast<std::size_t>(i)] =
                estimator.eval_raw(batch[static_cast<std::size_t>(i)].x);
          }
        },
        64);
    for (std::int64_t i = 0; i < kBatch && stats.samples < count; ++i) {
      const auto& p = batch[static_cast<std::size_t>(i)];
      if (consume(values[static_cast<std::size_t>(i)], p.u, c, stats)) {
        out.push_back(UnitVector::normalized({p.x, static_cast<std::size_t>(dim)}));
        ++stats.samples;
      }
    }
  }

  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(out), stats};
}

RejectionSampler::RejectionSampler(const Density& estimator, DensityBound bound,
                                   std::uint64_t seed)
    : estimator_(estimator), bound_(bound), rng_(seed) {
  if (!(bound_.value > 0.0)) throw std::invalid_argument("RejectionSampler: bound must be positive");
}

UnitVector RejectionSampler::draw() {
  const auto t0 = std::chrono::steady_clock::now();
  for (;;) {
    const Proposal p = make_proposal(estimator_.dim(), bound_.value, rng_);
    const double v = estimator_.eval_raw(p.x);
    if (consume(v, p.u, bound_.value, stats_)) {
      ++stats_.samples;
      stats_.wall_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return UnitVector::normalized({p.x, static_cast<std::size_t>(estimator_.dim())});
    }
  }
}

GoodnessReport goodness_check(const PointSet& samples, int dim, double h,
                              const UnitVector& center, int max_order) {
  if (samples.empty()) throw std::invalid_argument("goodness_check: no samples");
  if (samples.dim() != dim || center.dim() != dim) {
    throw std::invalid_argument("goodness_check: dimension mismatch");
  }
  if (!(h >= 0.0) || !(h < 1.0)) {
    throw std::invalid_argument("goodness_check: h must lie in [0, 1)");
  }
  if (max_order < 1) throw std::invalid_argument("goodness_check: max_order must be >= 1");

  const std::int64_t m = samples.size();
  GoodnessReport report;
  for (int n = 1; n <= max_order; ++n) {
    // Statistic in the cosine t = X.c: Legendre P_n on S^2, Chebyshev T_n
    // (= cos(n theta)) on S^1; both have expectation h^n under the kernel.
    auto stat = [&](double t) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2;
        if (dim == 3) {
          p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        } else {
          p2 = 2.0 * t * p1 - p0;
        }
        p0 = p1;
        p1 = p2;
      }
      return n == 0 ? p0 : p1;
    };

    double mean = pairwise_sum(0, m, [&](std::int64_t i) {
                    return stat(std::clamp(center.dot(samples[i]), -1.0, 1.0));
                  }) /
                  static_cast<double>(m);
    double var = pairwise_sum(0, m, [&](std::int64_t i) {
                   const double s = stat(std::clamp(center.dot(samples[i]), -1.0, 1.0)) - mean;
                   return s * s;
                 }) /
                 static_cast<double>(m);
    const double se = std::sqrt(var / static_cast<double>(m));
    const double expected = std::pow(h, n);
    MomentCheck check{n, expected, mean, se, std::abs(mean - expected) <= 3.0 * se};
    report.pass = report.pass && check.pass;
    report.moments.push_back(check);
  }
  return report;
}

}  // namespace sphd

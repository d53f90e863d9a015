#include "core/fiber_sim.hpp"

#include <stdexcept>

#include "core/parallel.hpp"

namespace sphd {

FiberPolyline walk_fiber(DirectionSource& directions, std::span<const double> start, double step,
                         std::int64_t segments) {
  const int dim = static_cast<int>(start.size());
  if (dim != 2 && dim != 3) throw std::invalid_argument("walk_fiber: start must have 2 or 3 coords");
  if (!(step > 0.0)) throw std::invalid_argument("walk_fiber: step must be positive");
  if (segments < 0) throw std::invalid_argument("walk_fiber: segments must be >= 0");

  FiberPolyline fiber{dim, step, {}};
  fiber.points.reserve(static_cast<std::size_t>((segments + 1) * dim));
  for (int k = 0; k < dim; ++k) fiber.points.push_back(start[static_cast<std::size_t>(k)]);
  for (std::int64_t j = 0; j < segments; ++j) {
    const UnitVector y = directions.next();
    if (y.dim() != dim) throw std::invalid_argument("walk_fiber: direction dimension mismatch");
    const std::size_t base = fiber.points.size() - static_cast<std::size_t>(dim);
    for (int k = 0; k < dim; ++k) {
      fiber.points.push_back(fiber.points[base + static_cast<std::size_t>(k)] + step * y[k]);
    }
  }
  return fiber;
}

namespace {

class RejectionDirections final : public DirectionSource {
 public:
  RejectionDirections(const Density& estimator, const DensityBound& bound, std::uint64_t seed)
      : sampler_(estimator, bound, seed) {}
  UnitVector next() override { return sampler_.draw(); }
  const SamplerStats& stats() const { return sampler_.stats(); }

 private:
  RejectionSampler sampler_;
};

}  // namespace

std::pair<FiberPolyline, SamplerStats> simulate_fiber(const Density& estimator,
                                                      const DensityBound& bound,
                                                      std::span<const double> start, double step,
                                                      std::int64_t segments, std::uint64_t seed) {
  if (static_cast<int>(start.size()) != estimator.dim()) {
    throw std::invalid_argument("simulate_fiber: start point dimension mismatch");
  }
  RejectionDirections directions(estimator, bound, seed);
  FiberPolyline fiber = walk_fiber(directions, start, step, segments);
  return {std::move(fiber), directions.stats()};
}

std::pair<std::vector<FiberPolyline>, SamplerStats> simulate_web(
    const Density& estimator, const DensityBound& bound, std::int64_t fiber_count,
    std::int64_t segments_per_fiber, const StartLayout& layout, double step, std::uint64_t seed) {
  if (fiber_count < 1) throw std::invalid_argument("simulate_web: fiber_count must be >= 1");
  const int dim = estimator.dim();

  // Resolve all start points up front so fiber generation order cannot
  // matter.
  std::vector<double> starts;
  switch (layout.kind) {
    case StartLayout::Kind::Origin:
      starts.assign(static_cast<std::size_t>(fiber_count * dim), 0.0);
      break;
    case StartLayout::Kind::FixedPoints:
      if (static_cast<std::int64_t>(layout.points.size()) != fiber_count * dim) {
        throw std::invalid_argument("simulate_web: layout points must hold fiber_count * dim values");
      }
      starts = layout.points;
      break;
    case StartLayout::Kind::UniformBox: {
      if (static_cast<int>(layout.box_min.size()) != dim ||
          static_cast<int>(layout.box_max.size()) != dim) {
        throw std::invalid_argument("simulate_web: box bounds must hold dim values");
      }
      for (int k = 0; k < dim; ++k) {
        if (!(layout.box_min[static_cast<std::size_t>(k)] <=
              layout.box_max[static_cast<std::size_t>(k)])) {
          throw std::invalid_argument("simulate_web: box min exceeds max");
        }
      }
      Rng rng(split_seed(seed, static_cast<std::uint64_t>(fiber_count)));
      starts.reserve(static_cast<std::size_t>(fiber_count * dim));
      for (std::int64_t i = 0; i < fiber_count; ++i) {
        for (int k = 0; k < dim; ++k) {
          const double lo = layout.box_min[static_cast<std::size_t>(k)];
          const double hi = layout.box_max[static_cast<std::size_t>(k)];
          starts.push_back(lo + (hi - lo) * uniform01(rng));
        }
      }
      break;
    }
  }

  std::vector<FiberPolyline> fibers(static_cast<std::size_t>(fiber_count));
  std::vector<SamplerStats> stats(static_cast<std::size_t>(fiber_count));
  parallel_chunks(fiber_count, 1, [&](std::int64_t c, std::int64_t lo, std::int64_t hi) {
    (void)c;
    for (std::int64_t i = lo; i < hi; ++i) {
      auto [fiber, s] = simulate_fiber(
          estimator, bound, {starts.data() + i * dim, static_cast<std::size_t>(dim)}, step,
          segments_per_fiber, split_seed(seed, static_cast<std::uint64_t>(i)));
      fibers[static_cast<std::size_t>(i)] = std::move(fiber);
      stats[static_cast<std::size_t>(i)] = s;
    }
  });

  SamplerStats total;
  for (const auto& s : stats) total.merge(s);
  return {std::move(fibers), total};
}

}  // namespace sphd

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/rejection_sampler.hpp"

namespace sphd {

// Polyline Z_0..Z_J in R^d with constant step width between consecutive
// points: Z_{j+1} = Z_j + step * Y_{j+1}.
struct FiberPolyline {
  int dim;
  double step;
  std::vector<double> points;  // (J+1) * dim, row-major

  std::int64_t segments() const {
    return static_cast<std::int64_t>(points.size()) / dim - 1;
  }
  std::span<const double> point(std::int64_t j) const {
    return {points.data() + j * dim, static_cast<std::size_t>(dim)};
  }
};

// Per-segment direction supply; lets tests drive the walk with a fixed
// direction and production code with the rejection sampler.
class DirectionSource {
 public:
  virtual ~DirectionSource() = default;
  virtual UnitVector next() = 0;
};

FiberPolyline walk_fiber(DirectionSource& directions, std::span<const double> start, double step,
                         std::int64_t segments);

// Algorithm: start at `start`, draw each segment direction from `estimator`
// by acceptance-rejection, advance by `step`.
std::pair<FiberPolyline, SamplerStats> simulate_fiber(const Density& estimator,
                                                      const DensityBound& bound,
                                                      std::span<const double> start, double step,
                                                      std::int64_t segments, std::uint64_t seed);

struct StartLayout {
  enum class Kind { Origin, FixedPoints, UniformBox };
  Kind kind = Kind::Origin;
  std::vector<double> points;   // FixedPoints: fiber_count * dim values
  std::vector<double> box_min;  // UniformBox: dim values
  std::vector<double> box_max;
};

// Independent fibers; fiber i draws directions from the stream seeded with
// split_seed(seed, i), and box layouts draw start points from
// split_seed(seed, fiber_count). Fibers are generated in parallel; output
// and stats do not depend on the thread count.
std::pair<std::vector<FiberPolyline>, SamplerStats> simulate_web(
    const Density& estimator, const DensityBound& bound, std::int64_t fiber_count,
    std::int64_t segments_per_fiber, const StartLayout& layout, double step, std::uint64_t seed);

}  // namespace sphd

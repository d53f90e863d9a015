#pragma once

#include <cstdint>
#include <string>

#include "core/rejection_sampler.hpp"

namespace sphd {

// One measured sampling scenario: estimator x bound strategy. CPU time is
// process CPU time (all threads), the per-nonwoven extrapolation assumes
// 100 fibers of 1e5 segments (1e7 direction draws).
struct BenchRow {
  std::string scenario;
  std::string bound_method;
  double bound_value = 0.0;
  std::int64_t samples = 0;
  std::int64_t evaluations = 0;
  double cpu_seconds = 0.0;
  double eval_per_sample = 0.0;
  double cpu_seconds_per_sample = 0.0;
  double cpu_hours_per_nonwoven = 0.0;

  static constexpr double kDrawsPerNonwoven = 100.0 * 100000.0;
};

double process_cpu_seconds();

BenchRow bench_scenario(const std::string& name, const Density& estimator,
                        const DensityBound& bound, std::int64_t samples, std::uint64_t seed);

}  // namespace sphd

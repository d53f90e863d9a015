#include "core/bench.hpp"

#include <ctime>

namespace sphd {

double process_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

BenchRow bench_scenario(const std::string& name, const Density& estimator,
                        const DensityBound& bound, std::int64_t samples, std::uint64_t seed) {
  BenchRow row;
  row.scenario = name;
  row.bound_method = bound.method == BoundMethod::Triangle ? "triangle" : "grid";
  row.bound_value = bound.value;

  const double cpu0 = process_cpu_seconds();
  const auto [points, stats] = sample(estimator, bound, samples, seed);
  row.cpu_seconds = process_cpu_seconds() - cpu0;

  row.samples = stats.samples;
  row.evaluations = stats.evaluations;
  row.eval_per_sample = stats.eval_per_sample();
  row.cpu_seconds_per_sample =
      stats.samples > 0 ? row.cpu_seconds / static_cast<double>(stats.samples) : 0.0;
  row.cpu_hours_per_nonwoven =
      row.cpu_seconds_per_sample * BenchRow::kDrawsPerNonwoven / 3600.0;
  return row;
}

}  // namespace sphd

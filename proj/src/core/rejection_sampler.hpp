#pragma once

#include <cstdint>
#include <vector>

#include "core/estimators.hpp"

namespace sphd {

struct SamplerStats {
  std::int64_t samples = 0;
  std::int64_t proposals = 0;
  std::int64_t evaluations = 0;  // one per proposal
  std::int64_t bound_violations = 0;
  double wall_seconds = 0.0;

  void merge(const SamplerStats& o);
  double eval_per_sample() const {
    return samples > 0 ? static_cast<double>(evaluations) / static_cast<double>(samples) : 0.0;
  }
};

// Acceptance-rejection sampling from `estimator` under upper bound C =
// bound.value: propose xi uniform on the sphere and u uniform on [0, C],
// accept when u <= max(estimator(xi), 0). Proposals where the estimator
// exceeds C are counted in bound_violations and handled as if the value were
// C (such a proposal always accepts); sampling continues. Deterministic for
// a fixed seed under any thread count.
std::pair<PointSet, SamplerStats> sample(const Density& estimator, const DensityBound& bound,
                                         std::int64_t count, std::uint64_t seed);

// Incremental single-draw form for consumers that interleave draws with
// other work (the fiber simulation). Stats accumulate across draws.
class RejectionSampler {
 public:
  RejectionSampler(const Density& estimator, DensityBound bound, std::uint64_t seed);
  UnitVector draw();
  const SamplerStats& stats() const { return stats_; }

 private:
  const Density& estimator_;
  DensityBound bound_;
  Rng rng_;
  SamplerStats stats_;
};

struct MomentCheck {
  int order;
  double expected;   // h^n
  double observed;   // empirical mean of P_n(X.c) (S^2) or cos(n theta) (S^1)
  double std_error;  // sample standard error of that mean
  bool pass;         // |observed - expected| <= 3 * std_error
};

struct GoodnessReport {
  std::vector<MomentCheck> moments;
  bool pass = true;
};

// Moment test of samples against the kernel density with concentration h
// centered at `center`. h = 0 checks against the uniform density; otherwise
// h in (0, 1).
GoodnessReport goodness_check(const PointSet& samples, int dim, double h,
                              const UnitVector& center, int max_order = 3);

}  // namespace sphd

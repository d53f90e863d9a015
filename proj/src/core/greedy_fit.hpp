#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "core/estimators.hpp"

namespace sphd {

struct GreedyConfig {
  KernelParams params;
  std::int64_t iterations = 10000;
  bool normalized_dictionary = true;
  enum class Initial { Zero, UniformDensity };
  Initial initial = Initial::Zero;

  // Optional early stop once |alpha_k| falls below this (0 disables).
  double alpha_stop = 0.0;

  // When true, the empirical expectations are replaced by exact inner
  // products against `truth` (which must then be passed to fit). This is the
  // noise-free harness where the residual norm is provably non-increasing.
  bool oracle_expectations = false;

  // Progress callback every `heartbeat_every` iterations (0 disables).
  std::int64_t heartbeat_every = 0;
  std::function<void(std::int64_t iteration, double alpha)> heartbeat;

  // Test hook: after iteration k, receives the maintained inner products
  // <f_k, d_n> for cross-checking the incremental update.
  std::function<void(std::int64_t k, const std::vector<double>& gram)> gram_inspector;
};

struct TraceRow {
  std::int64_t k;             // 1-based iteration index
  std::int64_t center_index;  // index into the data set
  double alpha;
  double abs_alpha;
  std::optional<double> rel_l2_error;  // present when a truth model was given
  double cumulative_seconds;           // wall clock since fit() entry, precompute included
};

struct GreedyTrace {
  std::vector<TraceRow> rows;
  double precompute_seconds = 0.0;
  double iteration_seconds = 0.0;
};

// Empirical expectations e_n = (1/N) sum_m d_n(X_m) over the dictionary of
// (optionally unit-normalized) kernels centered at the data points. Computed
// once; deterministic under any thread count.
std::vector<double> precompute_expectations(const PointSet& data, const GreedyConfig& config);

// Greedy estimation of a PDF from samples. Each step picks the dictionary
// element with the largest |e_n - <f_k, d_n>|, appends it with coefficient
// alpha = e_n - <f_k, d_n>, and updates the maintained inner products with
// one closed-form kernel pairing per dictionary element (O(N) per step).
// Ties break to the lowest index. The returned model has duplicate centers
// merged; the trace records the raw greedy path.
std::pair<SparseDensity, GreedyTrace> fit(const PointSet& data, const GreedyConfig& config,
                                          const SparseDensity* truth = nullptr);

// ||truth - model|| / ||truth||, all inner products in closed form. Negative
// round-off under the root clamps to zero.
double exact_relative_l2_error(const SparseDensity& model, const SparseDensity& truth);

}  // namespace sphd

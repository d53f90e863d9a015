#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core/estimators.hpp"
#include "core/fiber_sim.hpp"
#include "core/greedy_fit.hpp"
#include "core/validation.hpp"

namespace sphd {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shared point-set format: CSV, one row per point, dim columns, no header
// unless requested. Values are written with 17 significant digits so a
// load/save round trip is bit-exact.

PointSet load_points_csv(const std::string& path, int expect_dim = 0, bool header = false,
                         PointSet::Normalize mode = PointSet::Normalize::Reject);
void save_points_csv(const std::string& path, const PointSet& points, bool header = false);

// Sparse model format: JSON object
//   {dimension, h, normalized_dictionary, uniform_coefficient,
//    terms: [{center: [...], coefficient}, ...]}
// uniform_coefficient is optional on load and defaults to 0.
SparseDensity load_model_json(const std::string& path);
void save_model_json(const std::string& path, const SparseDensity& model);

// Trace format: CSV with header
//   k,center_index,alpha,abs_alpha,rel_l2_error,cumulative_seconds
// rel_l2_error is empty when no truth was supplied.
void save_trace_csv(const std::string& path, const GreedyTrace& trace);

// Sampler statistics as a JSON object with the keys
//   samples, proposals, evaluations, eval_per_sample, bound_violations,
//   wall_seconds.
void save_stats_json(const std::string& path, const SamplerStats& stats);

// Fiber output: CSV with columns fiber_id, j, z1..zd.
void save_fibers_csv(const std::string& path, const std::vector<FiberPolyline>& fibers);

// Plot table behind a density comparison: theta, value_a, value_b.
void save_compare_csv(const std::string& path, const CompareReport& report);

std::string format_double(double v);  // %.17g

}  // namespace sphd

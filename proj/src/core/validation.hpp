#pragma once

#include <cstdint>
#include <vector>

#include "core/estimators.hpp"

namespace sphd {

struct ProjectionReport {
  std::int64_t input_count = 0;
  std::int64_t projected_count = 0;
  std::int64_t dropped_count = 0;  // points too close to the poles
  bool symmetrized = false;
};

// Maps (x1, x2, x3) on S^2 to (x1, x2)/|(x1, x2)| on S^1. Points whose
// planar norm falls below drop_threshold carry no azimuth and are dropped
// (counted, never fatal).
std::pair<PointSet, ProjectionReport> project_to_circle(const PointSet& data3d,
                                                        double drop_threshold = 1e-8);

// Antipodal doubling: originals first, then their negations.
PointSet symmetrize(const PointSet& data);

struct CurveExtremum {
  double theta;
  double value;
};

struct CompareReport {
  double rel_l2_discrepancy;  // ||A - B|| / ||A||, closed form
  CurveExtremum max_a, min_a, max_b, min_b;
  // Plot table over theta in [0, 2pi) at the grid nodes.
  std::vector<double> theta;
  std::vector<double> value_a;
  std::vector<double> value_b;
};

// Compares two circle densities: exact relative L2 discrepancy plus both
// curves tabulated on an equiangular grid for plotting.
CompareReport compare_densities(const SparseDensity& model_a, const SparseDensity& model_b,
                                std::int64_t grid_resolution);

}  // namespace sphd

#include "core/validation.hpp"

#include <cmath>
#include <stdexcept>

namespace sphd {

std::pair<PointSet, ProjectionReport> project_to_circle(const PointSet& data3d,
                                                        double drop_threshold) {
  if (data3d.dim() != 3) throw std::invalid_argument("project_to_circle: input must lie on S^2");
  if (!(drop_threshold > 0.0) || !(drop_threshold < 1.0)) {
    throw std::invalid_argument("project_to_circle: drop_threshold must lie in (0, 1)");
  }

  ProjectionReport report;
  report.input_count = data3d.size();
  PointSet out(2);
  out.reserve(report.input_count);
  for (std::int64_t i = 0; i < report.input_count; ++i) {
    const auto p = data3d.coords(i);
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1]);
    if (r < drop_threshold) {
      ++report.dropped_count;
      continue;
    }
    out.push_back(UnitVector::normalized(std::array<double, 2>{p[0], p[1]}));
  }
  report.projected_count = out.size();
  return {std::move(out), report};
}

PointSet symmetrize(const PointSet& data) {
  PointSet out(data.dim());
  out.reserve(2 * data.size());
  for (std::int64_t i = 0; i < data.size(); ++i) out.push_back(data[i]);
  for (std::int64_t i = 0; i < data.size(); ++i) out.push_back(data[i].negated());
  return out;
}

CompareReport compare_densities(const SparseDensity& model_a, const SparseDensity& model_b,
                                std::int64_t grid_resolution) {
  if (model_a.dim() != 2 || model_b.dim() != 2) {
    throw std::invalid_argument("compare_densities: both models must live on S^1");
  }
  if (grid_resolution < 1) {
    throw std::invalid_argument("compare_densities: grid_resolution must be >= 1");
  }

  const double aa = sparse_l2_inner(model_a, model_a);
  if (!(aa > 0.0)) throw std::invalid_argument("compare_densities: model A has zero norm");
  const double bb = sparse_l2_inner(model_b, model_b);
  const double ab = sparse_l2_inner(model_a, model_b);

  CompareReport report;
  report.rel_l2_discrepancy = std::sqrt(std::max(0.0, aa - 2.0 * ab + bb)) / std::sqrt(aa);

  const SphereGrid grid = equiangular_grid(2, grid_resolution);
  const std::int64_t n = grid.nodes.size();
  report.theta.resize(static_cast<std::size_t>(n));
  report.value_a.resize(static_cast<std::size_t>(n));
  report.value_b.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = grid.nodes.coords(i);
    double theta = std::atan2(p[1], p[0]);
    if (theta < 0.0) theta += 2.0 * kPi;
    report.theta[static_cast<std::size_t>(i)] = theta;
    report.value_a[static_cast<std::size_t>(i)] = model_a.eval_raw(p.data());
    report.value_b[static_cast<std::size_t>(i)] = model_b.eval_raw(p.data());
  }

  auto extrema = [&](const std::vector<double>& v, CurveExtremum& mx, CurveExtremum& mn) {
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] > v[imax]) imax = i;
      if (v[i] < v[imin]) imin = i;
    }
    mx = {report.theta[imax], v[imax]};
    mn = {report.theta[imin], v[imin]};
  };
  extrema(report.value_a, report.max_a, report.min_a);
  extrema(report.value_b, report.max_b, report.min_b);
  return report;
}

}  // namespace sphd

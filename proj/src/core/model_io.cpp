#include "core/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sphd {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

[[noreturn]] void bad_csv(const std::string& path, std::int64_t line, const std::string& what) {
  throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PointSet load_points_csv(const std::string& path, int expect_dim, bool header,
                         PointSet::Normalize mode) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  std::vector<double> coords;
  int dim = expect_dim;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (header && lineno == 1) continue;
    if (line.empty()) continue;
    int cols = 0;
    const char* s = line.c_str();
    char* end = nullptr;
    for (;;) {
      const double v = std::strtod(s, &end);
      if (end == s) bad_csv(path, lineno, "expected a number");
      coords.push_back(v);
      ++cols;
      s = end;
      while (*s == ' ' || *s == '\t') ++s;
      if (*s == ',') {
        ++s;
        continue;
      }
      if (*s == '\0' || *s == '\r') break;
      bad_csv(path, lineno, "unexpected character");
    }
    if (dim == 0) dim = cols;
    if (cols != dim) bad_csv(path, lineno, "expected " + std::to_string(dim) + " columns");
  }
  if (dim == 0) dim = expect_dim > 0 ? expect_dim : 3;  // empty file
  return PointSet::from_raw(dim, std::move(coords), mode);
}

void save_points_csv(const std::string& path, const PointSet& points, bool header) {
  auto out = open_out(path);
  if (header) {
    for (int k = 0; k < points.dim(); ++k) out << (k ? ",x" : "x") << k + 1;
    out << "\n";
  }
  const std::int64_t n = points.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const auto p = points.coords(i);
    for (int k = 0; k < points.dim(); ++k) {
      if (k) out << ",";
      out << format_double(p[static_cast<std::size_t>(k)]);
    }
    out << "\n";
  }
}

SparseDensity load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  try {
    nlohmann::json j;
    in >> j;

    const int dim = j.at("dimension").get<int>();
    const double h = j.at("h").get<double>();
    const bool normalized = j.at("normalized_dictionary").get<bool>();
    const double uniform = j.value("uniform_coefficient", 0.0);

    PointSet centers(dim);
    std::vector<double> coeffs;
    for (const auto& term : j.at("terms")) {
      const auto& c = term.at("center");
      if (static_cast<int>(c.size()) != dim) {
        throw IoError(path + ": term center has wrong dimension");
      }
      std::vector<double> v = c.get<std::vector<double>>();
      centers.push_back(UnitVector::checked(v));
      coeffs.push_back(term.at("coefficient").get<double>());
    }
    return SparseDensity(KernelParams{dim, h}, normalized, std::move(centers), std::move(coeffs),
                         uniform);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_model_json(const std::string& path, const SparseDensity& model) {
  nlohmann::json j;
  j["dimension"] = model.dim();
  j["h"] = model.params().h;
  j["normalized_dictionary"] = model.normalized_dictionary();
  j["uniform_coefficient"] = model.uniform_coefficient();
  j["terms"] = nlohmann::json::array();
  const std::int64_t k = model.terms();
  for (std::int64_t i = 0; i < k; ++i) {
    const auto c = model.centers().coords(i);
    nlohmann::json term;
    term["center"] = std::vector<double>(c.begin(), c.end());
    term["coefficient"] = model.coefficients()[static_cast<std::size_t>(i)];
    j["terms"].push_back(std::move(term));
  }
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void save_trace_csv(const std::string& path, const GreedyTrace& trace) {
  auto out = open_out(path);
  out << "k,center_index,alpha,abs_alpha,rel_l2_error,cumulative_seconds\n";
  for (const auto& r : trace.rows) {
    out << r.k << "," << r.center_index << "," << format_double(r.alpha) << ","
        << format_double(r.abs_alpha) << ",";
    if (r.rel_l2_error) out << format_double(*r.rel_l2_error);
    out << "," << format_double(r.cumulative_seconds) << "\n";
  }
}

void save_stats_json(const std::string& path, const SamplerStats& stats) {
  nlohmann::json j;
  j["samples"] = stats.samples;
  j["proposals"] = stats.proposals;
  j["evaluations"] = stats.evaluations;
  j["eval_per_sample"] = stats.eval_per_sample();
  j["bound_violations"] = stats.bound_violations;
  j["wall_seconds"] = stats.wall_seconds;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void save_fibers_csv(const std::string& path, const std::vector<FiberPolyline>& fibers) {
  auto out = open_out(path);
  if (!fibers.empty()) {
    out << "fiber_id,j";
    for (int k = 0; k < fibers.front().dim; ++k) out << ",z" << k + 1;
    out << "\n";
  }
  for (std::size_t f = 0; f < fibers.size(); ++f) {
    const auto& fiber = fibers[f];
    const std::int64_t points = fiber.segments() + 1;
    for (std::int64_t j = 0; j < points; ++j) {
      out << f << "," << j;
      const auto p = fiber.point(j);
      for (int k = 0; k < fiber.dim; ++k) out << "," << format_double(p[static_cast<std::size_t>(k)]);
      out << "\n";
    }
  }
}

void save_compare_csv(const std::string& path, const CompareReport& report) {
  auto out = open_out(path);
  out << "theta,value_a,value_b\n";
  for (std::size_t i = 0; i < report.theta.size(); ++i) {
    out << format_double(report.theta[i]) << "," << format_double(report.value_a[i]) << ","
        << format_double(report.value_b[i]) << "\n";
  }
}

}  // namespace sphd

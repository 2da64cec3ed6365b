#include "freshcov/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "freshcov/errors.hpp"

namespace freshcov {

double estimation_error(double d, double age_s, const CorrelationParams& corr) {
  if (d < 0.0 || age_s < 0.0) throw ContractViolation("estimation_error: negative argument");
  return -std::expm1(-2.0 * corr.beta1 * d - 2.0 * corr.beta2 * age_s);
}

double sensing_radius(double age_s, const CorrelationParams& corr) {
  if (age_s < 0.0) throw ContractViolation("sensing_radius: negative age");
  const double r = (-2.0 * corr.beta2 * age_s - std::log1p(-corr.err_threshold)) / (2.0 * corr.beta1);
  return std::max(0.0, r);
}

double zero_radius_age(const CorrelationParams& corr) {
  return -std::log1p(-corr.err_threshold) / (2.0 * corr.beta2);
}

std::int64_t max_covering_age(double d, const CorrelationParams& corr, double slot_duration_s) {
  // Solve d <= r(v) for v, then settle float ties with the exact predicate.
  const double v_cont =
      (-std::log1p(-corr.err_threshold) - 2.0 * corr.beta1 * d) / (2.0 * corr.beta2 * slot_duration_s);
  if (v_cont < 0.0) return -1;
  // Unclamped radius, otherwise d = 0 would be covered forever.
  auto covers = [&](std::int64_t v) {
    const double age = static_cast<double>(v) * slot_duration_s;
    const double r = (-2.0 * corr.beta2 * age - std::log1p(-corr.err_threshold)) / (2.0 * corr.beta1);
    return r > 0.0 && d <= r;
  };
  std::int64_t v = static_cast<std::int64_t>(std::floor(v_cont));
  while (v >= 1 && !covers(v)) --v;
  while (covers(v + 1)) ++v;
  return v >= 1 ? v : -1;
}

CoverageGrid CoverageGrid::rectangle(double width, double height, double resolution) {
  if (!(resolution > 0.0) || width <= 0.0 || height <= 0.0) {
    throw ParameterError("grid dimensions and resolution must be positive");
  }
  const auto nx = static_cast<std::size_t>(std::llround(width / resolution));
  const auto ny = static_cast<std::size_t>(std::llround(height / resolution));
  std::vector<Point2> pts;
  pts.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      pts.push_back({(static_cast<double>(i) + 0.5) * resolution, (static_cast<double>(j) + 0.5) * resolution});
    }
  }
  return CoverageGrid(std::move(pts), resolution);
}

CoverageGrid CoverageGrid::disc(Point2 center, double radius, double resolution) {
  if (!(resolution > 0.0) || radius <= 0.0) {
    throw ParameterError("disc radius and resolution must be positive");
  }
  const auto n = static_cast<long>(std::ceil(radius / resolution));
  std::vector<Point2> pts;
  for (long j = -n; j < n; ++j) {
    for (long i = -n; i < n; ++i) {
      const Point2 p{center.x + (static_cast<double>(i) + 0.5) * resolution,
                     center.y + (static_cast<double>(j) + 0.5) * resolution};
      if (distance(p, center) <= radius) pts.push_back(p);
    }
  }
  return CoverageGrid(std::move(pts), resolution);
}

double coverage_ratio(const CoverageGrid& grid, std::span<const SensorSnapshot> sensors,
                      const CorrelationParams& corr, double slot_duration_s) {
  if (grid.empty()) throw ContractViolation("coverage_ratio: empty grid");
  std::vector<Point2> centers;
  std::vector<double> radii;
  for (const auto& s : sensors) {
    if (!s.sink_age) continue;
    const double r = sensing_radius(static_cast<double>(*s.sink_age) * slot_duration_s, corr);
    if (r <= 0.0) continue;
    centers.push_back(s.position);
    radii.push_back(r);
  }
  std::size_t covered = 0;
  for (const auto& p : grid.points()) {
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (distance(p, centers[k]) <= radii[k]) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(grid.size());
}

double disc_union_ratio(const CoverageGrid& grid, std::span<const Point2> centers, double radius) {
  if (grid.empty()) throw ContractViolation("disc_union_ratio: empty grid");
  std::size_t covered = 0;
  for (const auto& p : grid.points()) {
    for (const auto& c : centers) {
      if (distance(p, c) <= radius) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(grid.size());
}

}  // namespace freshcov

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "freshcov/params.hpp"

namespace freshcov {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point2 a, Point2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

/// Age in whole slots; nullopt means no data has been received yet, which
/// behaves as an infinite age.
using SlotAge = std::optional<std::int64_t>;

/// Estimation error 1 - exp(-2 beta1 d - 2 beta2 v) at distance `d` (m) from
/// a sensor whose data is `age_s` seconds old.
double estimation_error(double d, double age_s, const CorrelationParams& corr);

/// Radius within which the estimation error stays at or below epsilon_0,
/// clamped to 0 once the data is too stale to cover anything.
double sensing_radius(double age_s, const CorrelationParams& corr);

/// Age (seconds) at which the sensing radius shrinks to zero.
double zero_radius_age(const CorrelationParams& corr);

/// Largest age in slots at which a point `d` metres away is still covered,
/// or -1 if it is not covered even by one-slot-old data. Consistent with
/// `d <= sensing_radius(v * slot)` for every integer v >= 1.
std::int64_t max_covering_age(double d, const CorrelationParams& corr, double slot_duration_s);

/// Discrete evaluation points of the network area.
class CoverageGrid {
 public:
  CoverageGrid() = default;
  explicit CoverageGrid(std::vector<Point2> points, double resolution = 1.0)
      : points_(std::move(points)), resolution_(resolution) {}

  /// Cell centres of a `width` x `height` rectangle anchored at the origin.
  static CoverageGrid rectangle(double width, double height, double resolution = 1.0);
  /// Cell centres of a square lattice that fall inside a disc.
  static CoverageGrid disc(Point2 center, double radius, double resolution = 1.0);

  std::span<const Point2> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  double resolution() const noexcept { return resolution_; }

 private:
  std::vector<Point2> points_;
  double resolution_ = 1.0;
};

struct SensorSnapshot {
  Point2 position;
  SlotAge sink_age;  ///< age of the freshest data the sink holds from this sensor
};

/// Fraction of grid points whose estimate from at least one sensor has error
/// at most epsilon_0. Ages are in slots and converted with the slot duration.
double coverage_ratio(const CoverageGrid& grid, std::span<const SensorSnapshot> sensors,
                      const CorrelationParams& corr, double slot_duration_s);

/// Fraction of grid points within a fixed radius of at least one of `centers`.
double disc_union_ratio(const CoverageGrid& grid, std::span<const Point2> centers, double radius);

}  // namespace freshcov

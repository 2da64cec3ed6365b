#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "freshcov/coverage.hpp"

namespace freshcov {

/// Incremental coverage count over a fixed grid.
///
/// Every (sensor, point) pair within reach carries an offset. Refreshing a
/// sensor with base b makes each of its points covered through slot
/// b + offset - 1. A point's expiry is the max over all refreshes, so the
/// covered count is kept with per-slot expiry buckets instead of re-testing
/// every point each slot. Points that only one sensor can reach are kept as
/// per-offset counts, so refreshing them costs one step per distinct offset.
class CoverageTracker {
 public:
  CoverageTracker() = default;

  /// Offset = largest sink-side age (slots) at which the sensor still covers
  /// the point; refresh with the generation slot of the data.
  static CoverageTracker temporal(const CoverageGrid& grid, std::span<const Point2> sensors,
                                  const CorrelationParams& corr, double slot_duration_s);

  /// Offset 0 for every point within `radius`; refresh with the first slot
  /// at which the disc should disappear. `max_lead` bounds how far ahead of
  /// the current slot that can be.
  static CoverageTracker fixed_radius(const CoverageGrid& grid, std::span<const Point2> sensors, double radius,
                                      int max_lead);

  void reset();
  /// Moves to slot `t`, expiring points whose coverage ended before it.
  void begin_slot(std::int64_t t);
  void refresh(std::size_t sensor, std::int64_t base);

  std::size_t covered() const noexcept { return alive_; }
  double ratio() const noexcept {
    return num_points_ ? static_cast<double>(alive_) / static_cast<double>(num_points_) : 0.0;
  }
  std::size_t num_points() const noexcept { return num_points_; }

 private:
  struct Entry {
    std::uint32_t point;
    std::int32_t offset;
  };
  using Reach = std::vector<std::vector<Entry>>;
  struct Layout {
    Reach shared;                                  // points reachable by several sensors
    std::vector<std::vector<std::uint32_t>> hist;  // exclusive points per offset
  };
  void init(std::size_t num_points, Reach reach, int max_span);
  void shift(std::int64_t expiry, std::int64_t delta);

  std::size_t num_points_ = 0;
  std::shared_ptr<const Layout> layout_;  // immutable, shared between copies
  std::vector<std::int64_t> expiry_;
  std::vector<std::int64_t> last_base_;
  std::vector<std::int64_t> buckets_;  // ring indexed by expiry slot
  std::int64_t mask_ = 0;
  std::int64_t now_ = -1;
  std::size_t alive_ = 0;
};

}  // namespace freshcov

#include "freshcov/coverage_tracker.hpp"

#include <algorithm>
#include <limits>

#include "freshcov/errors.hpp"

namespace freshcov {

namespace {
constexpr std::int64_t kNever = -1;
}

void CoverageTracker::init(std::size_t num_points, Reach reach, int max_span) {
  num_points_ = num_points;
  std::vector<std::uint8_t> reached(num_points, 0);
  for (const auto& r : reach) {
    for (const auto& e : r) reached[e.point] = static_cast<std::uint8_t>(std::min(2, reached[e.point] + 1));
  }
  Layout lay;
  lay.shared.resize(reach.size());
  lay.hist.resize(reach.size());
  for (std::size_t n = 0; n < reach.size(); ++n) {
    for (const auto& e : reach[n]) {
      if (reached[e.point] > 1) {
        lay.shared[n].push_back(e);
        continue;
      }
      auto& h = lay.hist[n];
      if (h.size() <= static_cast<std::size_t>(e.offset)) h.resize(static_cast<std::size_t>(e.offset) + 1, 0);
      ++h[static_cast<std::size_t>(e.offset)];
    }
  }
  layout_ = std::make_shared<const Layout>(std::move(lay));
  std::size_t ring = 1;
  while (ring < static_cast<std::size_t>(max_span) + 2) ring <<= 1;
  buckets_.assign(ring, 0);
  mask_ = static_cast<std::int64_t>(ring) - 1;
  expiry_.assign(num_points, kNever);
  last_base_.assign(reach.size(), std::numeric_limits<std::int64_t>::min() / 2);
  now_ = -1;
  alive_ = 0;
}

CoverageTracker CoverageTracker::temporal(const CoverageGrid& grid, std::span<const Point2> sensors,
                                          const CorrelationParams& corr, double slot_duration_s) {
  std::vector<std::vector<Entry>> reach(sensors.size());
  std::int64_t max_offset = 1;
  const double r_max = sensing_radius(slot_duration_s, corr);
  const auto pts = grid.points();
  for (std::size_t n = 0; n < sensors.size(); ++n) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = distance(pts[i], sensors[n]);
      if (d > r_max) continue;
      const auto v = max_covering_age(d, corr, slot_duration_s);
      if (v < 1) continue;
      reach[n].push_back({static_cast<std::uint32_t>(i), static_cast<std::int32_t>(v)});
      max_offset = std::max(max_offset, v);
    }
  }
  CoverageTracker t;
  t.init(pts.size(), std::move(reach), static_cast<int>(max_offset));
  return t;
}

CoverageTracker CoverageTracker::fixed_radius(const CoverageGrid& grid, std::span<const Point2> sensors,
                                              double radius, int max_lead) {
  std::vector<std::vector<Entry>> reach(sensors.size());
  const auto pts = grid.points();
  for (std::size_t n = 0; n < sensors.size(); ++n) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (distance(pts[i], sensors[n]) <= radius) reach[n].push_back({static_cast<std::uint32_t>(i), 0});
    }
  }
  CoverageTracker t;
  t.init(pts.size(), std::move(reach), max_lead);
  return t;
}

void CoverageTracker::reset() {
  std::fill(expiry_.begin(), expiry_.end(), kNever);
  std::fill(last_base_.begin(), last_base_.end(), std::numeric_limits<std::int64_t>::min() / 2);
  std::fill(buckets_.begin(), buckets_.end(), 0);
  now_ = -1;
  alive_ = 0;
}

void CoverageTracker::begin_slot(std::int64_t t) {
  if (t < now_) throw ContractViolation("coverage tracker: time went backwards");
  while (now_ < t) {
    ++now_;
    auto& b = buckets_[static_cast<std::size_t>(now_ & mask_)];
    alive_ -= static_cast<std::size_t>(b);
    b = 0;
  }
}

// Adds `delta` points expiring at `expiry`, ignoring expiries already past.
void CoverageTracker::shift(std::int64_t expiry, std::int64_t delta) {
  if (expiry <= now_) return;
  if (expiry - now_ > mask_) throw ContractViolation("coverage tracker: expiry beyond horizon");
  buckets_[static_cast<std::size_t>(expiry & mask_)] += delta;
  alive_ = static_cast<std::size_t>(static_cast<std::int64_t>(alive_) + delta);
}

void CoverageTracker::refresh(std::size_t sensor, std::int64_t base) {
  if (!layout_ || sensor >= layout_->shared.size()) throw ContractViolation("coverage tracker: unknown sensor");
  // Exclusive points only ever see this sensor, so their expiry is simply
  // the latest base plus the offset.
  auto& last = last_base_[sensor];
  if (base > last) {
    const auto& h = layout_->hist[sensor];
    for (std::size_t o = 0; o < h.size(); ++o) {
      if (h[o] == 0) continue;
      const auto off = static_cast<std::int64_t>(o);
      shift(last + off, -static_cast<std::int64_t>(h[o]));
      shift(base + off, static_cast<std::int64_t>(h[o]));
    }
    last = base;
  }
  const std::int64_t now = now_;
  for (const auto& e : layout_->shared[sensor]) {
    const std::int64_t exp = base + e.offset;
    auto& cur = expiry_[e.point];
    if (exp <= cur || exp <= now) continue;
    if (exp - now > mask_) throw ContractViolation("coverage tracker: expiry beyond horizon");
    if (cur > now) --buckets_[static_cast<std::size_t>(cur & mask_)];
    else ++alive_;
    cur = exp;
    ++buckets_[static_cast<std::size_t>(exp & mask_)];
  }
}

}  // namespace freshcov

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace freshcov {

struct EcJob {
  std::size_t sensor = 0;
  std::int64_t gen_slot = 0;    ///< slot in which the data was sensed
  std::int64_t arrival_slot = 0;
  int remaining = 0;            ///< processing slots left
};

/// FIFO edge server. Holds at most one job per sensor: a fresh arrival from a
/// sensor that already has a job overwrites it in place, keeping its position
/// and restarting its processing.
class EcServerQueue {
 public:
  EcServerQueue() = default;
  EcServerQueue(std::size_t num_sensors, int service_slots);

  void push(std::size_t sensor, std::int64_t gen_slot, std::int64_t arrival_slot);

  /// Serves one slot. Jobs that arrived in `slot` itself wait until the next
  /// slot. Returns the job finished in this slot, if any.
  std::optional<EcJob> serve(std::int64_t slot);

  /// Remaining slots of work ahead of and including the sensor's own job;
  /// 0 if the sensor has nothing queued.
  int waiting_time(std::size_t sensor) const;

  bool contains(std::size_t sensor) const;
  std::size_t size() const noexcept { return jobs_.size(); }
  bool empty() const noexcept { return jobs_.empty(); }
  const std::vector<EcJob>& jobs() const noexcept { return jobs_; }
  /// Number of in-place replacements so far.
  std::uint64_t replacements() const noexcept { return replacements_; }

 private:
  std::vector<EcJob> jobs_;
  std::vector<char> queued_;
  int service_slots_ = 1;
  std::uint64_t replacements_ = 0;
};

}  // namespace freshcov

#include "freshcov/ec_queue.hpp"

#include <algorithm>

#include "freshcov/errors.hpp"

namespace freshcov {

EcServerQueue::EcServerQueue(std::size_t num_sensors, int service_slots)
    : queued_(num_sensors, 0), service_slots_(service_slots) {
  if (service_slots < 1) throw ContractViolation("EC service time must be >= 1 slot");
}

void EcServerQueue::push(std::size_t sensor, std::int64_t gen_slot, std::int64_t arrival_slot) {
  if (sensor >= queued_.size()) throw ContractViolation("EC queue: unknown sensor");
  if (queued_[sensor]) {
    auto it = std::find_if(jobs_.begin(), jobs_.end(), [&](const EcJob& j) { return j.sensor == sensor; });
    if (gen_slot <= it->gen_slot) throw ContractViolation("EC queue: replacement is not fresher");
    *it = {sensor, gen_slot, arrival_slot, service_slots_};
    ++replacements_;
    return;
  }
  jobs_.push_back({sensor, gen_slot, arrival_slot, service_slots_});
  queued_[sensor] = 1;
}

std::optional<EcJob> EcServerQueue::serve(std::int64_t slot) {
  if (jobs_.empty() || jobs_.front().arrival_slot >= slot) return std::nullopt;
  auto& head = jobs_.front();
  if (--head.remaining > 0) return std::nullopt;
  EcJob done = head;
  jobs_.erase(jobs_.begin());
  queued_[done.sensor] = 0;
  return done;
}

int EcServerQueue::waiting_time(std::size_t sensor) const {
  if (sensor >= queued_.size() || !queued_[sensor]) return 0;
  int total = 0;
  for (const auto& j : jobs_) {
    total += j.remaining;
    if (j.sensor == sensor) break;
  }
  return total;
}

bool EcServerQueue::contains(std::size_t sensor) const { return sensor < queued_.size() && queued_[sensor]; }

}  // namespace freshcov

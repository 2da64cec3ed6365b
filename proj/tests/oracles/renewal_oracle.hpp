#pragma once

#include <array>
#include <cstdint>

// Round-level Monte Carlo of one sensor's update process, written from the
// model description only: every round starts with a sensing decision, the
// item is computed locally before or remotely after up to `max_retx`
// attempts, and the sink's age is counted at the end of every slot.
namespace oracle {

struct RenewalParams {
  double p_s = 1.0;
  double p_e = 1.0;
  std::array<double, 2> outage{};    // [edge, local]
  std::array<int, 2> compute{1, 2};  // [edge, local]
  int max_retx = 1;
  int round_len = 8;
  std::int64_t v_slots = 0;  // target: slots with age > v count as violations
};

struct RenewalStats {
  std::uint64_t rounds = 0;
  std::uint64_t updates = 0;
  double mean_interval = 0.0;   // slots between consecutive deliveries
  double violation_prob = 0.0;  // fraction of slots after the first delivery
  // Mean violation slots per interval, by (opening mode, closing mode).
  std::array<std::array<double, 2>, 2> pair_violation{};
  std::array<std::array<std::uint64_t, 2>, 2> pair_count{};
};

RenewalStats run_renewal(const RenewalParams& p, std::uint64_t rounds, std::uint64_t seed);

}  // namespace oracle

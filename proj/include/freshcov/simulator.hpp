#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "freshcov/channel.hpp"
#include "freshcov/coverage_tracker.hpp"
#include "freshcov/ec_queue.hpp"
#include "freshcov/policies.hpp"
#include "freshcov/scenario.hpp"

namespace freshcov {

/// Replaces the channel draw: return true for an outage. Arguments are the
/// sensor, the mode, the slot and the 1-based attempt number.
using OutageScript = std::function<bool(std::size_t, ComputeMode, std::int64_t, int)>;

struct RunOptions {
  /// Number of rounds to simulate; defaults to the scenario's N_r. A hard
  /// pre-charged budget is renewed every N_r rounds.
  std::optional<std::int64_t> rounds;
  bool record_sensor_series = false;
  /// Also keep the fixed-radius coverage series. Always on when the scenario
  /// scores with that model.
  bool track_cic = false;
  OutageScript outage_script;
};

struct UpdateEvent {
  std::int64_t slot = 0;  ///< slot at whose end the sink holds the new data
  std::size_t sensor = 0;
  ComputeMode mode = ComputeMode::Edge;
  std::int64_t gen_slot = 0;
  int attempts = 0;
};

struct SensorCounters {
  std::uint64_t decisions_edge = 0;
  std::uint64_t decisions_local = 0;
  std::uint64_t sensings = 0;
  std::uint64_t local_computes = 0;
  std::uint64_t tx_attempts = 0;
  std::uint64_t tx_failures = 0;
  std::uint64_t updates = 0;
  std::uint64_t drops = 0;         ///< data items lost after delta failures
  std::uint64_t budget_drops = 0;  ///< data items abandoned for lack of budget
  std::uint64_t energy_waits = 0;  ///< slots spent waiting for energy
  std::uint64_t illegal_actions = 0;
  std::uint64_t max_attempts_per_item = 0;
  double consumed = 0.0;
  double harvested = 0.0;  ///< energy actually stored (after the cap)
};

struct EpisodeTrace {
  std::uint64_t seed = 0;
  int round_len = 0;
  std::size_t num_sensors = 0;
  double eta = 0.0;
  double penalty = 1.0;
  CoverageModel scoring = CoverageModel::Temporal;
  std::vector<double> coverage;      ///< per slot
  std::vector<double> cic_coverage;  ///< per slot, when tracked
  std::vector<Action> requested;     ///< round-major, num_sensors per round
  std::vector<Action> applied;
  std::vector<double> rewards;       ///< per round
  std::vector<UpdateEvent> updates;
  std::vector<SensorCounters> sensors;
  std::uint64_t ec_replacements = 0;
  /// Optional slot-major series; -1 stands for "no data yet".
  std::vector<std::int64_t> sink_age;
  std::vector<std::int64_t> sensor_age;
  std::vector<double> battery;

  std::int64_t num_slots() const noexcept { return static_cast<std::int64_t>(coverage.size()); }
  std::int64_t num_rounds() const noexcept { return static_cast<std::int64_t>(rewards.size()); }
  const std::vector<double>& scored_coverage() const noexcept {
    return scoring == CoverageModel::Cic ? cic_coverage : coverage;
  }
  /// Fraction of slots whose scored coverage ratio is at least `eta`.
  double eta_coverage(double eta) const;
  double eta_coverage() const { return eta_coverage(eta); }
  std::uint64_t total_illegal() const noexcept;
};

/// Per-round reward: +1 for every slot at or above eta, -penalty otherwise.
double round_reward(std::span<const double> coverage, double eta, double penalty);

struct RoundOutcome {
  double reward = 0.0;
  int illegal = 0;
  bool done = false;
};

/// Slot-level simulation of sensors, the sink and its edge server.
///
/// Within a slot: decisions (at round starts), then one step of the edge
/// server, then one pipeline step per sensor (sense, compute, or one
/// transmission attempt), then battery update, then the coverage sample at
/// the end of the slot. Ages are measured at the end of the slot, so a
/// reading taken in slot t of data sensed in slot g is t + 1 - g.
class Simulator {
 public:
  explicit Simulator(ScenarioConfig cfg);

  void reset(std::uint64_t seed, RunOptions opts = {});
  bool done() const noexcept;
  std::int64_t round() const noexcept { return round_; }
  std::int64_t total_rounds() const noexcept { return total_rounds_; }
  std::int64_t slot() const noexcept { return slot_; }

  /// State visible at the start of the next round.
  std::vector<SensorView> observe() const;

  /// Coerces illegal requests, then simulates one round.
  RoundOutcome step_round(std::span<const Action> requested);

  const EpisodeTrace& trace() const noexcept { return trace_; }
  EpisodeTrace take_trace() { return std::move(trace_); }
  const ScenarioConfig& config() const noexcept { return cfg_; }
  const EcServerQueue& queue() const noexcept { return queue_; }
  double battery(std::size_t n) const;

 private:
  enum class Phase { Idle, Sense, Compute, Transmit };
  struct Sensor {
    Phase phase = Phase::Idle;
    ComputeMode mode = ComputeMode::Edge;
    std::int64_t item_gen = -1;
    int compute_left = 0;
    bool compute_paid = false;
    int attempts = 0;
    double battery = 0.0;      // EH level
    double budget_used = 0.0;  // pre-charged, current budget block
    std::int64_t sink_gen = -1;
    std::int64_t sensor_gen = -1;
    std::mt19937_64 channel_rng;
    std::mt19937_64 harvest_rng;
  };

  bool can_pay(const Sensor& s, double cost) const;
  void pay(std::size_t n, double cost);
  void step_sensor(std::size_t n, std::int64_t t);
  bool attempt_fails(std::size_t n, ComputeMode mode, std::int64_t t, int attempt);
  void deliver(std::size_t n, ComputeMode mode, std::int64_t gen, std::int64_t t, int attempts);
  void finish_item(std::size_t n);
  bool sensor_can_act(const Sensor& s) const;
  double budget_left(const Sensor& s) const;

  ScenarioConfig cfg_;
  CoverageGrid grid_;
  CoverageTracker tracker_;
  CoverageTracker cic_tracker_;
  std::vector<GeometricOutageSampler> samplers_;  // 2 per sensor: edge, local
  std::vector<double> outage_;                    // 2 per sensor
  EcServerQueue queue_;
  std::vector<Sensor> sensors_;
  RunOptions opts_;
  EpisodeTrace trace_;
  std::int64_t round_ = 0;
  std::int64_t total_rounds_ = 0;
  std::int64_t slot_ = 0;
  std::vector<int> item_attempts_;
  std::vector<double> slot_cost_;
  bool track_cic_ = false;
};

EpisodeTrace run_episode(const ScenarioConfig& cfg, const PolicySpec& policy, std::uint64_t seed,
                         const RunOptions& opts = {});

struct CoverageEstimate {
  double p_c = 0.0;
  double half_width = 0.0;              ///< 1.96 sqrt(p(1-p)/n) over all slots
  double replication_half_width = 0.0;  ///< 1.96 s / sqrt(R) over replication means
  std::size_t samples = 0;
  std::vector<double> per_replication;
  double mean_coverage = 0.0;
  double sensing_ratio = 0.0;  ///< applied EC/LC decisions per sensor-round
  double ec_ratio = 0.0;       ///< EC share of applied sensing decisions
};

/// Seed of replication `r` under `base_seed`.
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t r) noexcept;

/// Monte Carlo estimate over `replications` independent episodes.
CoverageEstimate estimate_eta_coverage(const ScenarioConfig& cfg, const PolicySpec& policy, double eta,
                                       int replications, std::uint64_t base_seed, const RunOptions& opts = {},
                                       int threads = 1);

/// Same, reusing an already constructed simulator as the template for every
/// worker (grid and coverage reach are built once). A `policy.cic` request
/// needs a prototype that scores with the fixed-radius model.
CoverageEstimate estimate_eta_coverage(const Simulator& prototype, const PolicySpec& policy, double eta,
                                       int replications, std::uint64_t base_seed, const RunOptions& opts = {},
                                       int threads = 1);

}  // namespace freshcov

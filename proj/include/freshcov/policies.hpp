#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "freshcov/coverage.hpp"
#include "freshcov/params.hpp"

namespace freshcov {

enum class Action : std::uint8_t { Edge = 0, Local = 1, Idle = 2 };

const char* to_string(Action a) noexcept;
std::optional<Action> action_from_int(std::int64_t v) noexcept;

/// What a decision source may look at when a round starts.
struct SensorView {
  std::size_t id = 0;
  Point2 position;
  double battery = 0.0;  ///< mJ; remaining budget in the pre-charged model
  SlotAge sink_age;
  SlotAge sensor_age;
  int ec_wait = 0;       ///< slots of EC work ahead of and including own job
  bool busy = false;     ///< still working on an earlier data item
  bool can_act = false;  ///< idle and able to pay for sensing
};

struct RoundContext {
  std::int64_t round = 0;
  std::span<const SensorView> sensors;
};

enum class PolicyKind { ProbabilitySCD, AlwaysMode, External };

struct PolicySpec {
  PolicyKind kind = PolicyKind::ProbabilitySCD;
  double p_s = 1.0;
  double p_e = 1.0;                      ///< ProbabilitySCD only
  ComputeMode mode = ComputeMode::Edge;  ///< AlwaysMode only
  bool cic = false;                      ///< score with the fixed-radius coverage model

  static PolicySpec probability(double p_s, double p_e) { return {PolicyKind::ProbabilitySCD, p_s, p_e}; }
  static PolicySpec always(ComputeMode m, double p_s = 1.0) {
    return {PolicyKind::AlwaysMode, p_s, m == ComputeMode::Edge ? 1.0 : 0.0, m};
  }
  static PolicySpec external() { return {PolicyKind::External, 1.0, 1.0}; }
  static PolicySpec idle() { return probability(0.0, 0.0); }

  void validate() const;
  std::string describe() const;
};

using ActionSupplier = std::function<std::vector<Action>(const RoundContext&)>;

class Policy {
 public:
  virtual ~Policy() = default;
  /// Raw proposal, one action per sensor; legality is applied by decide().
  virtual std::vector<Action> propose(const RoundContext& ctx, std::mt19937_64& rng) = 0;
};

/// `supplier` is required for External and ignored otherwise.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, ActionSupplier supplier = {});

struct Decision {
  std::vector<Action> requested;
  std::vector<Action> applied;
  int illegal = 0;  ///< EC/LC requests turned into IDLE
};

/// Coerces EC/LC to IDLE for sensors that cannot act.
Decision coerce(std::vector<Action> requested, std::span<const SensorView> sensors);

Decision decide(Policy& policy, const RoundContext& ctx, std::mt19937_64& rng);

/// Sensor `n` has a successful update in the current round when
/// `updated_this_round[n]` is set; each such sensor covers a disc of `radius`.
double cic_coverage_ratio(const CoverageGrid& grid, std::span<const Point2> sensors,
                          std::span<const bool> updated_this_round, double radius);

/// Radius of the fixed-disc coverage model: the sensing radius at an age of
/// one round.
double cic_radius(const CorrelationParams& corr, int round_len, double slot_duration_s);

}  // namespace freshcov

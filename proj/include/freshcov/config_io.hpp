#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freshcov/policies.hpp"
#include "freshcov/scenario.hpp"

namespace freshcov {

enum class SweepAxis { None, Eta, Distance, NumSensors, ComputeEnergy, ReuseProb, MaxRetx, Budget };

const char* to_string(SweepAxis a) noexcept;

struct SweepSpec {
  SweepAxis axis = SweepAxis::None;
  std::vector<double> values;
};

/// Everything a run needs. The scenario is kept as a recipe (distance,
/// sensor count, placement seed) so sweep points can rebuild it.
struct ExperimentConfig {
  ScenarioKind kind = ScenarioKind::SinglePrecharged;
  ChannelParams channel = default_channel();
  CorrelationParams correlation = default_correlation();
  EnergyParams energy = default_single_energy();
  TimingParams timing = default_timing();
  BudgetEnforcement budget = BudgetEnforcement::Expected;
  ChannelFidelity fidelity = ChannelFidelity::Analytic;
  double eta = 0.9;
  double penalty = 1.0;
  double observation_range_m = 100.0;

  // single-precharged geometry
  double distance_m = 100.0;
  double area_radius_m = 50.0;
  // multi-eh geometry
  double width_m = 250.0;
  double height_m = 250.0;
  std::size_t num_sensors = 10;
  std::uint64_t placement_seed = 1;
  std::vector<Point2> sensors;  ///< explicit positions override the random placement
  std::optional<Point2> sink;   ///< default: centre of the rectangle
  double grid_resolution_m = 1.0;

  /// nullopt means "use the optimized probability policy".
  std::optional<PolicySpec> policy;
  bool cic = false;

  SweepSpec sweep;
  int replications = 10;
  std::optional<std::int64_t> rounds;
  std::uint64_t seed = 1;
  int threads = 0;  ///< 0 = all hardware threads
  double grid_step = 0.05;
  std::string output;

  ScenarioConfig scenario() const;
  SingleSensorScenario single() const;
  /// Copy with one sweep axis set to `value`.
  ExperimentConfig at(SweepAxis axis, double value) const;
  void validate() const;
};

/// Defaults for a scenario kind: shared channel/timing values plus the per-kind energies.
ExperimentConfig default_experiment(ScenarioKind kind);

/// Parses a config document. Errors carry the 1-based line of the offending
/// value when `text` is available.
ExperimentConfig parse_experiment(const std::string& text);
ExperimentConfig parse_experiment(const nlohmann::json& doc, const std::string& text = {});
inline ExperimentConfig parse_experiment(const char* text) { return parse_experiment(std::string(text)); }
ExperimentConfig load_experiment(const std::string& path);

/// FRESHCOV_OUTPUT replaces the output path, FRESHCOV_THREADS the thread count.
void apply_env_overrides(ExperimentConfig& cfg);

/// Fully resolved config in the input format (dBm powers), suitable for
/// replaying a run.
nlohmann::json to_json(const ExperimentConfig& cfg);
nlohmann::json to_json(const PolicySpec& p);

/// Line (1-based) of the value addressed by a JSON pointer such as
/// "/energy/tx" inside `text`; 0 if it cannot be located.
int locate_line(const std::string& text, const std::string& pointer);

}  // namespace freshcov
